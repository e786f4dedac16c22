"""
Split-octonion value type and the reference (schoolbook) products.

A split-octonion is eight coefficients over the basis e0 = 1, e1..e7.
The multiplication table below is the single source of truth for the
basis products; direct_mul() spells the same product out as eight
explicit bilinear forms (64 multiplications, 56 additions).
"""

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, Callable, Iterator, List, Sequence, Tuple

from scalars import FLOAT, RATIONAL, ScalarRing

DIMENSION = 8


class OctonionError(Exception):
    """Base error for split-octonion values."""


class OctonionParseError(OctonionError, ValueError):
    """Raised for malformed octonion text."""


# Row i, column j holds e_i * e_j.
_TABLE_ROWS = (
    "e0  e1  e2  e3  e4  e5  e6  e7",
    "e1 -e0  e3 -e2 -e5  e4 -e7  e6",
    "e2 -e3 -e0  e1 -e6  e7  e4 -e5",
    "e3  e2 -e1 -e0 -e7 -e6  e5  e4",
    "e4  e5  e6  e7  e0  e1  e2  e3",
    "e5 -e4 -e7  e6 -e1  e0  e3 -e2",
    "e6  e7 -e4 -e5 -e2 -e3  e0  e1",
    "e7 -e6  e5 -e4 -e3  e2 -e1  e0",
)


def _parse_entry(text: str) -> Tuple[int, int]:
    sign = -1 if text.startswith("-") else 1
    return sign, int(text.lstrip("-")[1:])


@dataclass(frozen=True)
class CayleyTable:
    """Signed basis products: entries[i][j] = (sign, k) meaning e_i*e_j = sign*e_k."""
    entries: Tuple[Tuple[Tuple[int, int], ...], ...]

    def __post_init__(self):
        if len(self.entries) != DIMENSION or any(len(row) != DIMENSION for row in self.entries):
            raise ValueError("multiplication table must be 8x8")

    @classmethod
    def from_rows(cls, rows: Sequence[str]) -> "CayleyTable":
        return cls(tuple(tuple(_parse_entry(cell) for cell in row.split()) for row in rows))

    def product(self, i: int, j: int) -> Tuple[int, int]:
        return self.entries[i][j]

    def with_entry(self, i: int, j: int, sign: int, k: int) -> "CayleyTable":
        """Copy with one entry replaced (used to check the harness catches bad tables)."""
        rows = [list(row) for row in self.entries]
        rows[i][j] = (sign, k)
        return CayleyTable(tuple(tuple(row) for row in rows))

    def basis_product(self, i: int, j: int, ring: ScalarRing = RATIONAL) -> "SplitOctonion":
        sign, k = self.entries[i][j]
        return SplitOctonion.basis(k, ring, sign)


CAYLEY_TABLE = CayleyTable.from_rows(_TABLE_ROWS)


@dataclass(frozen=True)
class SplitOctonion:
    """Immutable 8-vector of coefficients over any supported scalar ring."""
    coeffs: Tuple[Any, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if len(coeffs) != DIMENSION:
            raise ValueError(f"split-octonion needs {DIMENSION} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def basis(cls, index: int, ring: ScalarRing = RATIONAL, sign: int = 1) -> "SplitOctonion":
        if not 0 <= index < DIMENSION:
            raise OctonionError(f"basis index out of range: {index}")
        unit = ring.one if sign > 0 else -ring.one
        return cls(tuple(unit if i == index else ring.zero for i in range(DIMENSION)))

    @classmethod
    def zero(cls, ring: ScalarRing = RATIONAL) -> "SplitOctonion":
        return cls((ring.zero,) * DIMENSION)

    @classmethod
    def one(cls, ring: ScalarRing = RATIONAL) -> "SplitOctonion":
        return cls.basis(0, ring)

    def __getitem__(self, index: int) -> Any:
        return self.coeffs[index]

    def __iter__(self) -> Iterator[Any]:
        return iter(self.coeffs)

    def __len__(self) -> int:
        return DIMENSION

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def map_coeffs(self, fn: Callable[[Any], Any]) -> "SplitOctonion":
        return replace(self, coeffs=tuple(fn(c) for c in self.coeffs))

    def to_floats(self) -> "SplitOctonion":
        return self.map_coeffs(FLOAT.coerce)

    def __add__(self, other: "SplitOctonion") -> "SplitOctonion":
        return add(self, other)

    def __sub__(self, other: "SplitOctonion") -> "SplitOctonion":
        return sub(self, other)

    def __neg__(self) -> "SplitOctonion":
        return negate(self)

    def __mul__(self, other: Any) -> "SplitOctonion":
        if isinstance(other, SplitOctonion):
            return direct_mul(self, other)
        return scalar_mul(other, self)

    def __rmul__(self, other: Any) -> "SplitOctonion":
        return scalar_mul(other, self)

    def conjugate(self) -> "SplitOctonion":
        return conjugate(self)

    def quadratic_form(self) -> Any:
        return quadratic_form(self)

    def __str__(self) -> str:
        return format_octonion(self)


def add(x: SplitOctonion, y: SplitOctonion) -> SplitOctonion:
    return SplitOctonion(tuple(a + b for a, b in zip(x.coeffs, y.coeffs)))


def sub(x: SplitOctonion, y: SplitOctonion) -> SplitOctonion:
    return SplitOctonion(tuple(a - b for a, b in zip(x.coeffs, y.coeffs)))


def negate(x: SplitOctonion) -> SplitOctonion:
    return SplitOctonion(tuple(-a for a in x.coeffs))


def scalar_mul(alpha: Any, x: SplitOctonion) -> SplitOctonion:
    return SplitOctonion(tuple(alpha * a for a in x.coeffs))


def conjugate(x: SplitOctonion) -> SplitOctonion:
    c = x.coeffs
    return SplitOctonion((c[0],) + tuple(-a for a in c[1:]))


def quadratic_form(x: SplitOctonion) -> Any:
    """N(x) = c0^2 + c1^2 + c2^2 + c3^2 - c4^2 - c5^2 - c6^2 - c7^2, the real part of x*conj(x)."""
    c = x.coeffs
    return (c[0] * c[0] + c[1] * c[1] + c[2] * c[2] + c[3] * c[3]
            - c[4] * c[4] - c[5] * c[5] - c[6] * c[6] - c[7] * c[7])


def direct_mul(x: SplitOctonion, b: SplitOctonion) -> SplitOctonion:
    """Schoolbook product y = x * b written out as eight bilinear forms."""
    x0, x1, x2, x3, x4, x5, x6, x7 = x.coeffs
    b0, b1, b2, b3, b4, b5, b6, b7 = b.coeffs
    return SplitOctonion((
        x0*b0 - x1*b1 - x2*b2 - x3*b3 + x4*b4 + x5*b5 + x6*b6 + x7*b7,
        x0*b1 + x1*b0 + x2*b3 - x3*b2 + x4*b5 - x5*b4 + x6*b7 - x7*b6,
        x0*b2 - x1*b3 + x2*b0 + x3*b1 + x4*b6 - x5*b7 - x6*b4 + x7*b5,
        x0*b3 + x1*b2 - x2*b1 + x3*b0 + x4*b7 + x5*b6 - x6*b5 - x7*b4,
        x0*b4 + x1*b5 + x2*b6 + x3*b7 + x4*b0 - x5*b1 - x6*b2 - x7*b3,
        x0*b5 - x1*b4 - x2*b7 + x3*b6 + x4*b1 + x5*b0 - x6*b3 + x7*b2,
        x0*b6 + x1*b7 - x2*b4 - x3*b5 + x4*b2 + x5*b3 + x6*b0 - x7*b1,
        x0*b7 - x1*b6 + x2*b5 - x3*b4 + x4*b3 - x5*b2 + x6*b1 + x7*b0,
    ))


def table_mul(x: SplitOctonion, b: SplitOctonion, table: CayleyTable = CAYLEY_TABLE) -> SplitOctonion:
    """Product accumulated entry by entry from a multiplication table."""
    out: List[Any] = [None] * DIMENSION
    for i in range(DIMENSION):
        for j in range(DIMENSION):
            sign, k = table.product(i, j)
            term = x[i] * b[j]
            if out[k] is None:
                out[k] = term if sign > 0 else -term
            else:
                out[k] = out[k] + term if sign > 0 else out[k] - term
    if any(c is None for c in out):
        raise OctonionError("multiplication table leaves an output coordinate empty")
    return SplitOctonion(tuple(out))


@dataclass(frozen=True)
class CoeffMatrix8:
    """The 8x8 matrix B8 with x * b = B8 @ x."""
    rows: Tuple[Tuple[Any, ...], ...]

    def map_coeffs(self, fn: Callable[[Any], Any]) -> "CoeffMatrix8":
        return CoeffMatrix8(tuple(tuple(fn(a) for a in row) for row in self.rows))

    def block(self, row: int, col: int) -> Tuple[Tuple[Any, ...], ...]:
        """4x4 quadrant (row, col) with row, col in {0, 1}."""
        return tuple(tuple(r[4 * col:4 * col + 4]) for r in self.rows[4 * row:4 * row + 4])


def build_coeff_matrix(b: SplitOctonion) -> CoeffMatrix8:
    """Right-multiplication matrix of b; entries are signed copies of b's coefficients."""
    b0, b1, b2, b3, b4, b5, b6, b7 = b.coeffs
    return CoeffMatrix8((
        (b0, -b1, -b2, -b3,  b4,  b5,  b6,  b7),
        (b1,  b0,  b3, -b2,  b5, -b4,  b7, -b6),
        (b2, -b3,  b0,  b1,  b6, -b7, -b4,  b5),
        (b3,  b2, -b1,  b0,  b7,  b6, -b5, -b4),
        (b4,  b5,  b6,  b7,  b0, -b1, -b2, -b3),
        (b5, -b4, -b7,  b6,  b1,  b0, -b3,  b2),
        (b6,  b7, -b4, -b5,  b2,  b3,  b0, -b1),
        (b7, -b6,  b5, -b4,  b3, -b2,  b1,  b0),
    ))


def matvec(matrix: CoeffMatrix8, x: SplitOctonion) -> SplitOctonion:
    out = []
    for row in matrix.rows:
        acc = row[0] * x[0]
        for entry, xi in zip(row[1:], x.coeffs[1:]):
            acc = acc + entry * xi
        out.append(acc)
    return SplitOctonion(tuple(out))


def matrix_mul(x: SplitOctonion, b: SplitOctonion) -> SplitOctonion:
    return matvec(build_coeff_matrix(b), x)


def parse_scalar(text: str, ring: ScalarRing = RATIONAL) -> Any:
    field = text.strip()
    if not field:
        raise OctonionParseError("empty coefficient")
    try:
        value = Fraction(field)
    except (ValueError, ZeroDivisionError) as e:
        raise OctonionParseError(f"bad coefficient {field!r}: {e}") from e
    try:
        scalar = ring.coerce(value)
    except OverflowError as e:
        raise OctonionParseError(f"coefficient {field!r} out of range for {ring.name}") from e
    if isinstance(scalar, float) and not math.isfinite(scalar):
        raise OctonionParseError(f"coefficient {field!r} is not finite")
    return scalar


def parse_octonion(text: str, ring: ScalarRing = RATIONAL) -> SplitOctonion:
    """Parse eight comma-separated coefficients, each an integer or p/q."""
    fields = text.split(",")
    if len(fields) != DIMENSION:
        raise OctonionParseError(f"expected {DIMENSION} comma-separated coefficients, got {len(fields)}")
    return SplitOctonion(tuple(parse_scalar(f, ring) for f in fields))


def format_scalar(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_octonion(x: SplitOctonion) -> str:
    return ",".join(format_scalar(c) for c in x.coeffs)


def equal(x: SplitOctonion, y: SplitOctonion, ring: ScalarRing = RATIONAL) -> bool:
    """Coefficient-wise equality under the ring's own comparison."""
    return all(ring.equal(a, b) for a, b in zip(x.coeffs, y.coeffs))
