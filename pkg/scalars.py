"""
Scalar rings for split-octonion arithmetic.

Every product in this package is written with plain operators (+, -, *,
unary -) plus scale_pow2() for multiplication by 2**k, so one piece of code
runs over exact rationals, doubles, counting scalars and symbolic
polynomials alike.

Realizations:
- Rational: fractions.Fraction (always canonical, exact equality)
- float: IEEE doubles, compared with a relative tolerance
- CountingScalar: wraps any scalar and tallies mults/adds/shifts
- Polynomial16: sympy polynomial over x0..x7, b0..b7 with rational coefficients
"""

import math
import numbers
import operator
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import singledispatch
from typing import Any, Callable, Tuple

import sympy
from sympy import Poly, QQ


@dataclass(frozen=True)
class OpCounts:
    """Operation tallies for one computation."""
    mults: int = 0
    adds: int = 0
    shifts: int = 0

    def __post_init__(self):
        if min(self.mults, self.adds, self.shifts) < 0:
            raise ValueError(f"operation counts must be non-negative: {self}")

    def __add__(self, other: "OpCounts") -> "OpCounts":
        if not isinstance(other, OpCounts):
            return NotImplemented
        return OpCounts(self.mults + other.mults, self.adds + other.adds, self.shifts + other.shifts)

    @property
    def arithmetic(self) -> int:
        """Multiplications plus additions; shifts are not arithmetic work."""
        return self.mults + self.adds

    def as_dict(self) -> dict:
        return {'mults': self.mults, 'adds': self.adds, 'shifts': self.shifts}

    def __str__(self) -> str:
        return f"{self.mults} mults, {self.adds} adds, {self.shifts} shifts"


class Tally:
    """Mutable counter shared by every CountingScalar of one computation."""

    def __init__(self):
        self.mults = 0
        self.adds = 0
        self.shifts = 0

    def snapshot(self) -> OpCounts:
        return OpCounts(self.mults, self.adds, self.shifts)


def is_power_of_two(value: Any) -> bool:
    """True for plain numbers equal to +-2**k (k may be negative)."""
    if isinstance(value, bool) or not isinstance(value, numbers.Number):
        return False
    if isinstance(value, float):
        if value == 0.0 or not math.isfinite(value):
            return False
        return math.frexp(abs(value))[0] == 0.5
    if isinstance(value, numbers.Rational):
        num, den = abs(value.numerator), value.denominator
        return num != 0 and num & (num - 1) == 0 and den & (den - 1) == 0
    return False


class CountingScalar:
    """
    Scalar wrapper that records every arithmetic event on a shared Tally.

    - CountingScalar * CountingScalar counts one multiplication
    - multiplication by a plain +-2**k counts one shift, any other plain
      number one multiplication
    - + and - count one addition
    - negation is free
    """
    __slots__ = ("payload", "tally")

    def __init__(self, payload: Any, tally: Tally):
        self.payload = payload
        self.tally = tally

    def _value(self, other: Any) -> Any:
        if isinstance(other, CountingScalar):
            if other.tally is not self.tally:
                raise ValueError("operands belong to different tallies")
            return other.payload
        return other

    def _wrap(self, payload: Any) -> "CountingScalar":
        return CountingScalar(payload, self.tally)

    def __add__(self, other):
        value = self._value(other)
        self.tally.adds += 1
        return self._wrap(self.payload + value)

    def __radd__(self, other):
        value = self._value(other)
        self.tally.adds += 1
        return self._wrap(value + self.payload)

    def __sub__(self, other):
        value = self._value(other)
        self.tally.adds += 1
        return self._wrap(self.payload - value)

    def __rsub__(self, other):
        value = self._value(other)
        self.tally.adds += 1
        return self._wrap(value - self.payload)

    def _count_product(self, other: Any):
        if not isinstance(other, CountingScalar) and is_power_of_two(other):
            self.tally.shifts += 1
        else:
            self.tally.mults += 1

    def __mul__(self, other):
        value = self._value(other)
        self._count_product(other)
        return self._wrap(self.payload * value)

    def __rmul__(self, other):
        value = self._value(other)
        self._count_product(other)
        return self._wrap(value * self.payload)

    def __neg__(self):
        return self._wrap(-self.payload)

    def scale_pow2(self, k: int) -> "CountingScalar":
        self.tally.shifts += 1
        return self._wrap(scale_pow2(self.payload, k))

    def __eq__(self, other):
        return self.payload == self._value(other)

    __hash__ = None

    def __repr__(self):
        return f"CountingScalar({self.payload!r})"


VARIABLE_NAMES = tuple(f"x{i}" for i in range(8)) + tuple(f"b{i}" for i in range(8))
GENERATORS = sympy.symbols(VARIABLE_NAMES)


def _to_sympy(value: Any):
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    if isinstance(value, float):
        return sympy.Rational(Fraction(value).numerator, Fraction(value).denominator)
    return sympy.Integer(value)


class Polynomial16:
    """
    Polynomial in the 16 indeterminates x0..x7, b0..b7 over the rationals.

    Backed by sympy.Poly, whose dense representation is canonical for a
    fixed generator order, so equality decides symbolic identity.
    """
    __slots__ = ("poly",)

    def __init__(self, poly: Poly):
        self.poly = poly

    @classmethod
    def constant(cls, value: Any) -> "Polynomial16":
        return cls(Poly(_to_sympy(value), *GENERATORS, domain=QQ))

    @classmethod
    def variable(cls, name: str) -> "Polynomial16":
        index = VARIABLE_NAMES.index(name)
        return cls(Poly(GENERATORS[index], *GENERATORS, domain=QQ))

    @classmethod
    def variables(cls, prefix: str) -> Tuple["Polynomial16", ...]:
        """The eight indeterminates prefix0..prefix7 ('x' or 'b')."""
        return tuple(cls.variable(f"{prefix}{i}") for i in range(8))

    def _poly(self, other: Any) -> Poly:
        if isinstance(other, Polynomial16):
            return other.poly
        return Polynomial16.constant(other).poly

    def __add__(self, other):
        return Polynomial16(self.poly + self._poly(other))

    def __radd__(self, other):
        return Polynomial16(self._poly(other) + self.poly)

    def __sub__(self, other):
        return Polynomial16(self.poly - self._poly(other))

    def __rsub__(self, other):
        return Polynomial16(self._poly(other) - self.poly)

    def __mul__(self, other):
        return Polynomial16(self.poly * self._poly(other))

    def __rmul__(self, other):
        return Polynomial16(self._poly(other) * self.poly)

    def __neg__(self):
        return Polynomial16(-self.poly)

    def scale_pow2(self, k: int) -> "Polynomial16":
        return Polynomial16(self.poly * Polynomial16.constant(Fraction(2) ** k).poly)

    def __eq__(self, other):
        if not isinstance(other, (Polynomial16, numbers.Number)):
            return NotImplemented
        return (self.poly - self._poly(other)).is_zero

    __hash__ = None

    def as_expr(self):
        return self.poly.as_expr()

    def __str__(self):
        return str(self.as_expr())

    def __repr__(self):
        return f"Polynomial16({self.as_expr()})"


def poly_equal(p: Polynomial16, q: Polynomial16) -> bool:
    """True iff p and q are the same polynomial."""
    return (p.poly - q.poly).is_zero


@singledispatch
def scale_pow2(value: Any, k: int) -> Any:
    """Multiply value by 2**k; the single entry point for power-of-two scalings."""
    return value * Fraction(2) ** k


@scale_pow2.register
def _(value: float, k: int) -> float:
    return math.ldexp(value, k)


@scale_pow2.register
def _(value: int, k: int):
    if k >= 0:
        return value << k
    if value % (1 << -k) == 0:
        return value >> -k
    return Fraction(value, 1 << -k)


@scale_pow2.register
def _(value: CountingScalar, k: int) -> CountingScalar:
    return value.scale_pow2(k)


@scale_pow2.register
def _(value: Polynomial16, k: int) -> Polynomial16:
    return value.scale_pow2(k)


@dataclass(frozen=True)
class ScalarRing:
    """
    A scalar realization: how to build constants and how to compare.

    The arithmetic itself lives on the values (operators and scale_pow2).
    """
    name: str
    coerce: Callable[[Any], Any]
    equal: Callable[[Any, Any], bool]

    @property
    def zero(self) -> Any:
        return self.coerce(0)

    @property
    def one(self) -> Any:
        return self.coerce(1)


FLOAT_REL_TOL = 1e-12


def _float_equal(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=FLOAT_REL_TOL, abs_tol=FLOAT_REL_TOL)


RATIONAL = ScalarRing("rational", Fraction, operator.eq)
FLOAT = ScalarRing("float", float, _float_equal)
POLYNOMIAL = ScalarRing("polynomial", Polynomial16.constant, poly_equal)


def random_rational(rng: random.Random,
                    numerator_range: Tuple[int, int] = (-99, 99),
                    denominator_range: Tuple[int, int] = (1, 99)) -> Fraction:
    """Canonical random rational with bounded numerator and denominator."""
    return Fraction(rng.randint(*numerator_range), rng.randint(*denominator_range))


def _lift(value: Any, fn: Callable[[Any], Any]) -> Any:
    """Apply fn to every scalar inside value (octonions, prepared multipliers, tuples)."""
    if hasattr(value, "map_coeffs"):
        return value.map_coeffs(fn)
    if isinstance(value, (tuple, list)):
        return type(value)(_lift(item, fn) for item in value)
    return fn(value)


def _is_scalar(value: Any) -> bool:
    return not isinstance(value, bool) and isinstance(value, (numbers.Number, Polynomial16))


def with_counting(computation: Callable[..., Any], *operands: Any) -> Tuple[Any, OpCounts]:
    """
    Run computation over counting scalars and return (result, OpCounts).

    Every scalar inside operands is wrapped onto one fresh Tally; the result
    is unwrapped back to the inner scalars. Counts are per invocation.
    """
    tally = Tally()

    def wrap(value):
        return CountingScalar(value, tally) if _is_scalar(value) else value

    def unwrap(value):
        return value.payload if isinstance(value, CountingScalar) else value

    wrapped = [_lift(operand, wrap) for operand in operands]
    result = computation(*wrapped)
    return _lift(result, unwrap), tally.snapshot()
