"""
Block structure of the right-multiplication matrix B8.

With u = x_top + x_bot and w = x_top - x_bot the product splits into a
sum branch (driven by u) and a difference branch (driven by w):

    B8 = 1/2 (H2 (x) I4) [ (E4_0 (+) F4_0) + coupling ] (H2 (x) I4)

E4_0 and F4_0 are each a symmetric block-Toeplitz matrix plus a rank-one
first-row correction; the Toeplitz parts diagonalise with Hadamard
matrices. The checks here are used by verify.py against random rationals
and against symbolic polynomials.
"""

from dataclasses import dataclass
from typing import Any, Sequence, Tuple

from octonion import SplitOctonion, build_coeff_matrix
from scalars import scale_pow2

Matrix = Tuple[Tuple[Any, ...], ...]

H2: Matrix = ((1, 1), (1, -1))
I2: Matrix = ((1, 0), (0, 1))
I4: Matrix = tuple(tuple(1 if i == j else 0 for j in range(4)) for i in range(4))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(p + q for p, q in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(p - q for p, q in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a: Matrix) -> Matrix:
    return tuple(tuple(-p for p in row) for row in a)


def mat_scale_pow2(a: Matrix, k: int) -> Matrix:
    return tuple(tuple(scale_pow2(p, k) for p in row) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    inner = len(b)
    out = []
    for row in a:
        out_row = []
        for j in range(len(b[0])):
            acc = row[0] * b[0][j]
            for t in range(1, inner):
                acc = acc + row[t] * b[t][j]
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def kron(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(a[i][j] * b[k][l] for j in range(len(a[0])) for l in range(len(b[0])))
        for i in range(len(a)) for k in range(len(b))
    )


def direct_sum(a: Matrix, b: Matrix, zero: Any) -> Matrix:
    top = tuple(tuple(row) + (zero,) * len(b[0]) for row in a)
    bottom = tuple((zero,) * len(a[0]) + tuple(row) for row in b)
    return top + bottom


def stack(top_left: Matrix, top_right: Matrix, bottom_left: Matrix, bottom_right: Matrix) -> Matrix:
    top = tuple(l + r for l, r in zip(top_left, top_right))
    bottom = tuple(l + r for l, r in zip(bottom_left, bottom_right))
    return top + bottom


def mat_equal(a: Matrix, b: Matrix) -> bool:
    return all(p == q for ra, rb in zip(a, b) for p, q in zip(ra, rb))


def _zero_like(value: Any) -> Any:
    return value * 0


def symmetric_toeplitz(alpha: Any, beta: Any, gamma: Any, delta: Any) -> Matrix:
    """[[A, B], [B, A]] with A = [[alpha, beta], [beta, alpha]], B = [[gamma, delta], [delta, gamma]]."""
    return (
        (alpha, beta, gamma, delta),
        (beta, alpha, delta, gamma),
        (gamma, delta, alpha, beta),
        (delta, gamma, beta, alpha),
    )


def _pair(p: Any, q: Any) -> Matrix:
    return ((p, q), (q, p))


def _first_row(row: Sequence[Any], zero: Any) -> Matrix:
    return (tuple(row),) + ((zero,) * 4,) * 3


def _z(a: Sequence[Any], zero: Any) -> Matrix:
    """Symmetric part of the branch coupling, built from a1..a3."""
    return (
        (zero, zero, zero, zero),
        (zero, zero, a[3], a[2]),
        (zero, a[3], zero, a[1]),
        (zero, a[2], a[1], zero),
    )


def _k(a: Sequence[Any], zero: Any) -> Matrix:
    """Antisymmetric part of the branch coupling, built from a1..a3."""
    return (
        (zero, zero, zero, zero),
        (zero, zero, a[3], -a[2]),
        (zero, -a[3], zero, a[1]),
        (zero, a[2], -a[1], zero),
    )


@dataclass(frozen=True)
class BlockDecomposition:
    """Named sub-blocks of B8 for one right operand b."""
    e4_0: Matrix
    e4_1: Matrix
    m4_1: Matrix
    f4_0: Matrix
    f4_1: Matrix
    m4_2: Matrix
    a2: Matrix
    b2: Matrix
    c2: Matrix
    d2: Matrix
    e2_0: Matrix
    f2_0: Matrix
    k2_0: Matrix
    l2_0: Matrix
    coupling: Matrix
    zero: Any


def decompose(b: SplitOctonion) -> BlockDecomposition:
    b0, b1, b2, b3, b4, b5, b6, b7 = b.coeffs
    zero = _zero_like(b0)
    s = tuple(b[i] + b[i + 4] for i in range(4))
    d = tuple(b[i] - b[i + 4] for i in range(4))

    # Sum and difference branches taken straight from the quadrants of B8.
    matrix = build_coeff_matrix(b)
    p, q = matrix.block(0, 0), matrix.block(0, 1)
    r, t = matrix.block(1, 0), matrix.block(1, 1)
    diagonal, off_diagonal = mat_add(p, t), mat_add(q, r)
    e4_0 = mat_add(mat_scale_pow2(mat_add(diagonal, off_diagonal), -1), _z(s, zero))
    f4_0 = mat_add(mat_scale_pow2(mat_sub(diagonal, off_diagonal), -1), _z(d, zero))

    coupling = stack(mat_neg(_z(s, zero)), _k(d, zero), _k(s, zero), mat_neg(_z(d, zero)))

    return BlockDecomposition(
        e4_0=e4_0,
        e4_1=symmetric_toeplitz(d[0], s[1], s[2], s[3]),
        m4_1=_first_row((b4, -b1, -b2, -b3), zero),
        f4_0=f4_0,
        f4_1=symmetric_toeplitz(s[0], d[1], d[2], d[3]),
        m4_2=_first_row((-b4, -b1, -b2, -b3), zero),
        a2=_pair(d[0], s[1]),
        b2=_pair(s[2], s[3]),
        c2=_pair(s[0], d[1]),
        d2=_pair(d[2], d[3]),
        e2_0=_pair(b0 - b4 + b2 + b6, b1 + b5 + b3 + b7),
        f2_0=_pair(b0 - b4 - b2 - b6, b1 + b5 - b3 - b7),
        k2_0=_pair(b0 + b4 + b2 - b6, b1 - b5 + b3 - b7),
        l2_0=_pair(b0 + b4 - b2 + b6, b1 - b5 - b3 + b7),
        coupling=coupling,
        zero=zero,
    )


def rank_one_check(blocks: BlockDecomposition) -> bool:
    """E4_0 = E4_1 + 2 M4_1 and F4_0 = F4_1 + 2 M4_2."""
    return (mat_equal(blocks.e4_0, mat_add(blocks.e4_1, mat_scale_pow2(blocks.m4_1, 1)))
            and mat_equal(blocks.f4_0, mat_add(blocks.f4_1, mat_scale_pow2(blocks.m4_2, 1))))


def sub_block_check(blocks: BlockDecomposition) -> bool:
    """The 2x2 eigen-blocks are the sums and differences of the Toeplitz sub-blocks."""
    return (mat_equal(blocks.e2_0, mat_add(blocks.a2, blocks.b2))
            and mat_equal(blocks.f2_0, mat_sub(blocks.a2, blocks.b2))
            and mat_equal(blocks.k2_0, mat_add(blocks.c2, blocks.d2))
            and mat_equal(blocks.l2_0, mat_sub(blocks.c2, blocks.d2)))


def _hadamard_sandwich(h: Matrix, inner: Matrix) -> Matrix:
    return mat_mul(mat_mul(h, mat_scale_pow2(inner, -1)), h)


def toeplitz4_factor_check(blocks: BlockDecomposition) -> bool:
    """(H2 (x) I2) 1/2 [(A+B) (+) (A-B)] (H2 (x) I2) reproduces E4_1 and F4_1."""
    h4 = kron(H2, I2)
    e_inner = direct_sum(mat_add(blocks.a2, blocks.b2), mat_sub(blocks.a2, blocks.b2), blocks.zero)
    f_inner = direct_sum(mat_add(blocks.c2, blocks.d2), mat_sub(blocks.c2, blocks.d2), blocks.zero)
    return (mat_equal(_hadamard_sandwich(h4, e_inner), blocks.e4_1)
            and mat_equal(_hadamard_sandwich(h4, f_inner), blocks.f4_1))


def two_by_two_factor_check(blocks: BlockDecomposition) -> bool:
    """Each [[p, q], [q, p]] equals H2 1/2 diag(p+q, p-q) H2."""
    for block in (blocks.e2_0, blocks.f2_0, blocks.k2_0, blocks.l2_0):
        p, q = block[0]
        diag = ((p + q, blocks.zero), (blocks.zero, p - q))
        if not mat_equal(_hadamard_sandwich(H2, diag), block):
            return False
    return True


def block_identity_check(b: SplitOctonion) -> bool:
    """B8 = 1/2 (H2 (x) I4) [(E4_0 (+) F4_0) + coupling] (H2 (x) I4)."""
    blocks = decompose(b)
    h8 = kron(H2, I4)
    inner = mat_add(direct_sum(blocks.e4_0, blocks.f4_0, blocks.zero), blocks.coupling)
    return mat_equal(_hadamard_sandwich(h8, inner), build_coeff_matrix(b).rows)


def all_block_checks(b: SplitOctonion) -> dict:
    blocks = decompose(b)
    return {
        'block_identity': block_identity_check(b),
        'rank_one': rank_one_check(blocks),
        'sub_blocks': sub_block_check(blocks),
        'toeplitz4': toeplitz4_factor_check(blocks),
        'two_by_two': two_by_two_factor_check(blocks),
    }
