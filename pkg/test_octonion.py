"""
Tests for the split-octonion value type and the reference products.
"""

import itertools
import random
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from octonion import (
    CAYLEY_TABLE, DIMENSION, OctonionError, OctonionParseError, SplitOctonion,
    build_coeff_matrix, conjugate, direct_mul, equal, format_octonion, matrix_mul, parse_octonion,
    quadratic_form, table_mul,
)
from scalars import FLOAT, POLYNOMIAL, RATIONAL, OpCounts, Polynomial16, with_counting
from verify import random_octonion

e = [SplitOctonion.basis(i) for i in range(DIMENSION)]

rationals = st.fractions(min_value=-99, max_value=99, max_denominator=99)
octonions = st.tuples(*([rationals] * DIMENSION)).map(SplitOctonion)


@pytest.mark.parametrize("i, j, expected", [
    (5, 6, e[3]),
    (1, 2, e[3]),
    (2, 1, -e[3]),
    (4, 4, e[0]),
    (1, 1, -e[0]),
    (7, 6, -e[1]),
])
def test_table_examples(i, j, expected):
    assert direct_mul(e[i], e[j]) == expected
    assert table_mul(e[i], e[j]) == expected
    assert matrix_mul(e[i], e[j]) == expected


def test_squares_have_split_signature():
    for i in range(DIMENSION):
        sign, k = CAYLEY_TABLE.product(i, i)
        assert k == 0
        assert sign == (-1 if i in (1, 2, 3) else 1)


def test_every_basis_product_is_a_signed_unit():
    for i, j in itertools.product(range(DIMENSION), repeat=2):
        sign, k = CAYLEY_TABLE.product(i, j)
        assert direct_mul(e[i], e[j]) == SplitOctonion.basis(k, sign=sign)


def test_wrong_coefficient_count():
    with pytest.raises(ValueError):
        SplitOctonion((Fraction(1),) * 7)


def test_basis_index_out_of_range():
    with pytest.raises(OctonionError):
        SplitOctonion.basis(8)


def test_identity_element():
    x = random_octonion(random.Random(3))
    one = SplitOctonion.one()
    assert direct_mul(one, x) == x
    assert direct_mul(x, one) == x


def test_zero_divisor():
    left = e[0] + e[4]
    right = e[0] - e[4]
    assert not left.is_zero() and not right.is_zero()
    assert direct_mul(left, right).is_zero()


def test_non_commutative_and_non_associative():
    assert direct_mul(e[1], e[2]) != direct_mul(e[2], e[1])
    assert any(direct_mul(direct_mul(e[a], e[b]), e[c]) != direct_mul(e[a], direct_mul(e[b], e[c]))
               for a, b, c in itertools.product(range(1, DIMENSION), repeat=3))


def test_quadratic_form_signature():
    assert quadratic_form(e[1]) == 1
    assert quadratic_form(e[4]) == -1
    assert quadratic_form(e[0] + e[4]) == 0


def test_three_product_paths_agree():
    rng = random.Random(11)
    for _ in range(50):
        x, b = random_octonion(rng), random_octonion(rng)
        expected = direct_mul(x, b)
        assert table_mul(x, b) == expected
        assert matrix_mul(x, b) == expected


def test_operator_sugar():
    x, b = random_octonion(random.Random(4)), random_octonion(random.Random(5))
    assert x * b == direct_mul(x, b)
    assert 2 * x == x + x
    assert x - x == SplitOctonion.zero()
    assert -(-x) == x


@pytest.mark.parametrize("product", [direct_mul, table_mul, matrix_mul])
def test_schoolbook_counts(product):
    rng = random.Random(8)
    _, counts = with_counting(product, random_octonion(rng), random_octonion(rng))
    assert counts == OpCounts(64, 56, 0)


def test_coeff_matrix_rows():
    b = SplitOctonion(tuple(Fraction(i + 1) for i in range(DIMENSION)))
    rows = build_coeff_matrix(b).rows
    assert rows[0] == (1, -2, -3, -4, 5, 6, 7, 8)
    assert rows[7] == (8, -7, 6, -5, 4, -3, 2, 1)


def test_symbolic_real_part():
    x = SplitOctonion(Polynomial16.variables('x'))
    b = SplitOctonion(Polynomial16.variables('b'))
    xs, bs = x.coeffs, b.coeffs
    y0 = (xs[0] * bs[0] - xs[1] * bs[1] - xs[2] * bs[2] - xs[3] * bs[3]
          + xs[4] * bs[4] + xs[5] * bs[5] + xs[6] * bs[6] + xs[7] * bs[7])
    assert direct_mul(x, b)[0] == y0
    assert table_mul(x, b) == direct_mul(x, b)


def test_to_floats():
    x = SplitOctonion((Fraction(1, 2),) + (Fraction(0),) * 7)
    assert x.to_floats().coeffs[0] == 0.5
    assert isinstance(x.to_floats().coeffs[1], float)


def test_equal_uses_the_ring_comparison():
    x = SplitOctonion((0.1 + 0.2,) + (1.0,) * 7)
    y = SplitOctonion((0.3,) + (1.0,) * 7)
    assert x != y
    assert equal(x, y, FLOAT)
    assert not equal(x, SplitOctonion((0.3,) + (1.001,) * 7), FLOAT)
    assert not equal(e[1], e[2], RATIONAL)
    p = SplitOctonion(Polynomial16.variables('x'))
    assert equal(p + p, 2 * p, POLYNOMIAL)


def test_with_entry_changes_one_entry():
    faulty = CAYLEY_TABLE.with_entry(4, 4, -1, 0)
    assert faulty.product(4, 4) == (-1, 0)
    assert faulty.product(5, 5) == CAYLEY_TABLE.product(5, 5)
    assert table_mul(e[4], e[4], faulty) == -e[0]


def test_parse_and_format():
    x = parse_octonion("1/2, -3, 0, 1.5, 4/8, 0, 0, -7/3")
    assert x.coeffs[:4] == (Fraction(1, 2), Fraction(-3), Fraction(0), Fraction(3, 2))
    assert format_octonion(x) == "1/2,-3,0,3/2,1/2,0,0,-7/3"
    assert parse_octonion(format_octonion(x)) == x


def test_parse_float_ring():
    x = parse_octonion("1/4,2,0,0,0,0,0,0", FLOAT)
    assert x.coeffs[0] == 0.25
    assert format_octonion(x).startswith("0.25,2.0,")


@pytest.mark.parametrize("text", [
    "1,2,3",
    "1,2,3,4,5,6,7,8,9",
    "1,2,3,4,5,6,7,1/0",
    "1,2,3,4,5,6,7,abc",
    "1,2,3,4,5,6,7,",
])
def test_parse_errors(text):
    with pytest.raises(OctonionParseError):
        parse_octonion(text)


@pytest.mark.parametrize("text", ["1e400,0,0,0,0,0,0,0", "inf,0,0,0,0,0,0,0", "nan,0,0,0,0,0,0,0"])
def test_parse_float_rejects_non_finite(text):
    with pytest.raises(OctonionParseError):
        parse_octonion(text, FLOAT)


def test_parse_error_is_value_error():
    assert issubclass(OctonionParseError, ValueError)


@settings(max_examples=50, deadline=None)
@given(octonions, octonions)
def test_norm_multiplicative(x, y):
    assert quadratic_form(direct_mul(x, y)) == quadratic_form(x) * quadratic_form(y)


@settings(max_examples=50, deadline=None)
@given(octonions)
def test_quadratic_form_is_real_part_of_x_times_conjugate(x):
    product = direct_mul(x, conjugate(x))
    assert product[0] == quadratic_form(x)
    assert all(c == 0 for c in product.coeffs[1:])


@settings(max_examples=50, deadline=None)
@given(octonions, octonions, octonions, rationals)
def test_bilinearity(x, y, z, alpha):
    assert direct_mul(alpha * x + z, y) == alpha * direct_mul(x, y) + direct_mul(z, y)
    assert direct_mul(x, alpha * y + z) == alpha * direct_mul(x, y) + direct_mul(x, z)


@settings(max_examples=50, deadline=None)
@given(octonions, octonions)
def test_alternative_laws(x, y):
    assert direct_mul(direct_mul(x, x), y) == direct_mul(x, direct_mul(x, y))
    assert direct_mul(direct_mul(y, x), x) == direct_mul(y, direct_mul(x, x))


@settings(max_examples=50, deadline=None)
@given(octonions, octonions)
def test_conjugation_reverses_products(x, y):
    assert conjugate(direct_mul(x, y)) == direct_mul(conjugate(y), conjugate(x))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
