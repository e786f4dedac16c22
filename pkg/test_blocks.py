"""
Tests for the block structure of the right-multiplication matrix.
"""

import random
import sys
from dataclasses import replace
from fractions import Fraction

import pytest

from blocks import (
    all_block_checks, block_identity_check, decompose, rank_one_check, sub_block_check,
    toeplitz4_factor_check, two_by_two_factor_check,
)
from octonion import SplitOctonion
from verify import random_octonion, symbolic_operands


def test_unit_right_operand():
    blocks = decompose(SplitOctonion.one())
    assert toeplitz4_factor_check(blocks)
    assert all(all_block_checks(SplitOctonion.one()).values())


@pytest.mark.parametrize("seed", [1, 2, 3, 4, 5])
def test_random_rational_right_operand(seed):
    b = random_octonion(random.Random(seed))
    checks = all_block_checks(b)
    assert checks == {
        'block_identity': True,
        'rank_one': True,
        'sub_blocks': True,
        'toeplitz4': True,
        'two_by_two': True,
    }


def test_first_rows():
    b = SplitOctonion(tuple(Fraction(i + 1) for i in range(8)))
    blocks = decompose(b)
    # b0+b4, b5-b1, b6-b2, b7-b3
    assert blocks.e4_0[0] == (6, 4, 4, 4)
    # b0-b4, -b1-b5, -b2-b6, -b3-b7
    assert blocks.f4_0[0] == (-4, -8, -10, -12)
    assert blocks.m4_1[0] == (5, -2, -3, -4)
    assert blocks.m4_2[0] == (-5, -2, -3, -4)
    assert blocks.m4_1[1] == (0, 0, 0, 0)


def test_toeplitz_blocks_are_symmetric():
    blocks = decompose(random_octonion(random.Random(9)))
    for matrix in (blocks.e4_1, blocks.f4_1):
        for i in range(4):
            for j in range(4):
                assert matrix[i][j] == matrix[j][i]
                assert matrix[i][j] == matrix[i ^ 3][j ^ 3]


def test_symbolic_toeplitz_factorization():
    _, b = symbolic_operands()
    blocks = decompose(b)
    assert toeplitz4_factor_check(blocks)
    assert two_by_two_factor_check(blocks)
    assert rank_one_check(blocks)
    assert sub_block_check(blocks)


def test_symbolic_block_identity():
    _, b = symbolic_operands()
    assert block_identity_check(b)


def test_corrupted_blocks_fail():
    blocks = decompose(SplitOctonion(tuple(Fraction(i + 1) for i in range(8))))
    swapped = replace(blocks, e2_0=blocks.f2_0, f2_0=blocks.e2_0)
    assert not sub_block_check(swapped)
    shifted = replace(blocks, m4_1=blocks.m4_2)
    assert not rank_one_check(shifted)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
