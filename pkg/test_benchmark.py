"""
Tests for the benchmark helpers. Timings themselves are not asserted.
"""

import sys

import pytest

from benchmark import BenchRow, checksums_agree, make_operands, print_benchmark, run_benchmark, time_path
from octonion import direct_mul


def test_make_operands_is_seeded():
    first = make_operands(4, seed=9)
    second = make_operands(4, seed=9)
    assert first == second
    assert all(abs(c) <= 1000.0 for x, b in first for c in x.coeffs + b.coeffs)


def test_time_path_checksum():
    operands = make_operands(3, seed=1)
    _, checksum = time_path(lambda k: direct_mul(*operands[k]), iters=3, runs=2, warmup=1)
    expected = sum(sum(direct_mul(x, b).coeffs) for x, b in operands)
    assert checksum == pytest.approx(expected)


def test_run_benchmark_rows():
    rows = run_benchmark(10, runs=1, warmup=0, reuse_prepared=True)
    assert [row.name for row in rows] == ['direct', 'fast', 'fast (prepared, apply only)']
    assert checksums_agree(rows)


def test_run_benchmark_rejects_zero_iterations():
    with pytest.raises(ValueError):
        run_benchmark(0)


def test_checksums_disagree():
    rows = [BenchRow('direct', 1.0, 10.0, 1), BenchRow('fast', 1.0, 11.0, 1)]
    assert not checksums_agree(rows)


def test_print_benchmark(capsys):
    rows = [BenchRow('direct', 200.0, 5.0, 3), BenchRow('fast', 250.0, 5.0, 3)]
    print_benchmark(rows, 100)
    out = capsys.readouterr().out
    assert "1.25x" in out
    assert "[PASS] checksums agree" in out


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
