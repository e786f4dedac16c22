"""
Tests for the verification harness, including fault injection so every
checker is shown to be able to fail.
"""

import json
import random
import sys
import time
from fractions import Fraction

import pytest

import verify
from config import SuiteSettings, load_suite
from octonion import CAYLEY_TABLE, SplitOctonion, direct_mul, table_mul
from scalars import FLOAT, OpCounts
from schedule import SCHEDULE, PreparedMultiplier, apply, prepare
from verify import (
    COMMUTATIVITY, CheckResult, HarnessError, VerificationSuite, clear_denominators, count_audit,
    exhaustive_basis_check, float_agreement, property_suite, random_equivalence,
    random_octonion, reference_check, symbolic_check, witness_check,
)


def test_basis_closure():
    result = exhaustive_basis_check()
    assert result.ok
    assert str(result) == "64/64"


def test_injected_table_sign():
    result = exhaustive_basis_check(table=CAYLEY_TABLE.with_entry(4, 4, -1, 0))
    assert not result.ok
    assert result.failure_case == (4, 4)
    assert result.passed == 63


def test_injected_implementation_sign():
    flipped = CAYLEY_TABLE.with_entry(5, 6, -1, 3)
    paths = {'table': lambda x, b: table_mul(x, b, flipped)}
    result = exhaustive_basis_check(paths=paths)
    assert result.failure_case == (5, 6)
    assert result.first_failure.startswith("(5,6) via table")


def test_basis_closure_over_doubles():
    result = exhaustive_basis_check(ring=FLOAT)
    assert result.ok
    assert result.passed == 64
    flipped = CAYLEY_TABLE.with_entry(2, 7, 1, 5)
    paths = {'table': lambda x, b: table_mul(x, b, flipped)}
    assert exhaustive_basis_check(paths=paths, ring=FLOAT).failure_case == (2, 7)


def test_random_equivalence_passes():
    result = random_equivalence(500, seed=2015)
    assert result.ok
    assert result.total == 500


def test_forced_zero_pair():
    zero = SplitOctonion.zero()
    result = random_equivalence(1, seed=0, forced_pairs=[(zero, zero)])
    assert result.ok and result.passed == 1


def _corrupted_first_eigenvalue(x, b):
    coeffs = list(prepare(b).coeffs)
    coeffs[0] += 1
    return apply(PreparedMultiplier(tuple(coeffs)), x)


def test_corrupted_coefficient_is_caught():
    result = random_equivalence(5, seed=2015, multiplier=_corrupted_first_eigenvalue)
    assert not result.ok
    assert result.first_failure.startswith("pair 0:")


def test_random_equivalence_rejects_negative_count():
    with pytest.raises(ValueError):
        random_equivalence(-1, seed=0)


def test_clear_denominators():
    rng = random.Random(41)
    x, b = random_octonion(rng), random_octonion(rng)
    big_x, big_b, scale = clear_denominators(x, b)
    assert all(type(c) is int for c in big_x.coeffs + big_b.coeffs)
    assert all(c % 8 == 0 for c in big_b.coeffs)
    assert direct_mul(big_x, big_b) == scale * direct_mul(x, b)


def test_fast_product_stays_integral_after_clearing():
    rng = random.Random(43)
    big_x, big_b, _ = clear_denominators(random_octonion(rng), random_octonion(rng))
    prepared = prepare(big_b)
    assert all(type(c) is int for c in prepared.coeffs)
    assert all(type(c) is int for c in apply(prepared, big_x).coeffs)


def test_symbolic_check_passes():
    result = symbolic_check()
    assert result
    assert result.failing_output is None
    assert result.toeplitz and result.two_by_two and result.block_identity


def test_symbolic_check_catches_dropped_addition():
    index = len(SCHEDULE.pre_x) + len(SCHEDULE.mul_steps) + 4
    result = symbolic_check(SCHEDULE.with_step_dropped(index))
    assert not result
    assert result.failing_output is not None
    assert result.difference not in (None, "0")


def test_count_audit():
    audit = count_audit()
    assert audit.ok, audit.failures
    assert audit.direct == OpCounts(64, 56, 0)
    assert audit.fast == OpCounts(28, 92, 8)
    assert audit.prepare == OpCounts(0, 24, 8)
    assert audit.apply == OpCounts(28, 68, 0)
    assert audit.savings == 36
    assert audit.direct.arithmetic == audit.fast.arithmetic == 120


def test_count_audit_flags_faulty_schedule():
    index = len(SCHEDULE.pre_x) + len(SCHEDULE.mul_steps)
    audit = count_audit(schedule=SCHEDULE.with_step_dropped(index))
    assert not audit.ok
    assert any(f.startswith("fast:") for f in audit.failures)


def test_property_suite():
    results = property_suite(seed=7, samples=60)
    assert all(r.ok for r in results.values()), [r.first_failure for r in results.values()]
    assert results['norm_multiplicativity'].total == 64 + 60


def test_commutativity_counterexample():
    results = property_suite(seed=7, samples=5, properties=[COMMUTATIVITY])
    assert not results['commutativity'].ok
    assert results['commutativity'].failure_case == (1, 2)
    assert results['witnesses'].ok


def test_witnesses():
    assert witness_check().passed == 3


def test_reference_products():
    _, references = load_suite()
    assert len(references) == 8
    result = reference_check(references)
    assert result.ok, result.first_failure


def test_float_agreement():
    assert float_agreement(500, seed=3).ok


def test_float_agreement_catches_corruption():
    def corrupted(x, b):
        return _corrupted_first_eigenvalue(x, b)

    assert not float_agreement(20, seed=3, multiplier=corrupted).ok


def test_report_is_deterministic():
    suite = VerificationSuite(SuiteSettings(seed=99, property_samples=20))
    first = suite.run(random_pairs=40, properties=True)
    second = suite.run(random_pairs=40, properties=True)
    assert json.dumps(first.to_dict(), sort_keys=True) == json.dumps(second.to_dict(), sort_keys=True)
    assert first.to_text() == second.to_text()


def test_full_report():
    settings, references = load_suite()
    report = VerificationSuite(settings, references).run(random_pairs=30, symbolic=True, float_samples=50)
    data = report.to_dict()
    assert report.passed
    assert {'basis', 'random', 'symbolic', 'counts', 'pass'} <= set(data)
    assert data['counts']['fast'] == {'mults': 28, 'adds': 92, 'shifts': 8}
    assert data['counts']['targets']['fast'] == {'mults': 28, 'adds': 92}
    assert data['symbolic']['passed'] is True
    assert "pass: true" in report.to_text()


def test_report_without_optional_checks_is_complete():
    report = VerificationSuite(SuiteSettings()).run(random_pairs=0)
    data = report.to_dict()
    assert data['random'] == {'passed': 0, 'total': 0, 'ok': True, 'first_failure': None}
    assert data['symbolic'] == {'checked': False}
    assert data['pass'] is True


def test_sampling_failure_with_symbolic_pass_aborts(monkeypatch):
    def broken(n, seed, **kwargs):
        return CheckResult('random', 0, n, "pair 0: injected", (Fraction(0),))

    monkeypatch.setattr(verify, 'random_equivalence', broken)
    with pytest.raises(HarnessError):
        VerificationSuite(SuiteSettings()).run(random_pairs=3, symbolic=True)


@pytest.mark.slow
def test_hundred_thousand_random_pairs():
    start = time.perf_counter()
    result = random_equivalence(100000, seed=2015)
    elapsed = time.perf_counter() - start
    assert result.ok
    assert result.passed == 100000
    assert elapsed < 60, f"100000 pairs took {elapsed:.1f} s"


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
