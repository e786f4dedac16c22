"""
Split-Octonion Verification Harness
Checks the fast product against the schoolbook product exhaustively, on seeded
random rationals, symbolically, and by operation counts.
"""

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from blocks import all_block_checks
from config import ReferenceProduct, SuiteSettings
from octonion import (
    CAYLEY_TABLE, DIMENSION, CayleyTable, OctonionError, SplitOctonion,
    conjugate, direct_mul, equal, matrix_mul, quadratic_form, table_mul,
)
from scalars import FLOAT, POLYNOMIAL, RATIONAL, OpCounts, Polynomial16, ScalarRing, random_rational, with_counting
from schedule import PREP_SHIFT, SCHEDULE, MulSchedule, apply, fast_mul, hygiene_violations, prepare, structural_counts
from schedule_unrolled import default_kernel, unrolled_fast_mul

Multiplier = Callable[[SplitOctonion, SplitOctonion], SplitOctonion]

DIRECT_TARGET = OpCounts(64, 56, 0)
FAST_TARGET_MULTS = 28
FAST_TARGET_ADDS = 92


class HarnessError(OctonionError):
    """A sampling check failed although the symbolic identity holds."""


def product_paths() -> Dict[str, Multiplier]:
    """The four independent ways of computing x * b."""
    return {
        'direct': direct_mul,
        'table': table_mul,
        'matrix': matrix_mul,
        'fast': fast_mul,
    }


@dataclass
class CheckResult:
    """Outcome of one checker: pass count, total, and the first failure if any."""
    name: str
    passed: int
    total: int
    first_failure: Optional[str] = None
    failure_case: Optional[Tuple[Any, ...]] = None

    @property
    def ok(self) -> bool:
        return self.first_failure is None and self.passed == self.total

    def to_dict(self) -> Dict[str, Any]:
        return {
            'passed': self.passed,
            'total': self.total,
            'ok': self.ok,
            'first_failure': self.first_failure,
        }

    def __str__(self) -> str:
        return f"{self.passed}/{self.total}"


def _record(result: CheckResult, message: str, case: Tuple[Any, ...]):
    if result.first_failure is None:
        result.first_failure = message
        result.failure_case = case


def random_octonion(rng: random.Random,
                    numerator_range: Tuple[int, int] = (-99, 99),
                    denominator_range: Tuple[int, int] = (1, 99)) -> SplitOctonion:
    return SplitOctonion(tuple(random_rational(rng, numerator_range, denominator_range)
                               for _ in range(DIMENSION)))


def exhaustive_basis_check(table: CayleyTable = CAYLEY_TABLE,
                           paths: Optional[Dict[str, Multiplier]] = None,
                           ring: ScalarRing = RATIONAL) -> CheckResult:
    """All 64 e_i * e_j through every product path against the table, compared in ring."""
    paths = paths if paths is not None else product_paths()
    result = CheckResult('basis', 0, DIMENSION * DIMENSION)
    for i in range(DIMENSION):
        for j in range(DIMENSION):
            expected = table.basis_product(i, j, ring)
            ei, ej = SplitOctonion.basis(i, ring), SplitOctonion.basis(j, ring)
            agreed = True
            for name, multiply in paths.items():
                got = multiply(ei, ej)
                if not equal(got, expected, ring):
                    agreed = False
                    _record(result, f"({i},{j}) via {name}: expected {expected}, got {got}", (i, j))
            if agreed:
                result.passed += 1
    return result


def _integral(x: SplitOctonion, factor: int = 1) -> Tuple[SplitOctonion, int]:
    coeffs = [Fraction(c) for c in x.coeffs]
    scale = math.lcm(*(c.denominator for c in coeffs)) * factor
    return SplitOctonion(tuple(c.numerator * (scale // c.denominator) for c in coeffs)), scale


def clear_denominators(x: SplitOctonion, b: SplitOctonion) -> Tuple[SplitOctonion, SplitOctonion, int]:
    """
    Rescale a rational pair to integer coefficients: returns (X, B, scale)
    with X * B == scale * (x * b).

    B also absorbs the 2^3 of the eigenvalue shift, so the fast product runs
    on plain ints end to end.
    """
    big_x, sx = _integral(x)
    big_b, sb = _integral(b, 1 << -PREP_SHIFT)
    return big_x, big_b, sx * sb


def random_equivalence(n: int, seed: int,
                       multiplier: Multiplier = unrolled_fast_mul,
                       reference: Multiplier = direct_mul,
                       forced_pairs: Sequence[Tuple[SplitOctonion, SplitOctonion]] = (),
                       numerator_range: Tuple[int, int] = (-99, 99),
                       denominator_range: Tuple[int, int] = (1, 99)) -> CheckResult:
    """
    n seeded random rational pairs (forced pairs first); exact equality required.

    Both products are bilinear, so each pair is compared after
    clear_denominators; equality there is equality on the rational pair.
    """
    if n < 0:
        raise ValueError(f"pair count must be non-negative: {n}")
    rng = random.Random(seed)
    result = CheckResult('random', 0, n)
    for k in range(n):
        if k < len(forced_pairs):
            x, b = forced_pairs[k]
        else:
            x = random_octonion(rng, numerator_range, denominator_range)
            b = random_octonion(rng, numerator_range, denominator_range)
        big_x, big_b, scale = clear_denominators(x, b)
        expected, got = reference(big_x, big_b), multiplier(big_x, big_b)
        if got == expected:
            result.passed += 1
        else:
            _record(result, f"pair {k}: x={x} b={b}: expected {expected}, got {got} (scaled by {scale})", (x, b))
    return result


@dataclass
class SymbolicResult:
    """Outcome of replaying the schedule over polynomial indeterminates."""
    outputs_match: bool
    toeplitz: bool
    two_by_two: bool
    block_identity: bool
    failing_output: Optional[int] = None
    difference: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.outputs_match and self.toeplitz and self.two_by_two and self.block_identity

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> Dict[str, Any]:
        return {
            'checked': True,
            'passed': self.passed,
            'outputs_match': self.outputs_match,
            'toeplitz': self.toeplitz,
            'two_by_two': self.two_by_two,
            'block_identity': self.block_identity,
            'failing_output': self.failing_output,
            'difference': self.difference,
        }


def symbolic_operands() -> Tuple[SplitOctonion, SplitOctonion]:
    return SplitOctonion(Polynomial16.variables('x')), SplitOctonion(Polynomial16.variables('b'))


def symbolic_check(schedule: MulSchedule = SCHEDULE) -> SymbolicResult:
    """Schedule output vs the schoolbook polynomials, plus the block factorizations."""
    x, b = symbolic_operands()
    expected = direct_mul(x, b)
    got = apply(prepare(b, schedule), x, schedule)
    failing, difference = None, None
    for index in range(DIMENSION):
        if not POLYNOMIAL.equal(got[index], expected[index]):
            failing = index
            difference = str((got[index] - expected[index]).as_expr())
            break

    checks = all_block_checks(b)
    return SymbolicResult(
        outputs_match=failing is None,
        toeplitz=checks['toeplitz4'],
        two_by_two=checks['two_by_two'],
        block_identity=checks['block_identity'] and checks['rank_one'] and checks['sub_blocks'],
        failing_output=failing,
        difference=difference,
    )


@dataclass
class CountAudit:
    """Measured operation counts against the published targets."""
    direct: OpCounts
    matrix: OpCounts
    fast: OpCounts
    unrolled: OpCounts
    prepare: OpCounts
    apply: OpCounts
    structural: Dict[str, OpCounts]
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def savings(self) -> int:
        return self.direct.mults - self.fast.mults

    def to_dict(self) -> Dict[str, Any]:
        return {
            'direct': self.direct.as_dict(),
            'matrix': self.matrix.as_dict(),
            'fast': self.fast.as_dict(),
            'unrolled': self.unrolled.as_dict(),
            'prepare': self.prepare.as_dict(),
            'apply': self.apply.as_dict(),
            'structural': {k: v.as_dict() for k, v in self.structural.items()},
            'targets': {
                'direct': {'mults': DIRECT_TARGET.mults, 'adds': DIRECT_TARGET.adds},
                'fast': {'mults': FAST_TARGET_MULTS, 'adds': FAST_TARGET_ADDS},
            },
            'savings': self.savings,
            'conserved': self.direct.arithmetic == self.fast.arithmetic,
            'ok': self.ok,
            'failures': list(self.failures),
        }


def count_audit(seed: int = 2015, schedule: MulSchedule = SCHEDULE) -> CountAudit:
    """Count one direct and one fast product with the counting scalar."""
    rng = random.Random(seed)
    x, b = random_octonion(rng), random_octonion(rng)

    _, direct = with_counting(direct_mul, x, b)
    _, matrix = with_counting(matrix_mul, x, b)
    _, fast = with_counting(lambda p, q: fast_mul(p, q, schedule), x, b)
    _, unrolled = with_counting(default_kernel().fast_mul, x, b)
    prepared, prep = with_counting(lambda q: prepare(q, schedule), b)
    _, applied = with_counting(lambda pp, p: apply(pp, p, schedule), prepared, x)
    structural = structural_counts(schedule)

    audit = CountAudit(direct, matrix, fast, unrolled, prep, applied, structural)
    if (direct.mults, direct.adds) != (DIRECT_TARGET.mults, DIRECT_TARGET.adds):
        audit.failures.append(f"direct: measured {direct}, target 64 mults, 56 adds")
    if (matrix.mults, matrix.adds) != (DIRECT_TARGET.mults, DIRECT_TARGET.adds):
        audit.failures.append(f"matrix: measured {matrix}, target 64 mults, 56 adds")
    if (fast.mults, fast.adds) != (FAST_TARGET_MULTS, FAST_TARGET_ADDS):
        audit.failures.append(f"fast: measured {fast}, target {FAST_TARGET_MULTS} mults, {FAST_TARGET_ADDS} adds")
    if unrolled != fast:
        audit.failures.append(f"unrolled kernel counts {unrolled} differ from interpreter {fast}")
    if structural['total'] != fast:
        audit.failures.append(f"schedule data says {structural['total']}, measured {fast}")
    if prep.mults != 0:
        audit.failures.append(f"preparation spent {prep.mults} multiplications")
    if prep + applied != fast:
        audit.failures.append(f"prepare {prep} + apply {applied} != full product {fast}")
    if direct.arithmetic != fast.arithmetic:
        audit.failures.append(f"total work not conserved: {direct.arithmetic} vs {fast.arithmetic}")
    audit.failures.extend(f"hygiene: {problem}" for problem in hygiene_violations(schedule))
    return audit


@dataclass(frozen=True)
class AlgebraProperty:
    """A law checked on (x, y, z, alpha) samples."""
    name: str
    holds: Callable[[SplitOctonion, SplitOctonion, SplitOctonion, Any], bool]


def _mul(x, y):
    return direct_mul(x, y)


DEFAULT_PROPERTIES = (
    AlgebraProperty('norm_multiplicativity',
                    lambda x, y, z, a: quadratic_form(_mul(x, y)) == quadratic_form(x) * quadratic_form(y)),
    AlgebraProperty('left_linearity',
                    lambda x, y, z, a: _mul(a * x + z, y) == a * _mul(x, y) + _mul(z, y)),
    AlgebraProperty('right_linearity',
                    lambda x, y, z, a: _mul(x, a * y + z) == a * _mul(x, y) + _mul(x, z)),
    AlgebraProperty('left_alternative',
                    lambda x, y, z, a: _mul(_mul(x, x), y) == _mul(x, _mul(x, y))),
    AlgebraProperty('right_alternative',
                    lambda x, y, z, a: _mul(_mul(y, x), x) == _mul(y, _mul(x, x))),
    AlgebraProperty('conjugation_antiautomorphism',
                    lambda x, y, z, a: conjugate(_mul(x, y)) == _mul(conjugate(y), conjugate(x))),
)

# Deliberately false; used to show the property runner reports counterexamples.
COMMUTATIVITY = AlgebraProperty('commutativity', lambda x, y, z, a: _mul(x, y) == _mul(y, x))


def _property_cases(seed: int, samples: int,
                    numerator_range: Tuple[int, int], denominator_range: Tuple[int, int]):
    for i in range(DIMENSION):
        for j in range(DIMENSION):
            yield ((i, j), SplitOctonion.basis(i), SplitOctonion.basis(j),
                   SplitOctonion.basis((i + j) % DIMENSION), Fraction(2))
    rng = random.Random(seed)
    for k in range(samples):
        x = random_octonion(rng, numerator_range, denominator_range)
        y = random_octonion(rng, numerator_range, denominator_range)
        z = random_octonion(rng, numerator_range, denominator_range)
        yield ('sample', k), x, y, z, random_rational(rng, numerator_range, denominator_range)


def witness_check() -> CheckResult:
    """Zero divisor, non-commutativity and non-associativity witnesses."""
    one, e1, e2, e4 = (SplitOctonion.basis(i) for i in (0, 1, 2, 4))
    left, right = one + e4, one - e4
    e3 = SplitOctonion.basis(3)
    witnesses = [
        ('zero_divisor', not left.is_zero() and not right.is_zero() and _mul(left, right).is_zero()),
        ('non_commutative', _mul(e1, e2) == e3 and _mul(e2, e1) == -e3),
        ('non_associative', any(_mul(_mul(a, b), c) != _mul(a, _mul(b, c))
                                for a in map(SplitOctonion.basis, range(1, DIMENSION))
                                for b in map(SplitOctonion.basis, range(1, DIMENSION))
                                for c in map(SplitOctonion.basis, range(1, DIMENSION)))),
    ]
    result = CheckResult('witnesses', 0, len(witnesses))
    for name, holds in witnesses:
        if holds:
            result.passed += 1
        else:
            _record(result, f"{name} witness does not hold", (name,))
    return result


def property_suite(seed: int, samples: int = 1000,
                   properties: Sequence[AlgebraProperty] = DEFAULT_PROPERTIES,
                   numerator_range: Tuple[int, int] = (-99, 99),
                   denominator_range: Tuple[int, int] = (1, 99)) -> Dict[str, CheckResult]:
    """Each law on the 64 basis pairs, then on `samples` random rational tuples."""
    results = {p.name: CheckResult(p.name, 0, DIMENSION * DIMENSION + samples) for p in properties}
    for case, x, y, z, alpha in _property_cases(seed, samples, numerator_range, denominator_range):
        for prop in properties:
            if prop.holds(x, y, z, alpha):
                results[prop.name].passed += 1
            else:
                _record(results[prop.name], f"{prop.name}: x={x}, y={y}", case)
    results['witnesses'] = witness_check()
    return results


def reference_check(products: Sequence[ReferenceProduct],
                    paths: Optional[Dict[str, Multiplier]] = None) -> CheckResult:
    """Named reference products through every product path."""
    paths = paths if paths is not None else product_paths()
    result = CheckResult('references', 0, len(products))
    for product in products:
        failures = [name for name, multiply in paths.items()
                    if not equal(multiply(product.x, product.b), product.expected)]
        if failures:
            _record(result, f"{product.id} ({product.name}) wrong via {', '.join(failures)}", (product.id,))
        else:
            result.passed += 1
    return result


def relative_error(got: SplitOctonion, expected: SplitOctonion, x: SplitOctonion, b: SplitOctonion) -> float:
    """Largest coefficient error relative to the operand scale max|x| * max|b|."""
    scale = max(abs(c) for c in x) * max(abs(c) for c in b)
    error = max(abs(g - e) for g, e in zip(got, expected))
    return error / scale if scale else error


def float_agreement(n: int, seed: int, magnitude: float = 1000.0, rel_tol: float = 1e-12,
                    multiplier: Multiplier = unrolled_fast_mul) -> CheckResult:
    """
    Fast vs direct over doubles on n random operands with |coefficient| <= magnitude.

    The 64 basis pairs go through the fast path over doubles first; a
    mismatch there is recorded as the first failure.
    """
    rng = random.Random(seed)
    result = CheckResult('float', 0, n)
    basis = exhaustive_basis_check(paths={'fast': multiplier}, ring=FLOAT)
    if not basis.ok:
        _record(result, f"basis over doubles: {basis.first_failure}", basis.failure_case)
    for k in range(n):
        x = SplitOctonion(tuple(rng.uniform(-magnitude, magnitude) for _ in range(DIMENSION)))
        b = SplitOctonion(tuple(rng.uniform(-magnitude, magnitude) for _ in range(DIMENSION)))
        err = relative_error(multiplier(x, b), direct_mul(x, b), x, b)
        if math.isfinite(err) and err <= rel_tol:
            result.passed += 1
        else:
            _record(result, f"sample {k}: relative error {err:.3e} > {rel_tol:.0e}", (x, b))
    return result


@dataclass
class VerificationReport:
    """Everything one verification run measured; no timestamps so equal seeds give equal reports."""
    seed: int
    basis: CheckResult
    random: CheckResult
    symbolic: Optional[SymbolicResult]
    counts: CountAudit
    properties: Optional[Dict[str, CheckResult]] = None
    references: Optional[CheckResult] = None
    float_agreement: Optional[CheckResult] = None

    @property
    def passed(self) -> bool:
        checks = [self.basis.ok, self.random.ok, self.counts.ok]
        if self.symbolic is not None:
            checks.append(self.symbolic.passed)
        if self.properties is not None:
            checks.extend(r.ok for r in self.properties.values())
        if self.references is not None:
            checks.append(self.references.ok)
        if self.float_agreement is not None:
            checks.append(self.float_agreement.ok)
        return all(checks)

    def failures(self) -> List[str]:
        found = []
        for result in (self.basis, self.random, self.references, self.float_agreement):
            if result is not None and result.first_failure:
                found.append(f"{result.name}: {result.first_failure}")
        if self.symbolic is not None and not self.symbolic.passed:
            if self.symbolic.failing_output is not None:
                found.append(f"symbolic: y{self.symbolic.failing_output} differs by {self.symbolic.difference}")
            else:
                found.append("symbolic: block factorization identity failed")
        if self.properties is not None:
            found.extend(r.first_failure for r in self.properties.values() if r.first_failure)
        found.extend(f"counts: {f}" for f in self.counts.failures)
        return found

    def to_dict(self) -> Dict[str, Any]:
        def optional(result):
            return result.to_dict() if result is not None else {'checked': False}

        return {
            'seed': self.seed,
            'basis': self.basis.to_dict(),
            'random': self.random.to_dict(),
            'symbolic': optional(self.symbolic),
            'counts': self.counts.to_dict(),
            'properties': ({name: r.to_dict() for name, r in self.properties.items()}
                           if self.properties is not None else {'checked': False}),
            'references': optional(self.references),
            'float': optional(self.float_agreement),
            'failures': self.failures(),
            'pass': self.passed,
        }

    def to_text(self) -> str:
        c = self.counts
        lines = [
            f"seed: {self.seed}",
            f"basis: {self.basis}",
            f"random: {self.random}",
            f"symbolic: {'skipped' if self.symbolic is None else str(self.symbolic.passed).lower()}",
            f"counts.direct: {c.direct}",
            f"counts.fast: {c.fast}",
            f"counts.prepare: {c.prepare}",
            f"counts.apply: {c.apply}",
            f"counts.targets: direct 64 mults/56 adds, fast {FAST_TARGET_MULTS} mults/{FAST_TARGET_ADDS} adds",
            f"counts.savings: {c.savings} multiplications",
            f"counts.total_work: {c.direct.arithmetic} direct, {c.fast.arithmetic} fast",
        ]
        if self.properties is not None:
            lines.extend(f"property.{name}: {r}" for name, r in self.properties.items())
        if self.references is not None:
            lines.append(f"references: {self.references}")
        if self.float_agreement is not None:
            lines.append(f"float: {self.float_agreement}")
        lines.extend(f"failure: {f}" for f in self.failures())
        lines.append(f"pass: {str(self.passed).lower()}")
        return "\n".join(lines)


class VerificationSuite:
    """Runs the checkers with one set of settings and assembles the report."""

    def __init__(self, settings: Optional[SuiteSettings] = None,
                 references: Sequence[ReferenceProduct] = ()):
        self.settings = settings or SuiteSettings()
        self.references = list(references)

    def run(self, random_pairs: Optional[int] = None, symbolic: bool = False,
            properties: bool = False, float_samples: int = 0) -> VerificationReport:
        s = self.settings
        pairs = s.random_pairs if random_pairs is None else random_pairs

        basis = exhaustive_basis_check()
        randomized = random_equivalence(pairs, s.seed,
                                        numerator_range=s.numerator_range,
                                        denominator_range=s.denominator_range)
        symbolic_result = symbolic_check() if symbolic else None
        if symbolic_result is not None and symbolic_result.passed and not randomized.ok:
            raise HarnessError(f"symbolic identity holds but sampling failed: {randomized.first_failure}")

        report = VerificationReport(
            seed=s.seed,
            basis=basis,
            random=randomized,
            symbolic=symbolic_result,
            counts=count_audit(s.seed),
        )
        if properties:
            report.properties = property_suite(s.seed, s.property_samples,
                                               numerator_range=s.numerator_range,
                                               denominator_range=s.denominator_range)
        if self.references:
            report.references = reference_check(self.references)
        if float_samples:
            report.float_agreement = float_agreement(float_samples, s.seed, s.float_magnitude, s.float_rel_tol)
        return report
