"""
Benchmark script to compare the schoolbook and fast products over doubles.

Timings are wall-clock and machine dependent; they carry no correctness claim.
Each path folds its outputs into a checksum so the work cannot be skipped.
"""

import math
import random
import statistics
import time
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

from octonion import DIMENSION, SplitOctonion, direct_mul
from schedule_unrolled import default_kernel

Pair = Tuple[SplitOctonion, SplitOctonion]


@dataclass
class BenchRow:
    name: str
    ns_per_op: float
    checksum: float
    runs: int


def make_operands(count: int, seed: int = 2015, magnitude: float = 1000.0) -> List[Pair]:
    rng = random.Random(seed)

    def one() -> SplitOctonion:
        return SplitOctonion(tuple(rng.uniform(-magnitude, magnitude) for _ in range(DIMENSION)))

    return [(one(), one()) for _ in range(count)]


def time_path(step: Callable[[int], SplitOctonion], iters: int, runs: int, warmup: int) -> Tuple[float, float]:
    """Median ns per call of step(k) for k in range(iters), and the checksum of one run."""
    for k in range(min(warmup, iters)):
        step(k)

    samples = []
    checksum = 0.0
    for _ in range(runs):
        total = 0.0
        start = time.perf_counter_ns()
        for k in range(iters):
            total += sum(step(k).coeffs)
        elapsed = time.perf_counter_ns() - start
        samples.append(elapsed / iters)
        checksum = total
    return statistics.median(samples), checksum


def run_benchmark(iters: int, runs: int = 5, warmup: int = 2000,
                  reuse_prepared: bool = False, seed: int = 2015) -> List[BenchRow]:
    if iters < 1:
        raise ValueError(f"iteration count must be positive: {iters}")
    operands = make_operands(iters, seed)
    kernel = default_kernel()

    paths: List[Tuple[str, Callable[[int], SplitOctonion]]] = [
        ('direct', lambda k: direct_mul(*operands[k])),
        ('fast', lambda k: kernel.fast_mul(*operands[k])),
    ]
    if reuse_prepared:
        # Preparation happens outside the timed region.
        prepared = [kernel.prepare(b) for _, b in operands]
        paths.append(('fast (prepared, apply only)', lambda k: kernel.apply(prepared[k], operands[k][0])))

    rows = []
    for name, step in paths:
        ns, checksum = time_path(step, iters, runs, warmup)
        rows.append(BenchRow(name, ns, checksum, runs))
    return rows


def checksums_agree(rows: Sequence[BenchRow], rel_tol: float = 1e-9) -> bool:
    reference = rows[0].checksum
    return all(math.isclose(row.checksum, reference, rel_tol=rel_tol, abs_tol=rel_tol) for row in rows)


def print_benchmark(rows: Sequence[BenchRow], iters: int):
    print("\n" + "=" * 70)
    print("SPLIT-OCTONION PRODUCT BENCHMARK (doubles, informational)")
    print("=" * 70)
    print(f"Products per run: {iters:,}   Runs: {rows[0].runs} (median reported)")
    print(f"\n{'Path':<32} {'ns/op':>12} {'vs direct':>10} {'checksum':>16}")
    print("-" * 70)
    base = rows[0].ns_per_op
    for row in rows:
        ratio = row.ns_per_op / base if base else float('nan')
        print(f"{row.name:<32} {row.ns_per_op:>12,.1f} {ratio:>9.2f}x {row.checksum:>16.6e}")
    print("-" * 70)
    status = "[PASS]" if checksums_agree(rows) else "[FAIL]"
    print(f"{status} checksums agree within 1e-9 relative")
    print("=" * 70)


def main():
    rows = run_benchmark(20000, reuse_prepared=True)
    print_benchmark(rows, 20000)


if __name__ == "__main__":
    main()
