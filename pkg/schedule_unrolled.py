"""
Straight-line Python generated from the fast-product schedule.

The interpreter in schedule.py dispatches on step types for every product;
for benchmarking and large random sweeps the same steps are emitted as two
flat functions and compiled once.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, List, Sequence, Tuple

from octonion import DIMENSION, SplitOctonion
from scalars import scale_pow2
from schedule import (
    SCHEDULE, AddStep, MulSchedule, PreparedMultiplier, ShiftStep, Step, structural_counts,
)


def _emit(step: Step, names: Sequence[str]) -> str:
    comment = f"  # {names[step.dst]}"
    if isinstance(step, AddStep):
        op = "-" if step.subtract else "+"
        return f"    t{step.dst} = t{step.lhs} {op} t{step.rhs}{comment}"
    if isinstance(step, ShiftStep):
        if step.exponent == 0:
            return f"    t{step.dst} = t{step.src}{comment}"
        return f"    t{step.dst} = scale_pow2(t{step.src}, {step.exponent}){comment}"
    return f"    t{step.dst} = t{step.src} * k[{step.coeff}]{comment}"


def _unpack(count: int, source: str) -> str:
    return "    " + ", ".join(f"t{i}" for i in range(count)) + f" = {source}"


def _pack(slots: Sequence[int]) -> str:
    return "    return (" + ", ".join(f"t{i}" for i in slots) + ",)"


def generate_source(schedule: MulSchedule = SCHEDULE) -> str:
    """Python source defining prepare_coeffs(b) and apply_coeffs(k, x)."""
    prep = schedule.prep
    lines: List[str] = ["def prepare_coeffs(b):", _unpack(DIMENSION, "b")]
    lines.extend(_emit(step, prep.slot_names) for step in prep.steps)
    lines.append(_pack(prep.outputs))
    lines.append("")
    lines.append("")
    lines.extend(["def apply_coeffs(k, x):", _unpack(DIMENSION, "x")])
    lines.extend(_emit(step, schedule.slot_names) for step in schedule.steps)
    lines.append(_pack(schedule.outputs))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class UnrolledKernel:
    source: str
    prepare_coeffs: Callable[[Sequence[Any]], Tuple[Any, ...]]
    apply_coeffs: Callable[[Sequence[Any], Sequence[Any]], Tuple[Any, ...]]
    schedule: MulSchedule

    def prepare(self, b: SplitOctonion) -> PreparedMultiplier:
        return PreparedMultiplier(self.prepare_coeffs(b.coeffs), structural_counts(self.schedule)['prepare'])

    def apply(self, prepared: PreparedMultiplier, x: SplitOctonion) -> SplitOctonion:
        return SplitOctonion(self.apply_coeffs(prepared.coeffs, x.coeffs))

    def fast_mul(self, x: SplitOctonion, b: SplitOctonion) -> SplitOctonion:
        return SplitOctonion(self.apply_coeffs(self.prepare_coeffs(b.coeffs), x.coeffs))


def compile_schedule(schedule: MulSchedule = SCHEDULE) -> UnrolledKernel:
    source = generate_source(schedule)
    namespace = {"scale_pow2": scale_pow2}
    exec(compile(source, "<split-octonion kernel>", "exec"), namespace)
    return UnrolledKernel(source, namespace["prepare_coeffs"], namespace["apply_coeffs"], schedule)


@lru_cache(maxsize=None)
def default_kernel() -> UnrolledKernel:
    return compile_schedule(SCHEDULE)


def unrolled_fast_mul(x: SplitOctonion, b: SplitOctonion) -> SplitOctonion:
    return default_kernel().fast_mul(x, b)
