"""
Fast split-octonion product: 28 multiplications, 92 additions, 8 shifts.

The schedule is data, not code. A ProgramBuilder records named steps into
slot-indexed programs:

- prepare program: b0..b7 -> 28 coefficients (24 additions, 8 shifts by 2^-3)
- x program: x0..x7 -> pre-additions (24), one multiplication per prepared
  coefficient (28), post-additions (44) -> y0..y7

run_program() interprets the steps over any scalar type; schedule_unrolled
generates straight-line Python from the very same steps.
"""

from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, List, Sequence, Tuple, Union

from octonion import DIMENSION, OctonionError, SplitOctonion
from scalars import OpCounts, scale_pow2

MULTIPLICATIONS = 28
PREP_SHIFT = -3


class ScheduleError(OctonionError):
    """Raised for structurally invalid schedules."""


@dataclass(frozen=True)
class AddStep:
    dst: int
    lhs: int
    rhs: int
    subtract: bool = False


@dataclass(frozen=True)
class ShiftStep:
    dst: int
    src: int
    exponent: int


@dataclass(frozen=True)
class MulStep:
    dst: int
    src: int
    coeff: int


Step = Union[AddStep, ShiftStep, MulStep]


class ProgramBuilder:
    """Records steps against named slots; seeds occupy the first slots."""

    def __init__(self, seeds: Sequence[str]):
        self.names: List[str] = list(seeds)
        self.slot: Dict[str, int] = {name: i for i, name in enumerate(seeds)}
        self.steps: List[Step] = []

    def _new(self, name: str) -> int:
        if name in self.slot:
            raise ScheduleError(f"slot {name!r} assigned twice")
        self.slot[name] = len(self.names)
        self.names.append(name)
        return self.slot[name]

    def add(self, name: str, lhs: str, rhs: str):
        self.steps.append(AddStep(self._new(name), self.slot[lhs], self.slot[rhs]))

    def sub(self, name: str, lhs: str, rhs: str):
        self.steps.append(AddStep(self._new(name), self.slot[lhs], self.slot[rhs], subtract=True))

    def shift(self, name: str, src: str, exponent: int):
        self.steps.append(ShiftStep(self._new(name), self.slot[src], exponent))

    def mul(self, name: str, src: str, coeff: int):
        self.steps.append(MulStep(self._new(name), self.slot[src], coeff))

    def mark(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class PrepProgram:
    slot_names: Tuple[str, ...]
    steps: Tuple[Step, ...]
    outputs: Tuple[int, ...]


@dataclass(frozen=True)
class MulSchedule:
    """Both programs of the fast product plus the slot layout of the x side."""
    prep: PrepProgram
    slot_names: Tuple[str, ...]
    pre_x: Tuple[Step, ...]
    mul_steps: Tuple[MulStep, ...]
    post: Tuple[Step, ...]
    outputs: Tuple[int, ...]

    def __post_init__(self):
        if len(self.prep.outputs) != MULTIPLICATIONS or len(self.mul_steps) != MULTIPLICATIONS:
            raise ScheduleError(
                f"schedule needs {MULTIPLICATIONS} prepared coefficients and multiplications, "
                f"got {len(self.prep.outputs)} and {len(self.mul_steps)}")
        if len(self.outputs) != DIMENSION:
            raise ScheduleError(f"schedule must produce {DIMENSION} outputs")
        for step in self.prep.steps + self.pre_x + self.post:
            if isinstance(step, MulStep):
                raise ScheduleError("multiplications are only allowed in the multiplication stage")
        for step in self.mul_steps:
            if not isinstance(step, MulStep):
                raise ScheduleError("the multiplication stage holds only multiplications")
            if not 0 <= step.coeff < MULTIPLICATIONS:
                raise ScheduleError(f"multiplication references coefficient {step.coeff}")
        _check_defined(len(self.prep.slot_names), DIMENSION, self.prep.steps, self.prep.outputs)
        _check_defined(len(self.slot_names), DIMENSION,
                       self.pre_x + self.mul_steps + self.post, self.outputs)

    @property
    def steps(self) -> Tuple[Step, ...]:
        return self.pre_x + self.mul_steps + self.post

    def with_step_dropped(self, index: int) -> "MulSchedule":
        """
        Copy whose x-side step `index` no longer adds its right operand.

        The step becomes a copy of its left operand so every later slot
        stays defined; the result is a deliberately wrong product.
        """
        steps = list(self.steps)
        step = steps[index]
        if not isinstance(step, AddStep):
            raise ScheduleError(f"step {index} is not an addition")
        steps[index] = ShiftStep(step.dst, step.lhs, 0)
        n_pre, n_mul = len(self.pre_x), len(self.mul_steps)
        return replace(self, pre_x=tuple(steps[:n_pre]),
                       post=tuple(steps[n_pre + n_mul:]))


def _check_defined(n_slots: int, n_seeds: int, steps: Sequence[Step], outputs: Sequence[int]):
    defined = set(range(n_seeds))
    for step in steps:
        reads = (step.lhs, step.rhs) if isinstance(step, AddStep) else (step.src,)
        for slot in reads:
            if slot not in defined:
                raise ScheduleError(f"slot {slot} read before it is written")
        if not 0 <= step.dst < n_slots or step.dst in defined:
            raise ScheduleError(f"slot {step.dst} written twice or out of range")
        defined.add(step.dst)
    missing = [slot for slot in outputs if slot not in defined]
    if missing:
        raise ScheduleError(f"output slots never written: {missing}")


def _eigenvalues(p: ProgramBuilder, tag: str, first: int, alpha: str, beta: str, gamma: str, delta: str):
    """Eigenvalues of the symmetric Toeplitz block built from alpha..delta, into c{first}..c{first+3}."""
    p.add(f"{tag}0", alpha, gamma)
    p.add(f"{tag}1", beta, delta)
    p.sub(f"{tag}2", alpha, gamma)
    p.sub(f"{tag}3", beta, delta)
    p.add(f"c{first}", f"{tag}0", f"{tag}1")
    p.sub(f"c{first + 1}", f"{tag}0", f"{tag}1")
    p.add(f"c{first + 2}", f"{tag}2", f"{tag}3")
    p.sub(f"c{first + 3}", f"{tag}2", f"{tag}3")


# Prepared coefficient order; MulStep.coeff indexes into this tuple.
COEFF_NAMES = (
    "k0", "k1", "k2", "k3", "b4", "b1", "b2", "b3",
    "k4", "k5", "k6", "k7", "b4", "b1", "b2", "b3",
    "s2", "s3", "s1", "s3", "s1", "s2",
    "d2", "d3", "d1", "d3", "d1", "d2",
)


def _build_prep() -> PrepProgram:
    p = ProgramBuilder([f"b{i}" for i in range(DIMENSION)])
    for i in range(4):
        p.add(f"s{i}", f"b{i}", f"b{i + 4}")
        p.sub(f"d{i}", f"b{i}", f"b{i + 4}")
    _eigenvalues(p, "ea", 0, "d0", "s1", "s2", "s3")
    _eigenvalues(p, "fa", 4, "s0", "d1", "d2", "d3")
    for k in range(8):
        p.shift(f"k{k}", f"c{k}", PREP_SHIFT)
    return PrepProgram(tuple(p.names), tuple(p.steps), tuple(p.slot[name] for name in COEFF_NAMES))


def _walsh(p: ProgramBuilder, out: str, mid: str, src: Sequence[str]):
    """out = H4 @ src through an intermediate stage named mid (8 additions)."""
    p.add(f"{mid}0", src[0], src[2])
    p.add(f"{mid}1", src[1], src[3])
    p.sub(f"{mid}2", src[0], src[2])
    p.sub(f"{mid}3", src[1], src[3])
    p.add(f"{out}0", f"{mid}0", f"{mid}1")
    p.sub(f"{out}1", f"{mid}0", f"{mid}1")
    p.add(f"{out}2", f"{mid}2", f"{mid}3")
    p.sub(f"{out}3", f"{mid}2", f"{mid}3")


def _walsh_post(p: ProgramBuilder, out: str, mid: str, src: Sequence[str]):
    """Inverse-order Walsh transform used after the multiplications (8 additions)."""
    p.add(f"{mid}0", src[0], src[1])
    p.sub(f"{mid}1", src[0], src[1])
    p.add(f"{mid}2", src[2], src[3])
    p.sub(f"{mid}3", src[2], src[3])
    p.add(f"{out}0", f"{mid}0", f"{mid}2")
    p.add(f"{out}1", f"{mid}1", f"{mid}3")
    p.sub(f"{out}2", f"{mid}0", f"{mid}2")
    p.sub(f"{out}3", f"{mid}1", f"{mid}3")


# (output, eigen-branch index, sum-branch coupling product, difference-branch coupling product, its sign)
_COUPLED_ROWS = (
    ("y1", 1, "ks1", "kd1", -1),
    ("y2", 2, "ks2", "kd2", -1),
    ("y3", 3, "ks3", "kd3", -1),
    ("y5", 1, "ks5", "kd5", 1),
    ("y6", 2, "ks6", "kd6", 1),
    ("y7", 3, "ks7", "kd7", 1),
)

# (product name, x-side slot, coefficient index)
_PRODUCTS = (
    [(f"m{k}", f"q{k}", k) for k in range(4)]
    + [("tu4", "u0", 4), ("tu1", "u1", 5), ("tu2", "u2", 6), ("tu3", "u3", 7)]
    + [(f"n{k}", f"v{k}", 8 + k) for k in range(4)]
    + [("tw4", "w0", 12), ("tw1", "w1", 13), ("tw2", "w2", 14), ("tw3", "w3", 15)]
    + [("ks1", "u3", 16), ("ks2", "u1", 17), ("ks3", "u2", 18),
       ("ks5", "u2", 19), ("ks6", "u3", 20), ("ks7", "u1", 21)]
    + [("kd1", "w3", 22), ("kd2", "w1", 23), ("kd3", "w2", 24),
       ("kd5", "w2", 25), ("kd6", "w3", 26), ("kd7", "w1", 27)]
)


def build_schedule() -> MulSchedule:
    prep = _build_prep()
    p = ProgramBuilder([f"x{i}" for i in range(DIMENSION)])

    for i in range(4):
        p.add(f"u{i}", f"x{i}", f"x{i + 4}")
        p.sub(f"w{i}", f"x{i}", f"x{i + 4}")
    _walsh(p, "q", "p", ["u0", "u1", "u2", "u3"])
    _walsh(p, "v", "r", ["w0", "w1", "w2", "w3"])
    pre_end = p.mark()

    for name, src, coeff in _PRODUCTS:
        p.mul(name, src, coeff)
    mul_end = p.mark()

    _walsh_post(p, "e", "g", ["m0", "m1", "m2", "m3"])
    _walsh_post(p, "f", "h", ["n0", "n1", "n2", "n3"])

    # Real and e4 parts carry the rank-one first-row corrections.
    p.add("sig_a", "e0", "tu4")
    p.sub("sig_b", "sig_a", "tu1")
    p.sub("sig_c", "sig_b", "tu2")
    p.sub("sig", "sig_c", "tu3")
    p.sub("del_a", "f0", "tw4")
    p.sub("del_b", "del_a", "tw1")
    p.sub("del_c", "del_b", "tw2")
    p.sub("del", "del_c", "tw3")
    p.add("y0", "sig", "del")
    p.sub("y4", "sig", "del")

    for out, branch, ks, kd, kd_sign in _COUPLED_ROWS:
        if kd_sign < 0:
            p.add(f"{out}_a", f"e{branch}", f"f{branch}")
            p.sub(f"{out}_b", f"{out}_a", ks)
            p.sub(out, f"{out}_b", kd)
        else:
            p.sub(f"{out}_a", f"e{branch}", f"f{branch}")
            p.sub(f"{out}_b", f"{out}_a", ks)
            p.add(out, f"{out}_b", kd)

    steps = tuple(p.steps)
    return MulSchedule(
        prep=prep,
        slot_names=tuple(p.names),
        pre_x=steps[:pre_end],
        mul_steps=steps[pre_end:mul_end],
        post=steps[mul_end:],
        outputs=tuple(p.slot[f"y{i}"] for i in range(DIMENSION)),
    )


SCHEDULE = build_schedule()


def schedule_as_data() -> MulSchedule:
    return SCHEDULE


@dataclass(frozen=True)
class PreparedMultiplier:
    """The 28 coefficients derived from a right operand b, reusable for any x."""
    coeffs: Tuple[Any, ...]
    prep_counts: OpCounts = field(default_factory=OpCounts)

    def __post_init__(self):
        if len(self.coeffs) != MULTIPLICATIONS:
            raise ScheduleError(f"prepared multiplier needs {MULTIPLICATIONS} coefficients")

    def map_coeffs(self, fn: Callable[[Any], Any]) -> "PreparedMultiplier":
        return replace(self, coeffs=tuple(fn(c) for c in self.coeffs))


def run_program(tape: List[Any], steps: Sequence[Step], coeffs: Sequence[Any] = ()) -> List[Any]:
    """Execute steps in place on tape (a list indexed by slot)."""
    for step in steps:
        if isinstance(step, AddStep):
            if step.subtract:
                tape[step.dst] = tape[step.lhs] - tape[step.rhs]
            else:
                tape[step.dst] = tape[step.lhs] + tape[step.rhs]
        elif isinstance(step, ShiftStep):
            tape[step.dst] = scale_pow2(tape[step.src], step.exponent) if step.exponent else tape[step.src]
        else:
            tape[step.dst] = tape[step.src] * coeffs[step.coeff]
    return tape


def _seed_tape(n_slots: int, seeds: Sequence[Any]) -> List[Any]:
    tape: List[Any] = [None] * n_slots
    tape[:len(seeds)] = list(seeds)
    return tape


def prepare(b: SplitOctonion, schedule: MulSchedule = SCHEDULE) -> PreparedMultiplier:
    prog = schedule.prep
    tape = run_program(_seed_tape(len(prog.slot_names), b.coeffs), prog.steps)
    return PreparedMultiplier(tuple(tape[i] for i in prog.outputs), structural_counts(schedule)['prepare'])


def apply(prepared: PreparedMultiplier, x: SplitOctonion, schedule: MulSchedule = SCHEDULE) -> SplitOctonion:
    tape = run_program(_seed_tape(len(schedule.slot_names), x.coeffs), schedule.steps, prepared.coeffs)
    return SplitOctonion(tuple(tape[i] for i in schedule.outputs))


def fast_mul(x: SplitOctonion, b: SplitOctonion, schedule: MulSchedule = SCHEDULE) -> SplitOctonion:
    return apply(prepare(b, schedule), x, schedule)


def _count(steps: Sequence[Step]) -> OpCounts:
    adds = sum(isinstance(s, AddStep) for s in steps)
    shifts = sum(isinstance(s, ShiftStep) and s.exponent != 0 for s in steps)
    mults = sum(isinstance(s, MulStep) for s in steps)
    return OpCounts(mults, adds, shifts)


def structural_counts(schedule: MulSchedule = SCHEDULE) -> Dict[str, OpCounts]:
    """Operation counts read off the schedule data, without executing it."""
    prepare_counts = _count(schedule.prep.steps)
    apply_counts = _count(schedule.steps)
    return {'prepare': prepare_counts, 'apply': apply_counts, 'total': prepare_counts + apply_counts}


def hygiene_violations(schedule: MulSchedule = SCHEDULE) -> List[str]:
    """Structural problems that would make the operation counts misleading."""
    problems = []
    for stage, steps in (("prepare", schedule.prep.steps), ("x-side", schedule.steps)):
        for index, step in enumerate(steps):
            if isinstance(step, AddStep) and step.lhs == step.rhs:
                problems.append(f"{stage} step {index} combines a slot with itself")
            if isinstance(step, ShiftStep) and step.exponent == 0:
                problems.append(f"{stage} step {index} is a bare copy")
    used = sorted(step.coeff for step in schedule.mul_steps)
    if used != list(range(MULTIPLICATIONS)):
        problems.append("multiplications do not use each prepared coefficient exactly once")
    return problems


def _describe(step: Step, names: Sequence[str], coeff_names: Sequence[str]) -> str:
    dst = names[step.dst]
    if isinstance(step, AddStep):
        op = "-" if step.subtract else "+"
        return f"{dst} = {names[step.lhs]} {op} {names[step.rhs]}"
    if isinstance(step, ShiftStep):
        if step.exponent == 0:
            return f"{dst} = {names[step.src]}"
        return f"{dst} = {names[step.src]} * 2^{step.exponent}"
    return f"{dst} = {names[step.src]} * [{coeff_names[step.coeff]}]"


def render_schedule(schedule: MulSchedule = SCHEDULE) -> str:
    """Human-readable listing of every step, grouped by stage."""
    sections = [
        ("b-side preparation", schedule.prep.steps, schedule.prep.slot_names),
        ("x-side pre-additions", schedule.pre_x, schedule.slot_names),
        ("multiplications", schedule.mul_steps, schedule.slot_names),
        ("post-additions", schedule.post, schedule.slot_names),
    ]
    lines = []
    for title, steps, names in sections:
        lines.append(f"# {title} ({len(steps)} steps)")
        lines.extend(f"  {_describe(step, names, COEFF_NAMES)}" for step in steps)
    counts = structural_counts(schedule)
    lines.append(f"# prepare: {counts['prepare']}")
    lines.append(f"# apply:   {counts['apply']}")
    lines.append(f"# total:   {counts['total']}")
    return "\n".join(lines)
