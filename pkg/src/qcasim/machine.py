"""Step semantics for two-way and restarting realtime automata with a quantum register.

The engine runs four machine kinds over an end-marked tape: deterministic
one-counter automata, restarting realtime automata with a quantum register,
and two-way automata with a quantum register, with or without a classical
counter.  A step applies the superoperator selected by (state, symbol, counter
status), observes one outcome with its exact rational probability, then
updates the classical part.  Counters are exact integers internally but
transitions only ever see the status (zero / nonzero); the profiler is allowed
to read the true value because the space claims are about it.

Three evaluation modes share these semantics:

* ``run_trajectory`` samples one run, drawing outcomes exactly (integer
  thresholds over the common denominator, so no float ever biases a branch);
* ``enumerate_round`` exhaustively sums the branch tree of one round of a
  restarting machine into exact accept/reject/restart probabilities;
* ``sample_trajectories`` draws many runs; for restarting machines it first
  compiles the round into its exact leaf distribution, which is the same law
  with far fewer draws.
"""

from __future__ import annotations

import random
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from math import lcm
from typing import Callable, Iterable, Mapping, Sequence

from .exact import Rat, RVec, ZERO, norm_sq, primitive_direction
from .superop import Superoperator, initialize, validate

LEFT_MARKER = "¢"
RIGHT_MARKER = "$"

MOVE_LEFT = "L"
MOVE_STAY = "S"
MOVE_RIGHT = "R"
_MOVE_DELTA = {MOVE_LEFT: -1, MOVE_STAY: 0, MOVE_RIGHT: 1}

THETA_ZERO = "0"
THETA_NONZERO = "±"

DETERMINISTIC_COUNTER = "deterministic-counter"
RESTARTING_REALTIME = "restarting-realtime-qcfa"
TWO_WAY_QCFA = "two-way-qcfa"
TWO_WAY_QCCA = "two-way-qcca"
KINDS = (DETERMINISTIC_COUNTER, RESTARTING_REALTIME, TWO_WAY_QCFA, TWO_WAY_QCCA)

VERDICT_ACCEPT = "accept"
VERDICT_REJECT = "reject"
VERDICT_RUNNING = "running"

DET_OUTCOME = "go"

DEFAULT_STEP_BUDGET = 10_000_000


class InputError(ValueError):
    """The input string uses symbols outside the machine's alphabet."""


class SpecificationError(RuntimeError):
    """The machine definition is inconsistent with the run (missing transition,
    head leaving the tape, counter decrement at zero, non-finite round tree)."""


class NonHaltingError(ArithmeticError):
    """A restart analysis was requested for a machine that never halts."""


@dataclass(frozen=True)
class ClassicalAction:
    """Classical response to one outcome: new state, head move, counter update.

    ``restart=True`` resets the machine to its initial configuration instead
    (the designated restart of restarting realtime machines).  Moves on
    halting or restarting actions are never executed.
    """

    next_state: str | None
    move: str = MOVE_STAY
    counter_delta: int = 0
    restart: bool = False


@dataclass
class MachineSpec:
    """A complete machine: states, register basis, and the two transition tables.

    ``delta_q`` maps (state, symbol, status) to a superoperator and
    ``delta_c`` maps (state, symbol, status, outcome label) to a classical
    action; the status component is ``None`` for counterless kinds.  Specs are
    treated as immutable once built and are safe to share between threads.
    """

    name: str
    kind: str
    alphabet: tuple[str, ...]
    states: tuple[str, ...]
    initial_state: str
    accept_state: str
    reject_state: str
    quantum_basis: tuple[str, ...]
    initial_basis: int
    delta_q: Mapping[tuple[str, str, str | None], Superoperator]
    delta_c: Mapping[tuple[str, str, str | None, str], ClassicalAction]

    @property
    def uses_counter(self) -> bool:
        return self.kind in (DETERMINISTIC_COUNTER, TWO_WAY_QCCA)

    @property
    def uses_quantum(self) -> bool:
        return self.kind != DETERMINISTIC_COUNTER

    @property
    def quantum_dim(self) -> int:
        return len(self.quantum_basis)


class Tape:
    """The end-marked tape for one input, 1-indexed from the left marker.

    Inputs can be given as literal strings or as run-length pairs, so exact
    analyses of inputs like a^1000000 never materialize a megabyte of tape.
    """

    __slots__ = ("runs", "length", "_bounds", "_literal")

    def __init__(self, runs: Sequence[tuple[str, int]]):
        self.runs = tuple((s, int(c)) for s, c in runs if c > 0)
        total = sum(c for _, c in self.runs)
        self.length = total + 2
        bounds = []
        acc = 1
        for _, c in self.runs:
            acc += c
            bounds.append(acc)
        self._bounds = bounds
        self._literal = None
        if total <= 4096:
            self._literal = LEFT_MARKER + "".join(s * c for s, c in self.runs) + RIGHT_MARKER

    @classmethod
    def from_string(cls, w: str) -> "Tape":
        runs: list[tuple[str, int]] = []
        for ch in w:
            if runs and runs[-1][0] == ch:
                runs[-1] = (ch, runs[-1][1] + 1)
            else:
                runs.append((ch, 1))
        return cls(runs)

    @property
    def word_length(self) -> int:
        return self.length - 2

    def symbol_at(self, pos: int) -> str:
        if self._literal is not None:
            return self._literal[pos - 1]
        if pos == 1:
            return LEFT_MARKER
        if pos == self.length:
            return RIGHT_MARKER
        return self.runs[bisect_left(self._bounds, pos)][0]

    def symbols(self) -> Iterable[str]:
        yield LEFT_MARKER
        for s, c in self.runs:
            for _ in range(c):
                yield s
        yield RIGHT_MARKER


@dataclass(frozen=True)
class Configuration:
    """(classical state, head position, counter value, register vector)."""

    state: str
    head: int
    counter: int
    quantum: RVec | None

    def status(self) -> str:
        return THETA_ZERO if self.counter == 0 else THETA_NONZERO


@dataclass(frozen=True)
class StepResult:
    config: Configuration
    verdict: str | None
    outcome: str
    restarted: bool


@dataclass(frozen=True)
class TrajectoryStats:
    verdict: str
    steps: int
    rounds: int
    max_counter: int
    rng_seed: int | None = None


@dataclass(frozen=True)
class RoundAnalysis:
    """Exact per-round probabilities plus the derived overall behavior.

    The overall fields come from the geometric restart series: conditioned on
    ever halting, acceptance has probability p_accept / (p_accept + p_reject),
    and the number of rounds is geometric with mean 1 / (p_accept + p_reject).
    They are None for a machine that never halts on the input.
    """

    p_accept: Rat
    p_reject: Rat
    p_restart: Rat
    overall_accept: Rat | None
    overall_reject: Rat | None
    expected_rounds: Rat | None

    @classmethod
    def from_round(cls, p_accept: Rat, p_reject: Rat) -> "RoundAnalysis":
        p_halt = p_accept + p_reject
        p_restart = 1 - p_halt
        if p_halt == 0:
            return cls(p_accept, p_reject, p_restart, None, None, None)
        return cls(
            p_accept,
            p_reject,
            p_restart,
            p_accept / p_halt,
            p_reject / p_halt,
            1 / p_halt,
        )


@dataclass(frozen=True)
class SampleSummary:
    """Aggregate over many sampled trajectories of one machine on one input."""

    count: int
    accepts: int
    rejects: int
    running: int
    total_rounds: int
    total_steps: int
    max_counter: int
    seed: int | None

    @property
    def mean_rounds(self) -> float:
        return self.total_rounds / self.count if self.count else 0.0


def make_tape(w: str | Tape | Sequence[tuple[str, int]]) -> Tape:
    if isinstance(w, Tape):
        return w
    if isinstance(w, str):
        return Tape.from_string(w)
    return Tape(w)


def init(spec: MachineSpec, w: str | Tape | Sequence[tuple[str, int]]) -> Configuration:
    """Initial configuration: initial state, head on the left marker, counter zero."""
    tape = make_tape(w)
    for s, _ in tape.runs:
        if s in (LEFT_MARKER, RIGHT_MARKER):
            raise InputError(f"input may not contain the end-marker {s!r}")
        if s not in spec.alphabet:
            raise InputError(f"symbol {s!r} is not in the machine alphabet {spec.alphabet}")
    quantum = initialize(spec.initial_basis, spec.quantum_dim).vector if spec.uses_quantum else None
    return Configuration(spec.initial_state, 1, 0, quantum)


def _theta_key(spec: MachineSpec, cfg: Configuration) -> str | None:
    return cfg.status() if spec.uses_counter else None


def outcome_weights(
    spec: MachineSpec, tape: Tape, cfg: Configuration
) -> list[tuple[str, RVec | None, Rat]]:
    """Branches available from cfg: (outcome label, child register vector, weight).

    Weights are the squared norms of the unconditional child vectors; for the
    deterministic kind there is a single unit-weight branch labeled "go".
    """
    symbol = tape.symbol_at(cfg.head)
    theta = _theta_key(spec, cfg)
    if not spec.uses_quantum:
        return [(DET_OUTCOME, None, Rat(1))]
    op = spec.delta_q.get((cfg.state, symbol, theta))
    if op is None:
        raise SpecificationError(
            f"no superoperator for state {cfg.state!r} reading {symbol!r} (status {theta!r})"
        )
    assert cfg.quantum is not None
    out = []
    for label, matrix in op.elements:
        vec = tuple(sum(row[j] * cfg.quantum[j] for j in range(len(cfg.quantum))) for row in matrix)
        out.append((label, vec, norm_sq(vec)))
    return out


def _classical_action(spec: MachineSpec, cfg: Configuration, symbol: str, label: str) -> ClassicalAction:
    theta = _theta_key(spec, cfg)
    action = spec.delta_c.get((cfg.state, symbol, theta, label))
    if action is None:
        raise SpecificationError(
            f"no classical transition for state {cfg.state!r} reading {symbol!r} "
            f"(status {theta!r}) on outcome {label!r}"
        )
    return action


def _apply_action(
    spec: MachineSpec,
    tape: Tape,
    cfg: Configuration,
    action: ClassicalAction,
    vec: RVec | None,
    label: str,
    rescale: bool,
) -> StepResult:
    if action.restart:
        return StepResult(init(spec, tape), None, label, True)
    if action.next_state == spec.accept_state:
        return StepResult(cfg, VERDICT_ACCEPT, label, False)
    if action.next_state == spec.reject_state:
        return StepResult(cfg, VERDICT_REJECT, label, False)
    head = cfg.head + _MOVE_DELTA[action.move]
    if not 1 <= head <= tape.length:
        raise SpecificationError(f"head moved off the tape at position {cfg.head}")
    counter = cfg.counter + action.counter_delta
    if counter < 0:
        raise SpecificationError("counter decremented below zero")
    if vec is not None and rescale:
        vec = tuple(Rat(x) for x in primitive_direction(vec))
    return StepResult(Configuration(action.next_state, head, counter, vec), None, label, False)


def draw_index(rng: random.Random, weights: Sequence[Rat]) -> int:
    """Draw an index proportionally to exact rational weights, without bias.

    The weights are brought over a common denominator and a uniform integer
    below their sum decides the branch, so the draw is exact at any precision.
    """
    total = sum(weights)
    if total <= 0:
        raise SpecificationError("cannot sample: all branch weights vanish")
    denom = lcm(*(w.denominator for w in weights))
    ints = [w.numerator * (denom // w.denominator) for w in weights]
    total_int = sum(ints)
    t = _rand_below(rng, total_int)
    acc = 0
    for i, w in enumerate(ints):
        acc += w
        if t < acc:
            return i
    raise AssertionError("unreachable")


def _rand_below(rng: random.Random, n: int) -> int:
    if n & (n - 1) == 0:
        return rng.getrandbits(n.bit_length() - 1) if n > 1 else 0
    return rng.randrange(n)


def step(
    spec: MachineSpec,
    tape: Tape,
    cfg: Configuration,
    rng: random.Random | None = None,
    *,
    forced_outcome: str | None = None,
    rescale: bool = False,
) -> StepResult:
    """One step: apply the superoperator, observe an outcome, update classically.

    Outcomes are sampled exactly from the branch weights unless
    ``forced_outcome`` picks a label (used by schedule profiling and by tests
    that follow a designated branch).  ``rescale=True`` keeps the register as
    a primitive direction vector, which leaves every future branch ratio
    unchanged while stopping the entries from growing with the step count;
    sampled trajectories use it, exact analyses must not.
    """
    symbol = tape.symbol_at(cfg.head)
    branches = outcome_weights(spec, tape, cfg)
    if forced_outcome is not None:
        chosen = None
        for label, vec, weight in branches:
            if label == forced_outcome and (chosen is None or weight > 0):
                chosen = (label, vec, weight)
                if weight > 0:
                    break
        if chosen is None:
            raise SpecificationError(f"outcome {forced_outcome!r} is not available here")
        label, vec, _ = chosen
    elif len(branches) == 1:
        label, vec, _ = branches[0]
    else:
        if rng is None:
            raise SpecificationError("a random source is required to sample outcomes")
        idx = draw_index(rng, [w for _, _, w in branches])
        label, vec, _ = branches[idx]
    action = _classical_action(spec, cfg, symbol, label)
    return _apply_action(spec, tape, cfg, action, vec, label, rescale)


def _compile_branches(
    spec: MachineSpec, state: str, symbol: str, theta: str | None, direction: tuple[int, ...] | None
):
    """Resolved branch table for one (state, symbol, status, register direction).

    Returns (cumulative integer thresholds, total, branch list); each branch
    is (child direction, classical action, verdict-or-None).  Branch odds only
    depend on the register's direction, so this is reusable across all visits.
    """
    if not spec.uses_quantum:
        action = spec.delta_c.get((state, symbol, theta, DET_OUTCOME))
        if action is None:
            raise SpecificationError(
                f"no classical transition for state {state!r} reading {symbol!r} (status {theta!r})"
            )
        return None, 1, [(None, action, _verdict_of(spec, action), DET_OUTCOME)]
    op = spec.delta_q.get((state, symbol, theta))
    if op is None:
        raise SpecificationError(
            f"no superoperator for state {state!r} reading {symbol!r} (status {theta!r})"
        )
    assert direction is not None
    weights: list[Rat] = []
    branches = []
    for label, matrix in op.elements:
        vec = tuple(sum(row[j] * direction[j] for j in range(len(direction))) for row in matrix)
        weight = norm_sq(vec)
        if weight == 0:
            continue
        action = spec.delta_c.get((state, symbol, theta, label))
        if action is None:
            raise SpecificationError(
                f"no classical transition for state {state!r} reading {symbol!r} "
                f"(status {theta!r}) on outcome {label!r}"
            )
        weights.append(weight)
        branches.append((primitive_direction(vec), action, _verdict_of(spec, action), label))
    if not branches:
        raise SpecificationError("cannot sample: all branch weights vanish")
    denom = lcm(*(w.denominator for w in weights))
    cumulative = []
    acc = 0
    for w_ in weights:
        acc += w_.numerator * (denom // w_.denominator)
        cumulative.append(acc)
    return cumulative, acc, branches


def _verdict_of(spec: MachineSpec, action: ClassicalAction) -> str | None:
    if action.restart:
        return None
    if action.next_state == spec.accept_state:
        return VERDICT_ACCEPT
    if action.next_state == spec.reject_state:
        return VERDICT_REJECT
    return None


def run_trajectory(
    spec: MachineSpec,
    w: str | Tape | Sequence[tuple[str, int]],
    rng: random.Random | int | None = None,
    step_budget: int = DEFAULT_STEP_BUDGET,
    trace: Callable[[int, str, int, int, str], None] | None = None,
) -> TrajectoryStats:
    """Sample one full run; verdict "running" if the step budget runs out.

    The register is carried as a primitive direction vector, which is sound
    for trajectory statistics because verdicts, restarts and the counter never
    depend on the lost overall scale; it also makes configurations recur, so
    per-configuration branch tables are computed once and cached.
    """
    if step_budget <= 0:
        raise ValueError("step_budget must be positive")
    seed = None
    if rng is None or isinstance(rng, int):
        seed = rng if isinstance(rng, int) else random.SystemRandom().getrandbits(48)
        rng = random.Random(seed)
    tape = make_tape(w)
    start = init(spec, tape)
    init_direction = (
        tuple(int(x) for x in primitive_direction(start.quantum)) if start.quantum is not None else None
    )
    state, head, counter, direction = start.state, start.head, start.counter, init_direction
    steps = 0
    rounds = 1
    max_counter = 0
    cache: dict[tuple, tuple] = {}
    uses_counter = spec.uses_counter
    while steps < step_budget:
        symbol = tape.symbol_at(head)
        theta = (THETA_ZERO if counter == 0 else THETA_NONZERO) if uses_counter else None
        key = (state, symbol, theta, direction)
        entry = cache.get(key)
        if entry is None:
            entry = _compile_branches(spec, state, symbol, theta, direction)
            cache[key] = entry
        cumulative, total, branches = entry
        if len(branches) == 1:
            child_dir, action, verdict, label = branches[0]
        else:
            t = _rand_below(rng, total)
            idx = bisect_right(cumulative, t)
            child_dir, action, verdict, label = branches[idx]
        steps += 1
        if trace is not None:
            trace(steps, state, head, counter, label)
        if verdict is not None:
            return TrajectoryStats(verdict, steps, rounds, max_counter, seed)
        if action.restart:
            rounds += 1
            state, head, counter, direction = start.state, start.head, start.counter, init_direction
            continue
        head += _MOVE_DELTA[action.move]
        if not 1 <= head <= tape.length:
            raise SpecificationError(f"head moved off the tape at position {head}")
        counter += action.counter_delta
        if counter < 0:
            raise SpecificationError("counter decremented below zero")
        if counter > max_counter:
            max_counter = counter
        state = action.next_state
        direction = child_dir if spec.uses_quantum else None
    return TrajectoryStats(VERDICT_RUNNING, steps, rounds, max_counter, seed)


def enumerate_round_leaves(
    spec: MachineSpec, w: str | Tape | Sequence[tuple[str, int]]
) -> list[tuple[Rat, str, int]]:
    """All leaves of one round's branch tree as (probability, kind, steps).

    Kinds are "accept", "reject" and "restart"; probabilities are exact and
    sum to one.  Only restarting realtime machines have a finite round tree
    (the head advances every step), which is enforced with a depth cap.
    """
    if spec.kind != RESTARTING_REALTIME:
        raise SpecificationError("round enumeration needs a restarting realtime machine")
    tape = make_tape(w)
    start = init(spec, tape)
    depth_cap = tape.length + 1
    leaves: list[tuple[Rat, str, int]] = []
    # Unconditional vectors are never rescaled here, so the squared norm of a
    # child vector is the exact joint probability of its branch.
    stack: list[tuple[Configuration, int]] = [(start, 0)]
    while stack:
        cfg, depth = stack.pop()
        if depth > depth_cap:
            raise SpecificationError("round branch tree exceeds the realtime depth bound")
        symbol = tape.symbol_at(cfg.head)
        for label, vec, weight in outcome_weights(spec, tape, cfg):
            if weight == 0:
                continue
            action = _classical_action(spec, cfg, symbol, label)
            result = _apply_action(spec, tape, cfg, action, vec, label, rescale=False)
            if result.restarted:
                leaves.append((weight, "restart", depth + 1))
            elif result.verdict == VERDICT_ACCEPT:
                leaves.append((weight, "accept", depth + 1))
            elif result.verdict == VERDICT_REJECT:
                leaves.append((weight, "reject", depth + 1))
            else:
                stack.append((result.config, depth + 1))
    total = sum(p for p, _, _ in leaves)
    if total != 1:
        raise SpecificationError(f"round probabilities sum to {total}, not 1")
    return leaves


def enumerate_segment(
    spec: MachineSpec,
    w: str | Tape | Sequence[tuple[str, int]],
    start: Configuration,
    cut: Callable[[Configuration], object | None],
    depth_cap: int = 200_000,
) -> dict[object, Rat]:
    """Exact exhaustive exploration from ``start`` until each branch hits a cut.

    ``cut`` maps a configuration to a hashable key (branch parked there, its
    probability added under the key) or None (keep expanding); halting leaves
    are keyed ("accept",) and ("reject",).  The start configuration itself is
    always expanded, so a segment may legitimately begin at a cut point.
    Register vectors stay unconditional, making each leaf's squared norm its
    exact joint probability; a segment that starts at a register-reset step is
    therefore exactly one recurrence unit of the machine's loop structure.
    """
    tape = make_tape(w)
    masses: dict[object, Rat] = {}
    stack: list[tuple[Configuration, int]] = [(start, 0)]
    while stack:
        cfg, depth = stack.pop()
        if depth > depth_cap:
            raise SpecificationError("segment exploration exceeded its depth cap")
        if depth > 0:
            key = cut(cfg)
            if key is not None:
                mass = norm_sq(cfg.quantum) if cfg.quantum is not None else Rat(1)
                masses[key] = masses.get(key, ZERO) + mass
                continue
        symbol = tape.symbol_at(cfg.head)
        for label, vec, weight in outcome_weights(spec, tape, cfg):
            if weight == 0 and spec.uses_quantum:
                continue
            action = _classical_action(spec, cfg, symbol, label)
            result = _apply_action(spec, tape, cfg, action, vec, label, rescale=False)
            if result.restarted:
                masses[("restart",)] = masses.get(("restart",), ZERO) + weight
            elif result.verdict is not None:
                key = (result.verdict,)
                masses[key] = masses.get(key, ZERO) + weight
            else:
                stack.append((result.config, depth + 1))
    return masses


def enumerate_round(spec: MachineSpec, w: str | Tape | Sequence[tuple[str, int]]) -> RoundAnalysis:
    """Exact (p_accept, p_reject, p_restart) of one round plus overall behavior."""
    leaves = enumerate_round_leaves(spec, w)
    p_accept = sum((p for p, kind, _ in leaves if kind == "accept"), ZERO)
    p_reject = sum((p for p, kind, _ in leaves if kind == "reject"), ZERO)
    return RoundAnalysis.from_round(p_accept, p_reject)


def sample_trajectories(
    spec: MachineSpec,
    w: str | Tape | Sequence[tuple[str, int]],
    count: int,
    seed: int = 0,
    step_budget: int = DEFAULT_STEP_BUDGET,
) -> SampleSummary:
    """Sample many trajectories and aggregate their statistics.

    For restarting realtime machines the round is compiled once into its exact
    leaf distribution and each round becomes a single exact draw; the law of
    (verdict, rounds, steps) is identical to stepping, only faster.
    """
    rng = random.Random(seed)
    tape = make_tape(w)
    if spec.kind == RESTARTING_REALTIME:
        return _sample_compiled(spec, tape, count, rng, seed, step_budget)
    accepts = rejects = running = 0
    total_rounds = total_steps = 0
    max_counter = 0
    for _ in range(count):
        stats = run_trajectory(spec, tape, rng, step_budget)
        accepts += stats.verdict == VERDICT_ACCEPT
        rejects += stats.verdict == VERDICT_REJECT
        running += stats.verdict == VERDICT_RUNNING
        total_rounds += stats.rounds
        total_steps += stats.steps
        max_counter = max(max_counter, stats.max_counter)
    return SampleSummary(count, accepts, rejects, running, total_rounds, total_steps, max_counter, seed)


def _sample_compiled(
    spec: MachineSpec,
    tape: Tape,
    count: int,
    rng: random.Random,
    seed: int | None,
    step_budget: int,
) -> SampleSummary:
    leaves = enumerate_round_leaves(spec, tape)
    denom = lcm(*(p.denominator for p, _, _ in leaves))
    cumulative: list[int] = []
    kinds: list[str] = []
    steps_of: list[int] = []
    acc = 0
    for p, kind, steps in leaves:
        acc += p.numerator * (denom // p.denominator)
        cumulative.append(acc)
        kinds.append(kind)
        steps_of.append(steps)
    assert acc == denom
    pow2 = denom & (denom - 1) == 0
    bits = denom.bit_length() - 1
    getrandbits = rng.getrandbits
    randrange = rng.randrange
    accepts = rejects = running = 0
    total_rounds = total_steps = 0
    for _ in range(count):
        steps = 0
        rounds = 0
        while True:
            rounds += 1
            t = getrandbits(bits) if pow2 else randrange(denom)
            i = bisect_right(cumulative, t)
            if steps + steps_of[i] > step_budget:
                steps = step_budget
                running += 1
                break
            steps += steps_of[i]
            kind = kinds[i]
            if kind == "restart":
                continue
            if kind == "accept":
                accepts += 1
            else:
                rejects += 1
            break
        total_rounds += rounds
        total_steps += steps
    return SampleSummary(count, accepts, rejects, running, total_rounds, total_steps, 0, seed)


ScheduleResolver = Callable[[Configuration, str, Sequence[str]], str]


def profile_space(
    spec: MachineSpec,
    w: str | Tape | Sequence[tuple[str, int]],
    mode: str = "exact-schedule",
    rng: random.Random | int | None = None,
    schedule: ScheduleResolver | None = None,
    step_budget: int = DEFAULT_STEP_BUDGET,
) -> int:
    """Maximum counter value attained, by schedule or by one sampled trajectory.

    "exact-schedule" walks the deterministic outcome choreography supplied by
    the machine's builder (counter evolution does not depend on which branch
    fired, so one designated path exhibits the true maximum); "sampled" runs
    one random trajectory.
    """
    if not spec.uses_counter:
        raise SpecificationError("space profiling needs a machine with a counter")
    if mode == "sampled":
        return run_trajectory(spec, w, rng, step_budget).max_counter
    if mode != "exact-schedule":
        raise ValueError(f"unknown profiling mode {mode!r}")
    if schedule is None:
        raise ValueError("exact-schedule profiling needs a schedule resolver")
    tape = make_tape(w)
    cfg = init(spec, tape)
    max_counter = 0
    for _ in range(step_budget):
        symbol = tape.symbol_at(cfg.head)
        labels = [label for label, _, _ in outcome_weights(spec, tape, cfg)]
        label = schedule(cfg, symbol, labels)
        result = step(spec, tape, cfg, forced_outcome=label)
        cfg = result.config
        if cfg.counter > max_counter:
            max_counter = cfg.counter
        if result.verdict is not None:
            return max_counter
    raise SpecificationError("schedule did not halt within the step budget")


@dataclass(frozen=True)
class SpecValidation:
    ok: bool
    problems: tuple[str, ...]
    operator_reports: tuple[tuple[str, str], ...]


def validate_spec(spec: MachineSpec) -> SpecValidation:
    """Static checks: operator completeness, transition totality, boundary safety.

    Boundary safety is the static half of the runtime guarantee that the head
    never leaves the end-marked tape: no left move on the left marker and no
    right move on the right marker, restarts and halts excepted.  Restarting
    realtime machines must additionally move right on every surviving step.
    """
    problems: list[str] = []
    reports: list[tuple[str, str]] = []
    if spec.kind not in KINDS:
        problems.append(f"unknown machine kind {spec.kind!r}")
    if spec.accept_state == spec.reject_state:
        problems.append("accept and reject states must differ")
    for s in (spec.initial_state, spec.accept_state, spec.reject_state):
        if s not in spec.states:
            problems.append(f"distinguished state {s!r} missing from state list")
    for s in (LEFT_MARKER, RIGHT_MARKER):
        if s in spec.alphabet:
            problems.append(f"alphabet may not contain the end-marker {s!r}")
    if spec.uses_quantum:
        if spec.quantum_dim < 1:
            problems.append("quantum kinds need a nonempty register basis")
        elif not 0 <= spec.initial_basis < spec.quantum_dim:
            problems.append("initial register state out of range")
        for key in sorted(spec.delta_q):
            op = spec.delta_q[key]
            if op.dim != spec.quantum_dim:
                problems.append(f"operator at {key} has dimension {op.dim}, register has {spec.quantum_dim}")
            report = validate(op)
            reports.append(("|".join(k for k in key if k is not None), str(report)))
            if not report.ok:
                problems.append(f"operator at {key}: {report}")
            for label in op.labels:
                if (*key, label) not in spec.delta_c:
                    problems.append(f"no classical transition at {key} for outcome {label!r}")
    for key, action in spec.delta_c.items():
        state, symbol, _, _ = key
        if action.restart:
            continue
        if action.next_state not in spec.states:
            problems.append(f"transition at {key} targets unknown state {action.next_state!r}")
            continue
        if action.next_state in (spec.accept_state, spec.reject_state):
            continue
        if symbol == LEFT_MARKER and action.move == MOVE_LEFT:
            problems.append(f"transition at {key} moves left off the left marker")
        if symbol == RIGHT_MARKER and action.move == MOVE_RIGHT:
            problems.append(f"transition at {key} moves right off the right marker")
        if spec.kind == RESTARTING_REALTIME and action.move != MOVE_RIGHT:
            problems.append(f"restarting realtime machine must move right at {key}")
    return SpecValidation(not problems, tuple(problems), tuple(reports))
