"""Counter-marking recognizer for the unary language { a^(2^n) } and its relatives.

The two-way machine marks positions 1, 2, ..., m with its counter.  Holding
mark i, it feeds the inner power recognizer a virtual input a^i b^m without
ever writing a tape: walk right consuming the counter to find cell i, walk
back left feeding one 'a' per cell (which also restores the counter), then
walk right to the end feeding one 'b' per cell.  The inner recognizer is run
to its own verdict; acceptance ends the marking loop, rejection advances the
mark, and rejection at the last mark rejects the input.  After the loop a
rational coin is swept once over the input and the run accepts only if all m
tosses succeed, which happens with probability exactly (1/(2k^2+1))^m; any
failure restarts the whole marking pass.

On members the loop stops at mark log2(m), so the counter never grows past
log2 of the input length; non-members drive it linearly to m.  Rejection of a
non-member wins over the accepting coin by a factor of at least (2k^2)^m per
pass, which keeps the overall error below 1/(2k^2+1).

Register re-initialization at the start of every inner round (and of the coin
sweep) is folded into the operator applied there: a reset-then-operate
superoperator needs no extra tape step and keeps rounds independent of
whatever state an abandoned branch left behind.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .exact import RMat, RVec, Rat, four_square, rmat
from .machine import (
    ClassicalAction,
    Configuration,
    LEFT_MARKER,
    MOVE_LEFT,
    MOVE_RIGHT,
    MOVE_STAY,
    MachineSpec,
    RIGHT_MARKER,
    THETA_NONZERO,
    THETA_ZERO,
    TWO_WAY_QCCA,
    enumerate_segment,
    profile_space,
)
from .power import (
    ParameterError,
    PowerParams,
    error_bound,
    op_a,
    op_b,
    op_left_marker,
    op_right_marker,
    round_closed_form,
    solve_restart,
)
from .superop import Superoperator, identity_op, initialize, reset_then

SUCCEED = "succeed"
FAIL = "fail"

# Choreography states.  scan* run the one-time classical pre-check; home is
# the walk whose step on the left marker starts an inner round; locate/peek
# find the marked cell and learn whether it is the last one; back*/feeda* feed
# the a-block leftward while rebuilding the counter; feedb* feed the b-block
# rightward; coin* sweep the accepting coin; cashout/drain/seed reset the mark
# to 1 for the next pass.
SCAN0 = "scan0"
SCAN1 = "scan1"
SCAN2 = "scan2"
SCANBACK = "scanback"
SEED = "seed"
HOME = "home"
BOUNCE = "bounce"
LOCATE = "locate"
PEEK = "peek"
BACK_MID = "back_mid"
BACK_END = "back_end"
FEEDA_MID = "feeda_mid"
FEEDA_END = "feeda_end"
ABORT_A = "aborta"
FEEDB_MID = "feedb_mid"
FEEDB_END = "feedb_end"
COIN_FIRST = "coin_first"
COIN_MORE = "coin_more"
CASHOUT = "cashout"
DRAIN = "drain"
DRAIN0 = "drain0"
ACCEPT = "accept"
REJECT = "reject"

_ROUND_START_STATES = (HOME, ABORT_A)


class FamilyError(ValueError):
    """A language family specification is malformed for the requested scan."""


def accept_coin(params: PowerParams | int) -> Superoperator:
    """A rational Bernoulli coin: from the first basis state, success has
    probability exactly 1/(2k^2+1).

    With N = 2k^2+1, the success amplitudes are the nonzero entries of a
    four-square decomposition of N scaled by 1/N (their squares sum to 1/N),
    the failing mass on the first basis state uses a decomposition of N^2-N,
    and an identity block on the remaining basis states completes the operator.
    Chaining m tosses from a fresh register succeeds with exactly (1/N)^m.
    """
    k = params.k if isinstance(params, PowerParams) else params
    if k < 1:
        raise ParameterError("k must be a positive integer")
    n = 2 * k * k + 1
    elements: list[tuple[str, RMat]] = []
    for c in four_square(n):
        if c:
            elements.append((SUCCEED, rmat([[c, 0, 0], [0, 0, 0], [0, 0, 0]], Rat(1, n))))
    for c in four_square(n * n - n):
        if c:
            elements.append((FAIL, rmat([[c, 0, 0], [0, 0, 0], [0, 0, 0]], Rat(1, n))))
    elements.append((FAIL, rmat([[0, 0, 0], [0, 1, 0], [0, 0, 1]])))
    return Superoperator(tuple(elements))


def build_upower(params: PowerParams | int, single_a_member: bool = True) -> MachineSpec:
    """Build the two-way counter machine for { a^(2^n) : n >= 0 }.

    ``single_a_member`` selects the n >= 0 reading of the language, where the
    one-letter input is a member; the marking loop cannot certify it (no mark
    i >= 1 has 2^i = 1), so the pre-check accepts it outright.  Pass
    ``single_a_member=False`` for the n >= 1 variant.
    """
    if isinstance(params, int):
        params = PowerParams.for_k(params)
    silent = identity_op(3)
    round_op = reset_then(op_left_marker())
    feed_a = op_a()
    feed_b = op_b()
    feed_end = op_right_marker(params)
    coin = accept_coin(params)
    coin_fresh = reset_then(coin)

    Z, NZ = THETA_ZERO, THETA_NONZERO

    def act(state: str, move: str, dc: int = 0) -> ClassicalAction:
        return ClassicalAction(state, move, dc)

    halt_accept = ClassicalAction(ACCEPT, MOVE_STAY)
    halt_reject = ClassicalAction(REJECT, MOVE_STAY)

    delta_q = {
        (SCAN0, LEFT_MARKER, Z): silent,
        (SCAN1, "a", Z): silent,
        (SCAN1, RIGHT_MARKER, Z): silent,
        (SCAN2, "a", Z): silent,
        (SCAN2, RIGHT_MARKER, Z): silent,
        (SCANBACK, "a", Z): silent,
        (SCANBACK, LEFT_MARKER, Z): silent,
        (SEED, "a", NZ): silent,
        (HOME, "a", NZ): silent,
        (HOME, LEFT_MARKER, NZ): round_op,
        (BOUNCE, "a", NZ): silent,
        (LOCATE, "a", NZ): silent,
        (LOCATE, "a", Z): silent,
        (PEEK, "a", Z): silent,
        (PEEK, RIGHT_MARKER, Z): silent,
        (BACK_MID, "a", Z): feed_a,
        (BACK_END, "a", Z): feed_a,
        (FEEDA_MID, "a", NZ): feed_a,
        (FEEDA_MID, LEFT_MARKER, NZ): silent,
        (FEEDA_END, "a", NZ): feed_a,
        (FEEDA_END, LEFT_MARKER, NZ): silent,
        (ABORT_A, "a", NZ): silent,
        (ABORT_A, LEFT_MARKER, NZ): round_op,
        (FEEDB_MID, "a", NZ): feed_b,
        (FEEDB_MID, RIGHT_MARKER, NZ): feed_end,
        (FEEDB_END, "a", NZ): feed_b,
        (FEEDB_END, RIGHT_MARKER, NZ): feed_end,
        (COIN_FIRST, "a", NZ): coin_fresh,
        (COIN_MORE, "a", NZ): coin,
        (COIN_MORE, LEFT_MARKER, NZ): silent,
        (CASHOUT, "a", NZ): silent,
        (CASHOUT, LEFT_MARKER, NZ): silent,
        (DRAIN, "a", NZ): silent,
        (DRAIN, "a", Z): silent,
        (DRAIN, LEFT_MARKER, NZ): silent,
        (DRAIN, LEFT_MARKER, Z): silent,
        (DRAIN0, LEFT_MARKER, Z): silent,
    }

    delta_c = {
        # One-time pre-check: reject the empty input, settle the one-letter
        # input, otherwise plant mark 1 and start the loop.
        (SCAN0, LEFT_MARKER, Z, "go"): act(SCAN1, MOVE_RIGHT),
        (SCAN1, RIGHT_MARKER, Z, "go"): halt_reject,
        (SCAN1, "a", Z, "go"): act(SCAN2, MOVE_RIGHT),
        (SCAN2, RIGHT_MARKER, Z, "go"): halt_accept if single_a_member else act(SCANBACK, MOVE_LEFT),
        (SCAN2, "a", Z, "go"): act(SCANBACK, MOVE_LEFT),
        (SCANBACK, "a", Z, "go"): act(SCANBACK, MOVE_LEFT),
        (SCANBACK, LEFT_MARKER, Z, "go"): act(SEED, MOVE_RIGHT, +1),
        (SEED, "a", NZ, "go"): act(HOME, MOVE_LEFT),
        # Inner round start on the left marker: reset-and-feed; outcome 2
        # abandons the round, bouncing off cell 1 back to another try.
        (HOME, "a", NZ, "go"): act(HOME, MOVE_LEFT),
        (HOME, LEFT_MARKER, NZ, "1"): act(LOCATE, MOVE_RIGHT, -1),
        (HOME, LEFT_MARKER, NZ, "2"): act(BOUNCE, MOVE_RIGHT),
        (ABORT_A, LEFT_MARKER, NZ, "1"): act(LOCATE, MOVE_RIGHT, -1),
        (ABORT_A, LEFT_MARKER, NZ, "2"): act(BOUNCE, MOVE_RIGHT),
        (BOUNCE, "a", NZ, "go"): act(HOME, MOVE_LEFT),
        # Locate the marked cell by draining the counter; peek one cell right
        # to learn whether the mark is on the last input cell.
        (LOCATE, "a", NZ, "go"): act(LOCATE, MOVE_RIGHT, -1),
        (LOCATE, "a", Z, "go"): act(PEEK, MOVE_RIGHT),
        (PEEK, "a", Z, "go"): act(BACK_MID, MOVE_LEFT),
        (PEEK, RIGHT_MARKER, Z, "go"): act(BACK_END, MOVE_LEFT),
        # Feed the a-block leftward from the mark, rebuilding the counter to i
        # on every path, aborted rounds included.
        (BACK_MID, "a", Z, "1"): act(FEEDA_MID, MOVE_LEFT, +1),
        (BACK_MID, "a", Z, "2"): act(ABORT_A, MOVE_LEFT, +1),
        (BACK_END, "a", Z, "1"): act(FEEDA_END, MOVE_LEFT, +1),
        (BACK_END, "a", Z, "2"): act(ABORT_A, MOVE_LEFT, +1),
        (FEEDA_MID, "a", NZ, "1"): act(FEEDA_MID, MOVE_LEFT, +1),
        (FEEDA_MID, "a", NZ, "2"): act(ABORT_A, MOVE_LEFT, +1),
        (FEEDA_END, "a", NZ, "1"): act(FEEDA_END, MOVE_LEFT, +1),
        (FEEDA_END, "a", NZ, "2"): act(ABORT_A, MOVE_LEFT, +1),
        (ABORT_A, "a", NZ, "go"): act(ABORT_A, MOVE_LEFT, +1),
        (FEEDA_MID, LEFT_MARKER, NZ, "go"): act(FEEDB_MID, MOVE_RIGHT),
        (FEEDA_END, LEFT_MARKER, NZ, "go"): act(FEEDB_END, MOVE_RIGHT),
        # Feed the b-block rightward; the right marker carries the verdict of
        # the virtual input: accept ends the loop, reject advances the mark
        # (or rejects at the last mark), anything else retries the round.
        (FEEDB_MID, "a", NZ, "1"): act(FEEDB_MID, MOVE_RIGHT),
        (FEEDB_MID, "a", NZ, "2"): act(HOME, MOVE_LEFT),
        (FEEDB_MID, "a", NZ, "3"): act(HOME, MOVE_LEFT),
        (FEEDB_END, "a", NZ, "1"): act(FEEDB_END, MOVE_RIGHT),
        (FEEDB_END, "a", NZ, "2"): act(HOME, MOVE_LEFT),
        (FEEDB_END, "a", NZ, "3"): act(HOME, MOVE_LEFT),
        (FEEDB_MID, RIGHT_MARKER, NZ, "1"): act(COIN_FIRST, MOVE_LEFT),
        (FEEDB_MID, RIGHT_MARKER, NZ, "2"): act(HOME, MOVE_LEFT, +1),
        (FEEDB_MID, RIGHT_MARKER, NZ, "3"): act(HOME, MOVE_LEFT),
        (FEEDB_MID, RIGHT_MARKER, NZ, "4"): act(HOME, MOVE_LEFT),
        (FEEDB_END, RIGHT_MARKER, NZ, "1"): act(COIN_FIRST, MOVE_LEFT),
        (FEEDB_END, RIGHT_MARKER, NZ, "2"): halt_reject,
        (FEEDB_END, RIGHT_MARKER, NZ, "3"): act(HOME, MOVE_LEFT),
        (FEEDB_END, RIGHT_MARKER, NZ, "4"): act(HOME, MOVE_LEFT),
        # Accepting coin, swept right to left; all m successes accept, any
        # failure resets the mark to 1 and restarts the whole pass.
        (COIN_FIRST, "a", NZ, SUCCEED): act(COIN_MORE, MOVE_LEFT),
        (COIN_FIRST, "a", NZ, FAIL): act(CASHOUT, MOVE_LEFT),
        (COIN_MORE, "a", NZ, SUCCEED): act(COIN_MORE, MOVE_LEFT),
        (COIN_MORE, "a", NZ, FAIL): act(CASHOUT, MOVE_LEFT),
        (COIN_MORE, LEFT_MARKER, NZ, "go"): halt_accept,
        (CASHOUT, "a", NZ, "go"): act(CASHOUT, MOVE_LEFT),
        (CASHOUT, LEFT_MARKER, NZ, "go"): act(DRAIN, MOVE_RIGHT, -1),
        (DRAIN, "a", NZ, "go"): act(DRAIN, MOVE_LEFT, -1),
        (DRAIN, "a", Z, "go"): act(DRAIN0, MOVE_LEFT),
        (DRAIN, LEFT_MARKER, NZ, "go"): act(DRAIN, MOVE_RIGHT, -1),
        (DRAIN, LEFT_MARKER, Z, "go"): act(SEED, MOVE_RIGHT, +1),
        (DRAIN0, LEFT_MARKER, Z, "go"): act(SEED, MOVE_RIGHT, +1),
    }
    states = (
        SCAN0, SCAN1, SCAN2, SCANBACK, SEED, HOME, BOUNCE, LOCATE, PEEK,
        BACK_MID, BACK_END, FEEDA_MID, FEEDA_END, ABORT_A, FEEDB_MID, FEEDB_END,
        COIN_FIRST, COIN_MORE, CASHOUT, DRAIN, DRAIN0, ACCEPT, REJECT,
    )
    return MachineSpec(
        name=f"upower[k={params.k}]",
        kind=TWO_WAY_QCCA,
        alphabet=("a",),
        states=states,
        initial_state=SCAN0,
        accept_state=ACCEPT,
        reject_state=REJECT,
        quantum_basis=("q1", "q2", "q3"),
        initial_basis=0,
        delta_q=delta_q,
        delta_c=delta_c,
    )


def is_upower_member(m: int, single_a_member: bool = True) -> bool:
    """Is a^m in { a^(2^n) }? The n >= 0 reading admits m = 1."""
    lowest = 1 if single_a_member else 2
    return m >= lowest and m & (m - 1) == 0


@dataclass(frozen=True)
class UpowerAnalysis:
    """Exact pass-level behavior of the marking machine on a^m."""

    m: int
    k: int
    q: tuple[Rat, ...]
    coin_success: Rat
    pass_accept: Rat
    pass_reject: Rat
    pass_restart: Rat
    overall_accept: Rat
    overall_reject: Rat
    expected_passes: Rat


def inner_accept_probability(i: int, m: int, params: PowerParams | int) -> Rat:
    """Overall acceptance of the inner recognizer on the virtual input a^i b^m."""
    accept, _, _ = solve_restart(*round_closed_form(i, m, params))
    return accept


def analyze_upower(m: int, params: PowerParams | int, single_a_member: bool = True) -> UpowerAnalysis:
    """Exact pass probabilities and overall behavior by composing inner verdicts.

    Each mark i hands the inner recognizer a decision problem it answers with
    acceptance probability q_i = 1/(1 + 2k^2 (2^i - m)^2); the marking pass
    accepts if some mark is accepted and the coin then delivers all m
    successes, rejects if every mark up to m is rejected, and restarts
    otherwise.  Members hit a q_i = 1, which makes the reject path vanish and
    the overall acceptance exactly one.
    """
    if m < 1:
        raise ParameterError("analysis needs m >= 1")
    if isinstance(params, int):
        params = PowerParams.for_k(params)
    k = params.k
    if m == 1 and single_a_member:
        one, zero = Rat(1), Rat(0)
        return UpowerAnalysis(m, k, (), one, one, zero, zero, one, zero, one)
    q = tuple(inner_accept_probability(i, m, params) for i in range(1, m + 1))
    reach = Rat(1)
    loop_accept = Rat(0)
    for qi in q:
        loop_accept += reach * qi
        reach *= 1 - qi
    pass_reject = reach
    assert loop_accept + pass_reject == 1
    n = 2 * k * k + 1
    coin_success = Rat(1, n**m)
    pass_accept = loop_accept * coin_success
    pass_restart = loop_accept * (1 - coin_success)
    overall_accept, overall_reject, expected = solve_restart(pass_accept, pass_reject)
    return UpowerAnalysis(
        m, k, q, coin_success, pass_accept, pass_reject, pass_restart,
        overall_accept, overall_reject, expected,
    )


def enumerate_pass(params: PowerParams | int, m: int, single_a_member: bool = True) -> UpowerAnalysis:
    """Pass analysis recovered from the built machine by step-level enumeration.

    The branch tree of a pass is infinite (inner rounds retry geometrically),
    so it is enumerated one recurrence unit at a time: for each mark i, the
    finite tree of one inner round is summed exactly and its retry branch is
    closed off as a geometric series; the coin sweep is one more finite tree.
    This checks the head/counter choreography against the closed-form
    composition with no shared code path.
    """
    if isinstance(params, int):
        params = PowerParams.for_k(params)
    if m < 2 and single_a_member:
        raise ParameterError("pass enumeration needs the marking loop to run (m >= 2)")
    spec = build_upower(params, single_a_member)
    tape = "a" * m
    fresh = initialize_register(spec)

    def round_cut(cfg: Configuration) -> object | None:
        if cfg.state in _ROUND_START_STATES and cfg.head == 1:
            return ("round", cfg.counter)
        if cfg.state == COIN_FIRST:
            return ("coin", cfg.counter)
        return None

    q_hat: list[Rat] = []
    for i in range(1, m + 1):
        start = Configuration(HOME, 1, i, fresh)
        masses = enumerate_segment(spec, tape, start, round_cut)
        retry = masses.get(("round", i), Rat(0))
        advance = masses.get(("round", i + 1), Rat(0))
        coin = masses.get(("coin", i), Rat(0))
        reject = masses.get(("reject",), Rat(0))
        assert retry + advance + coin + reject == 1, f"mark {i}: leaves do not conserve probability"
        assert masses.get(("accept",), Rat(0)) == 0
        if i < m:
            assert reject == 0, f"mark {i}: premature rejection"
        else:
            assert advance == 0, f"mark {m}: advance past the last cell"
        q_hat.append(coin / (coin + advance + reject))

    coin_start = Configuration(COIN_FIRST, tape_cell(m), 1, fresh)
    coin_masses = enumerate_segment(spec, "a" * m, coin_start, round_cut)
    coin_accept = coin_masses.get(("accept",), Rat(0))
    coin_restart = coin_masses.get(("round", 1), Rat(0))
    assert coin_accept + coin_restart == 1

    reach = Rat(1)
    loop_accept = Rat(0)
    for qi in q_hat:
        loop_accept += reach * qi
        reach *= 1 - qi
    pass_reject = reach
    pass_accept = loop_accept * coin_accept
    pass_restart = loop_accept * coin_restart
    overall_accept, overall_reject, expected = solve_restart(pass_accept, pass_reject)
    return UpowerAnalysis(
        m, params.k, tuple(q_hat), coin_accept, pass_accept, pass_reject, pass_restart,
        overall_accept, overall_reject, expected,
    )


def initialize_register(spec: MachineSpec) -> RVec:
    return initialize(spec.initial_basis, spec.quantum_dim).vector


def tape_cell(index: int) -> int:
    """Tape position of input cell ``index`` (the left marker is position 1)."""
    return index + 1


def exact_schedule(m: int) -> Callable[[Configuration, str, Sequence[str]], str]:
    """The designated outcome choreography used for exact space profiling.

    Follows the surviving branch through every feed, answers the loop test at
    the right marker by the true comparison 2^mark = m, and lets every coin
    toss succeed, so the walk visits each mark exactly once and halts.  The
    counter track of every random run is a sub-path of this schedule for the
    marks it visits, which is why the maximum is faithful.
    """

    def resolver(cfg: Configuration, symbol: str, labels: Sequence[str]) -> str:
        if len(labels) == 1:
            return labels[0]
        if SUCCEED in labels:
            return SUCCEED
        if symbol == RIGHT_MARKER:
            return "1" if 2**cfg.counter == m else "2"
        return "1"

    return resolver


def profile_member_space(m: int, params: PowerParams | int, single_a_member: bool = True) -> int:
    """Maximum counter value over the exact schedule on input a^m.

    Members a^(2^j) yield exactly j = log2(m); any other m drives the marking
    loop to its last cell and yields exactly m.
    """
    if m < 1:
        raise ParameterError("profiling needs m >= 1")
    spec = build_upower(params, single_a_member)
    return profile_space(spec, "a" * m, mode="exact-schedule", schedule=exact_schedule(m))


# --- language families ------------------------------------------------------

UPOWER = "upower"
POLY = "poly"
POWERBASE = "powerbase"
POLYPOWER = "polypower"
ITER = "iter"


@dataclass(frozen=True)
class FamilySpec:
    """A unary language given by a witness function over n = min_n, min_n+1, ...

    upower: 2^n; poly: p(n) with integer coefficients, constant term first;
    powerbase: base^n; polypower: p(n) * base^n; iter: the inner family with n
    replaced by base^n (the geometric-marking construction).
    """

    tag: str
    coeffs: tuple[int, ...] = ()
    base: int = 0
    inner: "FamilySpec | None" = None
    min_n: int = 1

    def describe(self) -> str:
        if self.tag == UPOWER:
            return f"{{ a^(2^n) : n >= {self.min_n} }}"
        if self.tag == POLY:
            return f"{{ a^p(n) : n >= 1 }} with p = {_poly_text(self.coeffs)}"
        if self.tag == POWERBASE:
            return f"{{ a^({self.base}^n) : n >= 1 }}"
        if self.tag == POLYPOWER:
            return f"{{ a^(p(n)*{self.base}^n) : n >= 1 }} with p = {_poly_text(self.coeffs)}"
        assert self.inner is not None
        return f"inner family {self.inner.describe()} with n replaced by {self.base}^n"


def _poly_text(coeffs: tuple[int, ...]) -> str:
    terms = []
    for power, c in enumerate(coeffs):
        if c == 0:
            continue
        if power == 0:
            terms.append(str(c))
        elif power == 1:
            terms.append(f"{c}*n")
        else:
            terms.append(f"{c}*n^{power}")
    return " + ".join(terms) if terms else "0"


def family_upower(min_n: int = 0) -> FamilySpec:
    return FamilySpec(UPOWER, min_n=min_n)


def family_poly(coeffs: Sequence[int]) -> FamilySpec:
    if not coeffs:
        raise FamilyError("polynomial needs at least one coefficient")
    return FamilySpec(POLY, coeffs=tuple(int(c) for c in coeffs))


def family_powerbase(base: int) -> FamilySpec:
    if base < 2:
        raise FamilyError("powerbase needs base >= 2")
    return FamilySpec(POWERBASE, base=base)


def family_polypower(coeffs: Sequence[int], base: int) -> FamilySpec:
    if not coeffs:
        raise FamilyError("polynomial needs at least one coefficient")
    if base <= 2:
        raise FamilyError("polypower needs base > 2")
    return FamilySpec(POLYPOWER, coeffs=tuple(int(c) for c in coeffs), base=base)


def family_iter(base: int, inner: FamilySpec) -> FamilySpec:
    if base < 2:
        raise FamilyError("iter needs base >= 2")
    if inner.tag == ITER:
        raise FamilyError("iter families do not nest")
    return FamilySpec(ITER, base=base, inner=inner, min_n=1)


def parse_family(text: str) -> FamilySpec:
    """Parse CLI family syntax: upower | poly:c0,c1,.. | powerbase:m |
    polypower:c0,c1,..:m | iter:base:family."""
    parts = text.split(":")
    tag = parts[0]
    try:
        if tag == UPOWER and len(parts) == 1:
            return family_upower()
        if tag == POLY and len(parts) == 2:
            return family_poly([int(c) for c in parts[1].split(",")])
        if tag == POWERBASE and len(parts) == 2:
            return family_powerbase(int(parts[1]))
        if tag == POLYPOWER and len(parts) == 3:
            return family_polypower([int(c) for c in parts[1].split(",")], int(parts[2]))
        if tag == ITER and len(parts) >= 3:
            return family_iter(int(parts[1]), parse_family(":".join(parts[2:])))
    except ValueError as exc:
        raise FamilyError(f"malformed family {text!r}: {exc}") from exc
    raise FamilyError(f"unknown family syntax {text!r}")


def _poly_eval(coeffs: tuple[int, ...], n: int) -> int:
    value = 0
    for c in reversed(coeffs):
        value = value * n + c
    return value


def _witness(family: FamilySpec, n: int) -> int:
    if family.tag == UPOWER:
        return 2**n
    if family.tag == POLY:
        v = _poly_eval(family.coeffs, n)
        if v <= 0:
            raise FamilyError(f"polynomial is non-positive at n = {n}")
        return v
    if family.tag == POWERBASE:
        return family.base**n
    if family.tag == POLYPOWER:
        v = _poly_eval(family.coeffs, n)
        if v <= 0:
            raise FamilyError(f"polynomial is non-positive at n = {n}")
        return v * family.base**n
    assert family.inner is not None
    return _witness(family.inner, family.base**n)


def _scan_indices(family: FamilySpec, length: int):
    """Witness arguments to scan; stops once the witness provably exceeds length."""
    if family.tag == POLY:
        # Polynomials may dip before growing; scan up to the Cauchy root bound
        # of p(x) = length, past which |p| must exceed length.
        coeffs = family.coeffs
        degree = len(coeffs) - 1
        while degree > 0 and coeffs[degree] == 0:
            degree -= 1
        if degree == 0:
            return range(1, 2)
        lead = abs(coeffs[degree])
        bound = 1 + max(abs(c) + length for c in coeffs[:degree]) // lead + 1
        return range(1, bound + 1)
    return None  # strictly increasing witness: scan until it exceeds length


def member_witness(w: str | int, family: FamilySpec) -> int | None:
    """The witness argument n with witness(n) == |w|, or None for non-members."""
    length = _unary_length(w)
    if length < 1:
        return None
    indices = _scan_indices(family, length)
    if indices is not None:
        for n in indices:
            if _witness(family, n) == length:
                return n
        return None
    n = family.min_n
    while True:
        v = _witness(family, n)
        if v == length:
            return n
        if v > length:
            return None
        n += 1


def is_member(w: str | int, family: FamilySpec) -> bool:
    """Brute-force membership of the unary input in the family's language."""
    return member_witness(w, family) is not None


def _unary_length(w: str | int) -> int:
    if isinstance(w, int):
        return w
    if any(ch != "a" for ch in w):
        raise FamilyError("family membership is defined for unary inputs a^m")
    return len(w)


@dataclass(frozen=True)
class FamilyBounds:
    """Analytical report for a family: marking style, space bound, error bound."""

    family: str
    marking: str
    space_bound: str
    error_bound: Rat
    member_space: int | None

    def lines(self) -> list[str]:
        rows = [
            f"language: {self.family}",
            f"marking sequence: {self.marking}",
            f"member space bound: {self.space_bound}",
            f"error bound: {self.error_bound}",
        ]
        if self.member_space is not None:
            rows.append(f"counter high-water mark for this member: {self.member_space}")
        return rows


def family_bounds(family: FamilySpec, k: int = 1, w: str | int | None = None) -> FamilyBounds:
    """Marking style, member space bound, and the rejection bound 2k^2/(2k^2+1).

    The member space bound is the inverse growth of the witness function: the
    marking loop stops at the witness argument (linear marking) or at the mark
    value base^n itself (geometric marking), and for a concrete member the
    exact high-water mark is reported.
    """
    if family.tag == ITER:
        marking = f"geometric: 1, {family.base}, {family.base}^2, ... (mark <- mark * {family.base})"
        space = f"inverse of the inner witness at |w| (the final mark value {family.base}^n)"
    else:
        marking = "linear: 1, 2, 3, ... (mark <- mark + 1)"
        if family.tag == UPOWER:
            space = "log2(|w|)"
        elif family.tag == POWERBASE:
            space = f"log_{family.base}(|w|)"
        elif family.tag == POLYPOWER:
            space = f"~ log_{family.base}(|w|)"
        else:
            degree = max((i for i, c in enumerate(family.coeffs) if c != 0), default=0)
            space = f"~ |w|^(1/{degree})" if degree > 0 else "O(1)"
    member_space = None
    if w is not None:
        n = member_witness(w, family)
        if n is not None:
            member_space = family.base**n if family.tag == ITER else n
    return FamilyBounds(family.describe(), marking, space, error_bound(k), member_space)
