"""Restarting realtime recognizer for { a^m b^n : n = 2^m } with tunable error.

The machine encodes 2^m and n into register amplitudes while sweeping the
input once per round and compares them by subtraction at the right end-marker.
Members are accepted exactly (the rejecting amplitude vanishes only when
n = 2^m); non-members are rejected with probability at least 2k^2/(2k^2+1),
where the integer k >= 1 scales the end-marker operator.  That operator needs
four integers with k1^2+k2^2+k3^2+k4^2 = 4k^2-1 to be a valid superoperator,
which Lagrange's four-square theorem always provides.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import Rat, four_square, rmat
from .machine import (
    ClassicalAction,
    MOVE_RIGHT,
    MOVE_STAY,
    MachineSpec,
    NonHaltingError,
    LEFT_MARKER,
    RESTARTING_REALTIME,
    RIGHT_MARKER,
)
from .superop import Superoperator, identity_op


class ParameterError(ValueError):
    """Machine parameters outside their valid range."""


@dataclass(frozen=True)
class PowerParams:
    """Error-tuning parameter k plus the four-square completion of 4k^2-1."""

    k: int
    squares: tuple[int, int, int, int]

    @classmethod
    def for_k(cls, k: int) -> "PowerParams":
        # k = 0 would make the 1/(2k) operator scale undefined.
        if k < 1:
            raise ParameterError("k must be a positive integer")
        return cls(k, four_square(4 * k * k - 1))

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ParameterError("k must be a positive integer")
        a, b, c, d = self.squares
        if a * a + b * b + c * c + d * d != 4 * self.k * self.k - 1:
            raise ParameterError("squares do not sum to 4k^2 - 1")


def op_left_marker() -> Superoperator:
    """Applied on the left marker: seeds the comparison register, half the mass survives."""
    h = Rat(1, 2)
    return Superoperator((
        ("1", rmat([[1, 0, 0], [1, 0, 0], [0, 0, 2]], h)),
        ("2", rmat([[1, 0, 0], [1, 0, 0], [0, 2, 0]], h)),
    ))


def op_a() -> Superoperator:
    """Applied per 'a': doubles the second amplitude on the surviving branch."""
    h = Rat(1, 2)
    return Superoperator((
        ("1", rmat([[1, 0, 0], [0, 2, 0], [0, 0, 2]], h)),
        ("2", rmat([[1, 0, 0], [1, 0, 0], [1, 0, 0]], h)),
    ))


def op_b() -> Superoperator:
    """Applied per 'b': increments the third amplitude on the surviving branch."""
    h = Rat(1, 2)
    return Superoperator((
        ("1", rmat([[1, 0, 0], [0, 1, 0], [1, 0, 1]], h)),
        ("2", rmat([[1, 0, -1], [1, 0, 0], [0, 1, 1]], h)),
        ("3", rmat([[0, 1, -1], [0, 1, 0], [0, 0, 0]], h)),
    ))


def op_right_marker(params: PowerParams) -> Superoperator:
    """Applied on the right marker: outcome 1 accepts, outcome 2 compares by subtraction.

    Completeness of the four elements is exactly the four-square identity on
    the (1,1) entry: (1 + k1^2+k2^2+k3^2+k4^2) / 4k^2 = 1.
    """
    k = params.k
    k1, k2, k3, k4 = params.squares
    s = Rat(1, 2 * k)
    return Superoperator((
        ("1", rmat([[1, 0, 0], [0, 0, 0], [0, 0, 0]], s)),
        ("2", rmat([[0, 0, 0], [0, k, -k], [0, k, -k]], s)),
        ("3", rmat([[k1, 0, 0], [k2, 0, 0], [k3, 0, 0]], s)),
        ("4", rmat([[k4, 0, 0], [0, k, k], [0, k, k]], s)),
    ))


# States of the built machine.  The quantum-fed chain is start -> need_a ->
# block_a -> block_b; the coast_* states mirror the same a+b+ shape automaton
# but feed nothing: a no-decision outcome parks the branch there so it still
# finishes the sweep and restarts at the right marker.  That keeps the round
# probabilities identical to restarting on the spot while making the machine
# reject any malformed input deterministically within a single sweep.
START = "start"
NEED_A = "need_a"
BLOCK_A = "block_a"
BLOCK_B = "block_b"
COAST_NEED_A = "coast_need_a"
COAST_A = "coast_a"
COAST_B = "coast_b"
ACCEPT = "accept"
REJECT = "reject"


def build_power(params: PowerParams | int) -> MachineSpec:
    """Build the restarting realtime machine for { a^m b^n : n = 2^m }.

    Inputs that are not of the form a+b+ are rejected on every branch of the
    first sweep; well-formed inputs run the accept/compare round in an
    implicit infinite loop via the restart outcomes.
    """
    if isinstance(params, int):
        params = PowerParams.for_k(params)
    silent = identity_op(3)

    def go(state: str) -> ClassicalAction:
        return ClassicalAction(state, MOVE_RIGHT)

    halt_accept = ClassicalAction(ACCEPT, MOVE_STAY)
    halt_reject = ClassicalAction(REJECT, MOVE_STAY)
    restart = ClassicalAction(None, MOVE_STAY, restart=True)

    delta_q = {
        (START, LEFT_MARKER, None): op_left_marker(),
        (NEED_A, "a", None): op_a(),
        (NEED_A, "b", None): silent,
        (NEED_A, RIGHT_MARKER, None): silent,
        (BLOCK_A, "a", None): op_a(),
        (BLOCK_A, "b", None): op_b(),
        (BLOCK_A, RIGHT_MARKER, None): silent,
        (BLOCK_B, "b", None): op_b(),
        (BLOCK_B, "a", None): silent,
        (BLOCK_B, RIGHT_MARKER, None): op_right_marker(params),
        (COAST_NEED_A, "a", None): silent,
        (COAST_NEED_A, "b", None): silent,
        (COAST_NEED_A, RIGHT_MARKER, None): silent,
        (COAST_A, "a", None): silent,
        (COAST_A, "b", None): silent,
        (COAST_A, RIGHT_MARKER, None): silent,
        (COAST_B, "b", None): silent,
        (COAST_B, "a", None): silent,
        (COAST_B, RIGHT_MARKER, None): silent,
    }
    delta_c = {
        (START, LEFT_MARKER, None, "1"): go(NEED_A),
        (START, LEFT_MARKER, None, "2"): go(COAST_NEED_A),
        (NEED_A, "a", None, "1"): go(BLOCK_A),
        (NEED_A, "a", None, "2"): go(COAST_A),
        (NEED_A, "b", None, "go"): halt_reject,
        (NEED_A, RIGHT_MARKER, None, "go"): halt_reject,
        (BLOCK_A, "a", None, "1"): go(BLOCK_A),
        (BLOCK_A, "a", None, "2"): go(COAST_A),
        (BLOCK_A, "b", None, "1"): go(BLOCK_B),
        (BLOCK_A, "b", None, "2"): go(COAST_B),
        (BLOCK_A, "b", None, "3"): go(COAST_B),
        (BLOCK_A, RIGHT_MARKER, None, "go"): halt_reject,
        (BLOCK_B, "b", None, "1"): go(BLOCK_B),
        (BLOCK_B, "b", None, "2"): go(COAST_B),
        (BLOCK_B, "b", None, "3"): go(COAST_B),
        (BLOCK_B, "a", None, "go"): halt_reject,
        (BLOCK_B, RIGHT_MARKER, None, "1"): halt_accept,
        (BLOCK_B, RIGHT_MARKER, None, "2"): halt_reject,
        (BLOCK_B, RIGHT_MARKER, None, "3"): restart,
        (BLOCK_B, RIGHT_MARKER, None, "4"): restart,
        (COAST_NEED_A, "a", None, "go"): go(COAST_A),
        (COAST_NEED_A, "b", None, "go"): halt_reject,
        (COAST_NEED_A, RIGHT_MARKER, None, "go"): halt_reject,
        (COAST_A, "a", None, "go"): go(COAST_A),
        (COAST_A, "b", None, "go"): go(COAST_B),
        (COAST_A, RIGHT_MARKER, None, "go"): halt_reject,
        (COAST_B, "b", None, "go"): go(COAST_B),
        (COAST_B, "a", None, "go"): halt_reject,
        (COAST_B, RIGHT_MARKER, None, "go"): restart,
    }
    return MachineSpec(
        name=f"power[k={params.k}]",
        kind=RESTARTING_REALTIME,
        alphabet=("a", "b"),
        states=(START, NEED_A, BLOCK_A, BLOCK_B, COAST_NEED_A, COAST_A, COAST_B, ACCEPT, REJECT),
        initial_state=START,
        accept_state=ACCEPT,
        reject_state=REJECT,
        quantum_basis=("q1", "q2", "q3"),
        initial_basis=0,
        delta_q=delta_q,
        delta_c=delta_c,
    )


def is_member_pair(m: int, n: int) -> bool:
    """Membership of a^m b^n in the recognized language."""
    return m >= 1 and n >= 1 and n == 2**m


def round_closed_form(m: int, n: int, params: PowerParams | int) -> tuple[Rat, Rat]:
    """Exact per-round (accept, reject) probabilities on a^m b^n.

    Along the surviving branch the register reaches (1/2)^(m+n+1) (1, 2^m, n)
    at the right marker; the accepting element keeps amplitude
    (1/2)^(m+n+2)/k of the first component and the rejecting element picks up
    the difference 2^m - n in two components, giving

        p_accept = (1/4)^(m+n+2) / k^2
        p_reject = (1/4)^(m+n+2) * 2 (2^m - n)^2

    so rejection is zero exactly on members and always 2 k^2 (2^m - n)^2
    times the accepting probability otherwise.
    """
    k = params.k if isinstance(params, PowerParams) else params
    if k < 1:
        raise ParameterError("k must be a positive integer")
    if m < 1 or n < 1:
        raise ParameterError("closed forms need m, n >= 1")
    denom = 4 ** (m + n + 2)
    p_accept = Rat(1, denom * k * k)
    p_reject = Rat(2 * (2**m - n) ** 2, denom)
    return p_accept, p_reject


def solve_restart(p_accept: Rat, p_reject: Rat) -> tuple[Rat, Rat, Rat]:
    """Overall (accept, reject, expected rounds) of the infinite restart loop.

    Summing the geometric series over restarts: conditioned on halting, the
    verdict odds are p_accept : p_reject, and the round count is geometric
    with mean 1/(p_accept + p_reject).
    """
    p_halt = p_accept + p_reject
    if p_halt == 0:
        raise NonHaltingError("machine never halts: both round probabilities are zero")
    return p_accept / p_halt, p_reject / p_halt, 1 / p_halt


def error_bound(k: int) -> Rat:
    """Minimum rejection probability for non-members: 2k^2 / (2k^2 + 1)."""
    if k < 1:
        raise ParameterError("k must be a positive integer")
    return Rat(2 * k * k, 2 * k * k + 1)


def overall_analysis(m: int, n: int, params: PowerParams | int) -> tuple[Rat, Rat, Rat]:
    """Overall (accept, reject, expected rounds) on a^m b^n via the closed forms."""
    return solve_restart(*round_closed_form(m, n, params))
