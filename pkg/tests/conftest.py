import pytest

from qcasim.machine import (
    ClassicalAction,
    DETERMINISTIC_COUNTER,
    LEFT_MARKER,
    MOVE_LEFT,
    MOVE_RIGHT,
    MOVE_STAY,
    MachineSpec,
    RIGHT_MARKER,
    THETA_NONZERO,
    THETA_ZERO,
)


def build_updown() -> MachineSpec:
    """A small deterministic one-counter machine used as an engine fixture.

    Scans right counting the a's, then walks back decrementing, accepting on
    the left marker with an empty counter; accepts every a^n but exercises
    two-way motion and both counter directions without any randomness.
    """
    go = "go"
    delta_c = {
        ("fwd", LEFT_MARKER, THETA_ZERO, go): ClassicalAction("fwd", MOVE_RIGHT),
        ("fwd", "a", THETA_ZERO, go): ClassicalAction("fwd", MOVE_RIGHT, +1),
        ("fwd", "a", THETA_NONZERO, go): ClassicalAction("fwd", MOVE_RIGHT, +1),
        ("fwd", RIGHT_MARKER, THETA_ZERO, go): ClassicalAction("accept", MOVE_STAY),
        ("fwd", RIGHT_MARKER, THETA_NONZERO, go): ClassicalAction("back", MOVE_LEFT),
        ("back", "a", THETA_NONZERO, go): ClassicalAction("back", MOVE_LEFT, -1),
        ("back", LEFT_MARKER, THETA_ZERO, go): ClassicalAction("accept", MOVE_STAY),
    }
    return MachineSpec(
        name="updown",
        kind=DETERMINISTIC_COUNTER,
        alphabet=("a",),
        states=("fwd", "back", "accept", "reject"),
        initial_state="fwd",
        accept_state="accept",
        reject_state="reject",
        quantum_basis=(),
        initial_basis=0,
        delta_q={},
        delta_c=delta_c,
    )


@pytest.fixture
def updown():
    return build_updown()
