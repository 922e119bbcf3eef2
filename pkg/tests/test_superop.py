from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from qcasim.exact import DimensionError, rmat, rvec
from qcasim.power import PowerParams, op_a, op_b, op_left_marker, op_right_marker
from qcasim.superop import (
    DegenerateBranchError,
    QuantumState,
    Superoperator,
    apply,
    identity_op,
    initialize,
    reset_op,
    reset_then,
    validate,
)
from qcasim.upower import accept_coin


class TestValidate:
    def test_right_marker_k1_passes(self):
        # (1,1) entry of the adjoint sum is (1 + 1+1+1+0) / 4 = 1.
        op = op_right_marker(PowerParams(1, (1, 1, 1, 0)))
        assert validate(op).ok

    def test_zeroed_element_fails_at_top_left(self):
        elements = list(op_a().elements)
        elements[1] = ("2", rmat([[0, 0, 0], [0, 0, 0], [0, 0, 0]]))
        report = validate(Superoperator(tuple(elements)))
        assert not report.ok
        assert report.failures == ((1, 1, F(1, 4)),)

    def test_identity_passes(self):
        assert validate(identity_op(3)).ok

    def test_reset_compositions_pass(self):
        assert validate(reset_op(3)).ok
        assert validate(reset_then(op_left_marker())).ok
        assert validate(reset_then(accept_coin(2))).ok


class TestApply:
    def test_left_marker_splits_evenly(self):
        dist = apply(op_left_marker(), initialize(0, 3))
        expected = rvec([F(1, 2), F(1, 2), 0])
        assert [b.label for b in dist.branches] == ["1", "2"]
        assert all(b.state.vector == expected for b in dist.branches)
        assert all(b.probability == F(1, 2) for b in dist.branches)

    def test_identity_keeps_state(self):
        state = QuantumState(rvec([F(1, 2), F(1, 3), 0]))
        dist = apply(identity_op(3), state)
        assert len(dist.branches) == 1
        assert dist.branches[0].state == state
        assert dist.branches[0].probability == state.norm_sq

    def test_equal_amplitudes_never_reject(self):
        # The rejecting element subtracts the two encoded amplitudes; on the
        # vector (1/2)^3 (1, 2, 2) the difference is zero.
        op = op_right_marker(PowerParams.for_k(1))
        dist = apply(op, QuantumState(rvec([F(1, 8), F(2, 8), F(2, 8)])))
        assert dist.label_probability("2") == 0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            apply(identity_op(2), initialize(0, 3))


class TestInitialize:
    def test_first_basis_state(self):
        assert initialize(0, 3).vector == rvec([1, 0, 0])

    def test_last_basis_state(self):
        assert initialize(2, 3).vector == rvec([0, 0, 1])

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            initialize(3, 3)


class TestNormalize:
    def test_rational_direction(self):
        p, direction = QuantumState(rvec([F(3, 5), F(4, 5), 0])).normalize()
        assert p == 1 and direction == rvec([F(3, 5), F(4, 5), 0])

    def test_scales_when_root_is_rational(self):
        p, direction = QuantumState(rvec([F(3, 10), F(4, 10), 0])).normalize()
        assert p == F(1, 4)
        assert direction == rvec([F(3, 5), F(4, 5), 0])

    def test_irrational_norm_returns_raw_vector(self):
        state = QuantumState(rvec([1, 1, 0]))
        p, direction = state.normalize()
        assert p == 2
        assert direction == state.vector

    def test_zero_vector_degenerate(self):
        with pytest.raises(DegenerateBranchError):
            QuantumState(rvec([0, 0, 0])).normalize()


small_rat = st.fractions(min_value=-2, max_value=2, max_denominator=32)
vectors = st.tuples(small_rat, small_rat, small_rat)


def built_in_ops():
    ops = [op_left_marker(), op_a(), op_b(), identity_op(3), reset_op(3)]
    for k in (1, 2, 3):
        params = PowerParams.for_k(k)
        ops.append(op_right_marker(params))
        ops.append(accept_coin(params))
        ops.append(reset_then(op_left_marker()))
    return ops


@pytest.mark.parametrize("op", built_in_ops(), ids=lambda o: f"{len(o.elements)}el")
@given(vec=vectors)
def test_probability_conservation(op, vec):
    state = QuantumState(vec)
    assert apply(op, state).total == state.norm_sq


@given(vec=vectors, scale=small_rat)
def test_apply_is_linear(vec, scale):
    op = op_b()
    scaled = apply(op, QuantumState(tuple(scale * x for x in vec)))
    plain = apply(op, QuantumState(vec))
    for s_branch, p_branch in zip(scaled.branches, plain.branches):
        assert s_branch.state.vector == tuple(scale * x for x in p_branch.state.vector)


def test_empty_superoperator_rejected():
    with pytest.raises(DimensionError):
        Superoperator(())


def test_completeness_accepts_all_power_operators_for_small_k():
    for k in range(1, 9):
        params = PowerParams.for_k(k)
        for op in (op_left_marker(), op_a(), op_b(), op_right_marker(params)):
            assert validate(op).ok, f"k={k}"
