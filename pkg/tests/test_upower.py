from fractions import Fraction as F

import pytest

from qcasim.machine import run_trajectory, sample_trajectories, validate_spec
from qcasim.power import ParameterError, error_bound
from qcasim.superop import QuantumState, apply, initialize, validate
from qcasim.upower import (
    accept_coin,
    analyze_upower,
    build_upower,
    enumerate_pass,
    inner_accept_probability,
    is_upower_member,
    profile_member_space,
)


def coin_success_mass(op, state):
    return apply(op, state).label_probability("succeed")


class TestAcceptCoin:
    @pytest.mark.parametrize("k", range(1, 9))
    def test_complete(self, k):
        assert validate(accept_coin(k)).ok

    def test_k1_structure(self):
        # 2k^2+1 = 3 decomposes as 1+1+1, so three success elements of
        # amplitude 1/3; failing mass 2/3 from the decomposition of 6.
        coin = accept_coin(1)
        success = [m for label, m in coin.elements if label == "succeed"]
        assert len(success) == 3
        assert all(m[0][0] == F(1, 3) for m in success)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_success_probability(self, k):
        n = 2 * k * k + 1
        assert coin_success_mass(accept_coin(k), initialize(0, 3)) == F(1, n)

    @pytest.mark.parametrize("k", [1, 2, 3])
    @pytest.mark.parametrize("m", [1, 2, 5, 10])
    def test_chained_success_probability(self, k, m):
        # Enumerate m consecutive applications, merging branches that sit on
        # the same ray (identical pure states have identical futures); the
        # joint all-success mass must be exactly (1/(2k^2+1))^m.
        from qcasim.exact import primitive_direction

        coin = accept_coin(k)
        n = 2 * k * k + 1
        alive: dict[tuple, F] = {(1, 0, 0): F(1)}
        for _ in range(m):
            nxt: dict[tuple, F] = {}
            for direction, mass in alive.items():
                state = QuantumState(tuple(F(x) for x in direction))
                scale = state.norm_sq
                for branch in apply(coin, state).branches:
                    if branch.label == "succeed" and branch.probability > 0:
                        key = primitive_direction(branch.state.vector)
                        nxt[key] = nxt.get(key, F(0)) + mass * branch.probability / scale
            alive = nxt
        assert sum(alive.values()) == F(1, n**m)

    def test_rejects_k_zero(self):
        with pytest.raises(ParameterError):
            accept_coin(0)


class TestBuild:
    @pytest.mark.parametrize("k", [1, 2])
    def test_machine_validates(self, k):
        assert validate_spec(build_upower(k)).ok
        assert validate_spec(build_upower(k, single_a_member=False)).ok


class TestAnalysis:
    def test_inner_probabilities(self):
        # Mark i against m = 3: acceptance odds 1 : 2k^2 (2^i - 3)^2.
        assert inner_accept_probability(1, 3, 1) == F(1, 3)
        assert inner_accept_probability(2, 3, 1) == F(1, 3)
        assert inner_accept_probability(3, 3, 1) == F(1, 51)

    def test_member_accepted_exactly(self):
        analysis = analyze_upower(4, 1)
        assert analysis.overall_accept == 1
        assert analysis.pass_reject == 0

    def test_non_member_composition(self):
        analysis = analyze_upower(3, 1)
        assert analysis.q == (F(1, 3), F(1, 3), F(1, 51))
        assert analysis.pass_reject == F(2, 3) * F(2, 3) * F(50, 51)
        assert analysis.pass_accept == (1 - analysis.pass_reject) * F(1, 27)
        assert analysis.overall_reject == F(5400, 5659)
        assert analysis.overall_reject >= error_bound(1)

    def test_pass_probabilities_sum_to_one(self):
        for m in (2, 3, 5, 8):
            a = analyze_upower(m, 2)
            assert a.pass_accept + a.pass_reject + a.pass_restart == 1

    def test_single_letter_member_by_default(self):
        analysis = analyze_upower(1, 1)
        assert analysis.overall_accept == 1

    def test_single_letter_variant_rejects(self):
        analysis = analyze_upower(1, 1, single_a_member=False)
        assert analysis.overall_reject == F(6, 7)


class TestPassEnumeration:
    @pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
    def test_machine_agrees_with_composition_k1(self, m):
        a = analyze_upower(m, 1)
        e = enumerate_pass(1, m)
        assert e.q == a.q
        assert e.coin_success == a.coin_success
        assert (e.pass_accept, e.pass_reject, e.pass_restart) == (
            a.pass_accept, a.pass_reject, a.pass_restart)
        assert (e.overall_accept, e.overall_reject) == (a.overall_accept, a.overall_reject)

    @pytest.mark.parametrize("m", [2, 3])
    def test_machine_agrees_with_composition_k2(self, m):
        a = analyze_upower(m, 2)
        e = enumerate_pass(2, m)
        assert (e.pass_accept, e.pass_reject, e.pass_restart) == (
            a.pass_accept, a.pass_reject, a.pass_restart)


class TestSpace:
    @pytest.mark.parametrize("j", [1, 2, 3, 4, 5])
    def test_members_use_logarithmic_counter(self, j):
        assert profile_member_space(2**j, 1) == j

    @pytest.mark.parametrize("m", [3, 5, 6, 7, 12, 31])
    def test_non_members_use_linear_counter(self, m):
        assert profile_member_space(m, 1) == m

    def test_single_letter_input_never_marks(self):
        assert profile_member_space(1, 1) == 0

    def test_sampled_trajectory_matches_schedule_on_members(self):
        # Counter evolution is outcome-independent per mark, so any sampled
        # member run peaks at log2(m) too.
        stats = run_trajectory(build_upower(1), "aa", 20, step_budget=2_000_000)
        assert stats.verdict == "accept"
        assert stats.max_counter == 1

    def test_sampled_counter_never_passes_the_member_mark(self):
        # On a^4 the mark can never advance past 2: the virtual input at mark
        # 2 has rejecting probability exactly zero.  A budget-limited run must
        # reach mark 2 and stop growing there.
        stats = run_trajectory(build_upower(1), "aaaa", 20, step_budget=400_000)
        assert stats.max_counter == 2


class TestEndToEnd:
    def test_single_a_accepts_deterministically(self):
        stats = run_trajectory(build_upower(1), "a", 0)
        assert stats.verdict == "accept"
        assert stats.steps == 3
        assert stats.max_counter == 0

    def test_empty_input_rejects(self):
        stats = run_trajectory(build_upower(1), "", 0)
        assert stats.verdict == "reject"

    def test_member_sampled_runs_accept(self):
        summary = sample_trajectories(build_upower(1), "aa", count=5, seed=9,
                                      step_budget=2_000_000)
        assert summary.accepts == 5
        assert summary.max_counter == 1

    def test_is_upower_member(self):
        assert [m for m in range(1, 20) if is_upower_member(m)] == [1, 2, 4, 8, 16]
        assert [m for m in range(1, 20) if is_upower_member(m, single_a_member=False)] == [2, 4, 8, 16]
