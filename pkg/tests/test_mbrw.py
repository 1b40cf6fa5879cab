"""Killed branching random walk: determinism, invariants, mean-size bridge."""

import pytest
from hypothesis import given, settings, strategies as st

from perc_lab.analytic import ModelParams, solve_type_recursion
from perc_lab.mbrw import MbrwConfig, MbrwResult, estimate_mean_size, simulate_tree


class TestSimulateTree:
    def test_pi_zero_is_sole_root(self):
        config = MbrwConfig(ModelParams(2, 0.0))
        for label in ("O", "Y"):
            res = simulate_tree(config, label, 9)
            assert res == MbrwResult(size=1, o_count=0, y_count=0, truncated=False)

    def test_deterministic(self):
        config = MbrwConfig(ModelParams(2, 0.12))
        assert simulate_tree(config, "O", 314) == simulate_tree(config, "O", 314)

    def test_rejects_bad_label(self):
        with pytest.raises(ValueError):
            simulate_tree(MbrwConfig(ModelParams(2, 0.1)), "X", 1)

    def test_rejects_bad_cap(self):
        with pytest.raises(ValueError):
            MbrwConfig(ModelParams(2, 0.1), node_cap=0)

    @settings(max_examples=150, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=2**63), root=st.sampled_from(["O", "Y"]))
    def test_count_invariant(self, seed, root):
        res = simulate_tree(MbrwConfig(ModelParams(2, 0.13)), root, seed)
        assert res.size == res.o_count + res.y_count + 1
        assert not res.truncated

    def test_truncation_pins_size_to_cap(self):
        config = MbrwConfig(ModelParams(2, 0.14), node_cap=4)
        seen = False
        for seed in range(300):
            res = simulate_tree(config, "O", seed)
            assert res.size <= 4
            if res.truncated:
                assert res.size == 4
                seen = True
        assert seen


class TestEstimateMeanSize:
    def test_pi_zero(self):
        est = estimate_mean_size(MbrwConfig(ModelParams(2, 0.0)), "O", 100, 5)
        assert est == (1.0, 0.0, 0.0)

    def test_rejects_tiny_trials(self):
        with pytest.raises(ValueError):
            estimate_mean_size(MbrwConfig(ModelParams(2, 0.1)), "O", 1, 5)

    def test_old_root_matches_type_recursion(self):
        params = ModelParams(2, 0.1)
        est = estimate_mean_size(MbrwConfig(params), "O", 100_000, 2024)
        sol = solve_type_recursion(params)
        assert abs(est.mean - sol.x_old) < 4 * est.stderr
        assert est.truncation_rate == 0.0
        # chain identity: mean equals (1 + m pi x_old)(1 + m pi x_young)
        chain = (1 + 2 * params.pi * sol.x_old) * (1 + 2 * params.pi * sol.x_young)
        assert abs(est.mean - chain) < 4 * est.stderr

    def test_young_root_matches_type_recursion(self):
        params = ModelParams(2, 0.1)
        est = estimate_mean_size(MbrwConfig(params), "Y", 100_000, 2025)
        sol = solve_type_recursion(params)
        assert abs(est.mean - sol.x_young) < 4 * est.stderr

    def test_young_root_smaller_mean(self):
        params = ModelParams(2, 0.12)
        old = estimate_mean_size(MbrwConfig(params), "O", 40_000, 6)
        young = estimate_mean_size(MbrwConfig(params), "Y", 40_000, 6)
        assert old.mean > young.mean > 1.0

    def test_general_m_bridge(self):
        params = ModelParams(3, 0.05)
        est = estimate_mean_size(MbrwConfig(params), "O", 60_000, 77)
        sol = solve_type_recursion(params)
        assert abs(est.mean - sol.x_old) < 4 * est.stderr
