"""Growth engine: step semantics, accumulators, determinism, static build."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from perc_lab.analytic import ModelParams
from perc_lab.graph_core import (
    GrowthState,
    _step_from_row,
    grow_step,
    grow_with_paths,
    init_growth,
    power_sums_from_scratch,
    run_to,
    snapshot,
    static_percolated_graph,
)
from perc_lab.oracle import exact_expected_susceptibilities
from perc_lab.rng import trial_seed

P01 = ModelParams(2, 0.1)

RETAIN = 0.0  # below any positive pi
DROP = 0.999999  # above any pi < 1


def _target_u(t: int, n: int) -> float:
    """Uniform that maps to target t among n existing vertices."""
    return (t - 0.5) / n


class TestInit:
    def test_initial_state(self):
        state = init_growth(P01, 7)
        snap = snapshot(state)
        assert snap.n == 1
        assert snap.s2 == 1.0
        assert snap.c1_size == 1
        assert snap.max_oldest == 1

    def test_same_seed_bit_identical(self):
        a = init_growth(P01, 99)
        b = init_growth(P01, 99)
        run_to(a, 500)
        run_to(b, 500)
        assert snapshot(a, (1, 5)) == snapshot(b, (1, 5))
        assert (a.p2, a.p3, a.p4) == (b.p2, b.p3, b.p4)
        assert a._rng.random() == b._rng.random()


class TestStepSemantics:
    def test_forced_double_merge_from_singleton(self):
        state = init_growth(ModelParams(2, 0.5), 1)
        out = _step_from_row(state, [RETAIN, 0.1, RETAIN, 0.7], want_outcome=True)
        assert out.new_vertex == 2
        assert out.retained_edges == 2
        assert out.targets == [1, 1]
        assert out.merged_roots == [1]
        assert snapshot(state).s2 == 2.0  # one component of size 2

    def test_zero_edges_gives_singletons(self):
        state = init_growth(ModelParams(2, 0.5), 1)
        out = _step_from_row(state, [DROP, 0.1, DROP, 0.7], want_outcome=True)
        assert out.retained_edges == 0 and out.targets == []
        assert snapshot(state).s2 == 1.0

    def test_single_edge_onto_pair(self):
        state = init_growth(ModelParams(2, 0.5), 1)
        _step_from_row(state, [RETAIN, 0.1, DROP, 0.1], want_outcome=False)  # {1,2}
        out = _step_from_row(
            state, [RETAIN, _target_u(1, 2), DROP, 0.9], want_outcome=True
        )
        assert out.targets == [1]
        snap = snapshot(state)
        assert snap.n == 3 and snap.s2 == 3.0  # 9 / 3

    def test_merging_two_components(self):
        state = init_growth(ModelParams(2, 0.5), 1)
        _step_from_row(state, [DROP, 0.0, DROP, 0.0], want_outcome=False)  # {1},{2}
        out = _step_from_row(
            state,
            [RETAIN, _target_u(1, 2), RETAIN, _target_u(2, 2)],
            want_outcome=True,
        )
        assert sorted(out.targets) == [1, 2]
        assert len(out.merged_roots) == 2
        snap = snapshot(state)
        assert snap.max_size == 3 and snap.component_size_histogram == {3: 1}

    def test_grow_step_matches_run_to(self):
        a = init_growth(P01, 42)
        for _ in range(3000):
            grow_step(a)
        b = init_growth(P01, 42)
        run_to(b, 3001)
        assert snapshot(a, (2, 8)) == snapshot(b, (2, 8))


class TestRunTo:
    def test_pi_zero_all_singletons(self):
        state = init_growth(ModelParams(2, 0.0), 3)
        run_to(state, 1000)
        snap = snapshot(state)
        assert snap.s2 == 1.0
        assert snap.max_size == 1
        assert state.component_count == 1000

    def test_pi_one_single_component(self):
        state = init_growth(ModelParams(2, 1.0), 3)
        run_to(state, 1000)
        snap = snapshot(state)
        assert snap.max_size == 1000
        assert snap.c1_size == 1000
        assert snap.max_oldest == 1
        assert state.component_count == 1

    def test_determinism(self):
        a = run_to(init_growth(P01, 5), 4000)
        b = run_to(init_growth(P01, 5), 4000)
        assert snapshot(a, (1, 3, 10)) == snapshot(b, (1, 3, 10))

    def test_rejects_backward_target(self):
        state = init_growth(P01, 1)
        run_to(state, 50)
        with pytest.raises(ValueError):
            run_to(state, 10)

    def test_incremental_vs_direct(self):
        a = init_growth(P01, 8)
        for n in (10, 100, 123, 5000):
            run_to(a, n)
        b = run_to(init_growth(P01, 8), 5000)
        assert snapshot(a) == snapshot(b)


class TestSnapshot:
    def _components_3_and_1(self) -> GrowthState:
        state = init_growth(ModelParams(2, 0.5), 1)
        _step_from_row(state, [RETAIN, 0.1, DROP, 0.0], want_outcome=False)  # {1,2}
        _step_from_row(state, [RETAIN, _target_u(1, 2), DROP, 0.0], want_outcome=False)
        _step_from_row(state, [DROP, 0.0, DROP, 0.0], want_outcome=False)  # +{4}
        return state

    def test_power_sum_arithmetic(self):
        snap = snapshot(self._components_3_and_1(), (1, 2, 3))
        assert snap.n == 4
        assert snap.s2 == 2.5
        assert snap.s3 == 7.0
        assert snap.s4 == 20.5
        assert snap.s2_trunc[2] == 0.25  # only the singleton
        assert snap.s2_trunc[3] == 2.5  # L >= max size recovers s2
        assert snap.s2_trunc[1] == 0.25
        assert snap.component_size_histogram == {1: 1, 3: 1}
        assert snap.max_size == 3 and snap.max_oldest == 1

    def test_truncation_monotone_in_l(self):
        state = run_to(init_growth(P01, 77), 3000)
        snap = snapshot(state, (1, 2, 4, 8, 16, 10**6))
        values = [snap.s2_trunc[l] for l in (1, 2, 4, 8, 16, 10**6)]
        assert all(b >= a for a, b in zip(values, values[1:]))
        assert values[-1] == snap.s2

    def test_max_oldest_tie_break(self):
        # two components of size 2: {1,3} and {2,4}; oldest labels 1 and 2
        state = init_growth(ModelParams(2, 0.5), 1)
        _step_from_row(state, [DROP, 0.0, DROP, 0.0], want_outcome=False)
        _step_from_row(state, [RETAIN, _target_u(1, 2), DROP, 0.0], want_outcome=False)
        _step_from_row(state, [RETAIN, _target_u(2, 3), DROP, 0.0], want_outcome=False)
        snap = snapshot(state)
        assert snap.component_size_histogram == {2: 2}
        assert snap.max_oldest == 1


class TestAccumulatorIntegrity:
    @settings(max_examples=25, deadline=None)
    @given(
        pi=st.floats(min_value=0.0, max_value=1.0),
        seed=st.integers(min_value=0, max_value=2**63),
        n=st.integers(min_value=2, max_value=400),
    )
    def test_streaming_equals_scratch(self, pi, seed, n):
        state = run_to(init_growth(ModelParams(2, pi), seed), n)
        assert (state.p2, state.p3, state.p4) == power_sums_from_scratch(state)
        sizes = state.component_sizes()
        assert int(sizes.sum()) == n
        assert len(sizes) == state.component_count

    def test_find_idempotent(self):
        state = run_to(init_growth(P01, 13), 500)
        for v in range(1, 501, 17):
            assert state.find(state.find(v)) == state.find(v)


class TestPaths:
    def test_paths_match_stepwise_run(self):
        n = 800
        _, s2_path, c1_path = grow_with_paths(P01, 21, n)
        state = init_growth(P01, 21)
        for k in range(1, n):
            grow_step(state)
            assert s2_path[k] == state.p2 / state.n
            assert c1_path[k] == state._size[state.find(1)]
        assert s2_path[0] == 1.0 and c1_path[0] == 1

    def test_paths_trivial_at_pi_zero(self):
        _, s2_path, c1_path = grow_with_paths(ModelParams(2, 0.0), 3, 200)
        assert np.all(s2_path == 1.0)
        assert np.all(c1_path == 1)


class TestStatic:
    def test_trivial_cases(self):
        assert static_percolated_graph(ModelParams(2, 0.0), 100, 5).s2 == 1.0
        snap = static_percolated_graph(ModelParams(2, 1.0), 100, 5)
        assert snap.max_size == 100 and snap.c1_size == 100

    def test_determinism(self):
        a = static_percolated_graph(P01, 500, 11, (2, 4))
        b = static_percolated_graph(P01, 500, 11, (2, 4))
        assert a == b

    def test_histogram_consistency(self):
        snap = static_percolated_graph(P01, 1000, 3)
        total = sum(s * c for s, c in snap.component_size_histogram.items())
        assert total == 1000
        assert snap.s2 == sum(
            s * s * c for s, c in snap.component_size_histogram.items()
        ) / 1000


@pytest.mark.parametrize("n,pi", [(2, 0.1), (3, 0.5)])
def test_engines_match_oracle(n, pi):
    """Light version of the oracle-equivalence gate (full scale in acceptance)."""
    params = ModelParams(2, pi)
    exact, _ = exact_expected_susceptibilities(params, n)
    trials = 30_000
    dyn = 0.0
    sta = 0.0
    for t in range(trials):
        state = run_to(init_growth(params, trial_seed(4242, t)), n)
        dyn += state.p2 / n
        sta += static_percolated_graph(params, n, trial_seed(2424, t)).s2
    for label, mean in (("dynamic", dyn / trials), ("static", sta / trials)):
        # bound the stderr by the largest possible per-trial spread
        worst_se = n * n / math.sqrt(trials)
        assert abs(mean - exact) < 4 * worst_se, (label, mean, exact)
        assert abs(mean - exact) < 0.05, (label, mean, exact)
