"""Exact enumeration: probability mass, closed forms, and error paths."""

import pytest

from perc_lab.analytic import ModelParams
from perc_lab.oracle import (
    MAX_ORACLE_N,
    enumerate_outcomes,
    exact_expected_susceptibilities,
    exact_root_component_distribution,
)


@pytest.mark.parametrize("pi", [0.1, 0.5])
@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_probabilities_sum_to_one(pi, n):
    states = enumerate_outcomes(ModelParams(2, pi), n)
    assert sum(states.values()) == pytest.approx(1.0, abs=1e-12)


def test_single_vertex_is_trivial():
    e_s2, e_s3 = exact_expected_susceptibilities(ModelParams(2, 0.37), 1)
    assert e_s2 == 1.0 and e_s3 == 1.0


@pytest.mark.parametrize("pi", [0.0, 0.1, 0.3, 0.5, 0.9])
def test_two_vertex_closed_forms(pi):
    # S2(2) is 1 on {no edges} and 2 otherwise; S3(2) is 1 or 4
    e_s2, e_s3 = exact_expected_susceptibilities(ModelParams(2, pi), 2)
    q = (1 - pi) ** 2
    assert e_s2 == pytest.approx(2 - q, abs=1e-12)
    assert e_s3 == pytest.approx(4 - 3 * q, abs=1e-12)


def test_example_values():
    assert exact_expected_susceptibilities(ModelParams(2, 0.1), 2)[0] == pytest.approx(
        1.19, abs=1e-12
    )
    assert exact_expected_susceptibilities(ModelParams(2, 0.5), 2)[0] == pytest.approx(
        1.75, abs=1e-12
    )


def test_root_distribution_examples():
    pmf = exact_root_component_distribution(ModelParams(2, 0.1), 2, 1)
    assert pmf[1] == pytest.approx(0.81, abs=1e-12)
    assert pmf[2] == pytest.approx(0.19, abs=1e-12)
    assert exact_root_component_distribution(ModelParams(2, 0.0), 4, 1) == {1: 1.0}
    pmf = exact_root_component_distribution(ModelParams(2, 1.0), 4, 1)
    assert set(pmf) == {4}
    assert pmf[4] == pytest.approx(1.0, abs=1e-12)


def test_pmf_sums_to_one_everywhere():
    for v in range(1, 6):
        pmf = exact_root_component_distribution(ModelParams(2, 0.3), 5, v)
        assert sum(pmf.values()) == pytest.approx(1.0, abs=1e-12)


def test_expected_s2_monotone_in_pi():
    for n in (3, 5):
        values = [
            exact_expected_susceptibilities(ModelParams(2, pi), n)[0]
            for pi in (0.0, 0.1, 0.2, 0.4, 0.6, 0.8, 1.0)
        ]
        assert all(b >= a for a, b in zip(values, values[1:]))


def test_rejects_out_of_range():
    with pytest.raises(ValueError):
        exact_expected_susceptibilities(ModelParams(2, 0.1), MAX_ORACLE_N + 1)
    with pytest.raises(ValueError):
        exact_expected_susceptibilities(ModelParams(2, 0.1), 0)
    with pytest.raises(ValueError):
        exact_expected_susceptibilities(ModelParams(3, 0.05), 3)
    with pytest.raises(ValueError):
        exact_root_component_distribution(ModelParams(2, 0.1), 3, 4)
    with pytest.raises(ValueError):
        exact_root_component_distribution(ModelParams(2, 0.1), 3, 0)
