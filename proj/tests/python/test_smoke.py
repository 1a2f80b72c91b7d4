"""Smoke tests for the python bindings: exact values survive the boundary."""

from fractions import Fraction

import pytest

import qsalloc


@pytest.fixture
def cluster():
    return qsalloc.SystemConfig(n_nodes=30, file_blocks=1, redundancy=2, node_rate="1")


def test_valid_alphas(cluster):
    assert qsalloc.valid_alphas(cluster, qsalloc.fixed_access(5)) == [1, 2, 3, 4, 5]
    assert qsalloc.valid_alphas(cluster, qsalloc.probabilistic_access("0.5")) == list(
        range(1, 16)
    )


def test_exact_service_rates(cluster):
    fixed = qsalloc.fixed_access(5)
    assert qsalloc.service_rate(cluster, fixed, alpha=1).value == Fraction(1, 3)
    assert qsalloc.service_rate(cluster, fixed, alpha=2).value == Fraction(42016, 498771)

    prob = qsalloc.probabilistic_access(Fraction(1, 2))
    result = qsalloc.service_rate(cluster, prob, alpha=2)
    assert result.value == Fraction(23, 35)
    # the decomposition reassembles exactly
    assert sum(p * r for p, r in result.per_k_terms.values()) == Fraction(23, 35)


def test_success_prob_and_bounds(cluster):
    fixed = qsalloc.fixed_access(5)
    assert qsalloc.success_prob(cluster, fixed, alpha=1) == Fraction(9, 29)
    assert qsalloc.minimal_spreading_rate(cluster, fixed) == Fraction(1, 3)
    assert qsalloc.rate_upper_bound(cluster, fixed, alpha=2) == Fraction(1, 3)
    assert qsalloc.conditional_service_time(2, 3, "1") == Fraction(5, 6)
    assert qsalloc.per_k_bound(2, 3, "1") == Fraction(3, 2)


def test_optimal_alpha(cluster):
    alpha, rate = qsalloc.optimal_alpha(cluster, qsalloc.fixed_access(5))
    assert alpha == 1
    assert rate == Fraction(1, 3)


def test_enumeration_matches_analytics():
    small = qsalloc.SystemConfig(6, 1, 2, "1")
    prob = qsalloc.probabilistic_access("0.5")
    assert qsalloc.enumerate_service_rate(small, prob, alpha=2) == Fraction(23, 35)
    blocks = ["1", "1", "0", "0", "0", "0"]
    assert qsalloc.enumerate_success_prob(small, qsalloc.fixed_access(3), blocks) == Fraction(
        4, 5
    )


def test_combinatorics():
    assert qsalloc.binomial(30, 5) == 142506
    assert qsalloc.hypergeom_pmf(1, 30, 2, 5) == Fraction(25, 87)
    assert qsalloc.binom_pmf(2, 4, "0.5") == Fraction(3, 8)
    assert qsalloc.vandermonde_check(2, 30, 5)


def test_simulation_determinism(cluster):
    fixed = qsalloc.fixed_access(5)
    a = qsalloc.simulate(cluster, fixed, alpha=1, trials=40000, seed=42)
    b = qsalloc.simulate(cluster, fixed, alpha=1, trials=40000, seed=42, workers=4)
    assert a.combined_rate == b.combined_rate
    assert a.k_histogram == b.k_histogram
    assert a.analytic_reference == Fraction(1, 3)
    assert abs(a.combined_rate - 1 / 3) / (1 / 3) < 0.05
    assert sum(a.k_histogram.values()) == 40000


def test_validation_errors(cluster):
    with pytest.raises(ValueError):
        qsalloc.SystemConfig(4, 1, 5, "1")  # m > n
    with pytest.raises(ValueError):
        qsalloc.make_allocation(cluster, qsalloc.fixed_access(5), 6)  # alpha > r
    with pytest.raises(TypeError):
        qsalloc.probabilistic_access(0.5)  # floats are refused
    with pytest.raises(ValueError):
        qsalloc.service_rate(cluster, qsalloc.probabilistic_access("1.5"), 1)


def test_figure_csv():
    csv = qsalloc.figure_csv(2)
    assert csv.splitlines()[1].startswith("sweep_var,alpha,beta")
    assert "budget_m,1,2,2,30,5,1/1,9/29," in csv
    assert csv == qsalloc.figure_csv(2)
