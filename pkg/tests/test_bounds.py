"""Linear-probing error bounds, orderings, and crossover thresholds."""

import math

import pytest

from simgraph import (GraphParams, ValidationError, bound_margin,
                      bound_removed, bound_temperature, bound_with,
                      bound_without, compare_bounds,
                      removal_crossover_threshold, temperature_nd_threshold)
from simgraph.bounds import with_strictly_worse

from conftest import P0, P1

DELTA = 0.01


def test_p0_bounds_frozen():
    assert bound_without(P0, DELTA).bound_value == pytest.approx(
        0.04 / (1 - 0.2 / 3.8) + 0.08, abs=1e-12)
    assert bound_without(P0, DELTA).bound_value == pytest.approx(0.1222222, abs=1e-7)
    assert bound_with(P0, DELTA, 2).bound_value == pytest.approx(0.1266667, abs=1e-7)
    assert bound_removed(P0, DELTA).bound_value == pytest.approx(0.1229630, abs=1e-7)
    temp = bound_temperature(P0, DELTA)
    assert temp.factor == pytest.approx(2.5, abs=1e-12)
    assert temp.bound_value == pytest.approx(0.1855556, abs=1e-7)


def test_p1_bounds_frozen():
    assert bound_without(P1, DELTA).bound_value == pytest.approx(0.1200889, abs=1e-7)
    assert bound_with(P1, DELTA, 2).bound_value == pytest.approx(0.1202667, abs=1e-7)
    temp = bound_temperature(P1, DELTA)
    assert temp.factor == pytest.approx(1.0024, abs=1e-7)
    assert temp.bound_value == pytest.approx(0.1201851, abs=1e-7)
    assert temp.bound_value < bound_with(P1, DELTA, 2).bound_value


def test_delta_zero_gives_zero(grid):
    for params in grid[:8]:
        assert bound_without(params, 0.0).bound_value == 0.0


def test_bound_value_at_least_8_delta(grid):
    for params in grid:
        assert bound_without(params, 0.03).bound_value >= 8 * 0.03 - 1e-15


def test_margin_equals_without_bitwise():
    base = bound_without(P0, DELTA)
    tuned = bound_margin(P0, DELTA)
    assert tuned.bound_value == base.bound_value
    assert tuned.lambda_term == base.lambda_term
    assert tuned.scenario == "margin_tuned"


def test_gamma_equals_beta_reduces_with_to_without():
    params = GraphParams(n=4, r=1, n_d=2, alpha=0.8, beta=0.1, gamma=0.1)
    gap = abs(bound_with(params, DELTA, 2).bound_value
              - bound_without(params, DELTA).bound_value)
    assert gap <= 1e-12


def test_with_strictly_worse_on_grid(grid):
    for params in grid:
        if params.n_d >= 1 and params.gamma > params.beta:
            assert with_strictly_worse(params, DELTA, params.r + 1)


def test_bound_with_monotone_in_gamma():
    previous = -math.inf
    for gamma in (0.2, 0.3, 0.4, 0.5, 0.6):
        params = GraphParams(n=4, r=1, n_d=1, alpha=0.8, beta=0.1, gamma=gamma)
        value = bound_with(params, DELTA, 2).bound_value
        assert value > previous
        previous = value


def test_bound_without_independent_of_gamma_and_nd():
    values = set()
    for gamma in (0.3, 0.5):
        for n_d in (0, 1, 2):
            params = GraphParams(n=4, r=1, n_d=n_d, alpha=0.8, beta=0.1,
                                 gamma=gamma)
            values.add(bound_without(params, DELTA).bound_value)
    assert len(values) == 1


def test_k_range_enforced():
    with pytest.raises(ValidationError):
        bound_with(P0, DELTA, 1)
    with pytest.raises(ValidationError):
        bound_with(P0, DELTA, 3)


def test_removed_preconditions():
    no_difficult = GraphParams(n=4, r=1, n_d=0, alpha=0.8, beta=0.1, gamma=0.5)
    with pytest.raises(ValidationError):
        bound_removed(no_difficult, DELTA)
    all_difficult = GraphParams(n=2, r=1, n_d=2, alpha=0.8, beta=0.1, gamma=0.5)
    with pytest.raises(ValidationError):
        bound_removed(all_difficult, DELTA)


def test_temperature_needs_positive_beta():
    params = GraphParams(n=4, r=1, n_d=1, alpha=0.8, beta=0.0, gamma=0.5)
    with pytest.raises(ValidationError):
        bound_temperature(params, DELTA)


def test_temperature_nd_zero_equals_without():
    params = GraphParams(n=4, r=1, n_d=0, alpha=0.8, beta=0.1, gamma=0.5)
    rep = bound_temperature(params, DELTA)
    assert rep.factor == 1.0
    assert rep.bound_value == bound_without(params, DELTA).bound_value


def test_removal_crossover_threshold_frozen():
    assert removal_crossover_threshold(P0) == pytest.approx(0.26 / 2.9, abs=1e-12)
    assert removal_crossover_threshold(P0) == pytest.approx(0.0896552, abs=1e-7)
    # P0's gamma - beta = 0.4 exceeds the threshold, so removal wins.
    assert bound_removed(P0, DELTA).bound_value < bound_with(P0, DELTA, 2).bound_value


def test_crossover_agreement_at_the_root():
    # At gamma - beta exactly equal to the (fixed-point) threshold the two
    # bounds agree to 1e-10.
    params = P0
    gamma = params.gamma
    for _ in range(200):
        t = removal_crossover_threshold(
            GraphParams(n=params.n, r=params.r, n_d=params.n_d,
                        alpha=params.alpha, beta=params.beta, gamma=gamma))
        gamma = params.beta + t
    at_root = GraphParams(n=params.n, r=params.r, n_d=params.n_d,
                          alpha=params.alpha, beta=params.beta, gamma=gamma)
    gap = abs(bound_with(at_root, DELTA, 2).bound_value
              - bound_removed(at_root, DELTA).bound_value)
    assert gap <= 1e-10


def test_temperature_nd_threshold_frozen():
    assert temperature_nd_threshold(P0) == pytest.approx(
        math.sqrt(1 / 0.54) * 0.1 * 2, abs=1e-12)
    assert temperature_nd_threshold(P0) == pytest.approx(0.2721655, abs=1e-7)
    assert temperature_nd_threshold(P1) == pytest.approx(1.3608276, abs=1e-7)
    # Consistency: n_d=1 exceeds P0's threshold (temperature loses) but sits
    # below P1's (temperature wins).
    assert bound_temperature(P0, DELTA).bound_value > bound_with(P0, DELTA, 2).bound_value
    assert bound_temperature(P1, DELTA).bound_value < bound_with(P1, DELTA, 2).bound_value


def test_compare_bounds_p0_ordering():
    reports = compare_bounds(P0, DELTA, 2)
    order = [rep.scenario for rep in reports]
    assert order.index("without_difficult") < order.index("removed")
    assert order.index("removed") < order.index("with_difficult")
    assert order.index("with_difficult") < order.index("temperature_scaled")
    values = [rep.bound_value for rep in reports]
    assert values == sorted(values)


def test_compare_bounds_p1_ordering():
    order = [rep.scenario for rep in compare_bounds(P1, DELTA, 2)]
    assert order.index("without_difficult") < order.index("temperature_scaled")
    assert order.index("temperature_scaled") < order.index("with_difficult")


def test_compare_bounds_all_coincide_in_degenerate_limit():
    # gamma = beta and n_d = 0: every applicable bound equals bound_without.
    params = GraphParams(n=4, r=1, n_d=0, alpha=0.8, beta=0.1, gamma=0.1)
    reports = compare_bounds(params, DELTA, 2)
    base = bound_without(params, DELTA).bound_value
    assert {rep.scenario for rep in reports} == {
        "without_difficult", "temperature_scaled", "margin_tuned"}
    for rep in reports:
        assert rep.bound_value == pytest.approx(base, abs=1e-15)


def test_exceeds_one_flag():
    assert not bound_without(P0, 0.01).exceeds_one
    assert bound_without(P0, 0.2).exceeds_one
