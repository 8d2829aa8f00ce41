"""End-to-end scenario runner: build graph, optimize the factor, fit the
probe on corrupted labels, and measure the degree-weighted error against
the matching bound."""

from dataclasses import dataclass

import numpy as np

from . import bounds as bounds_mod
from .corrections import (margin_matrix, normalized_margin, temperature_matrix)
from .factorize import OptimizeConfig, optimize
from .graph import GraphMode, build_adjacency, normalize
from .params import GraphParams, ValidationError
from .probe import ProbeResult, corrupt_labels, fit_linear_probe, probe_error

SCENARIOS = ("without", "with", "removed", "margin", "temperature")


@dataclass(frozen=True)
class ScenarioSetup:
    scenario: str
    target: np.ndarray
    weights: np.ndarray | None
    degrees: np.ndarray
    true_labels: np.ndarray
    num_classes: int


def scenario_setup(params: GraphParams, scenario: str) -> ScenarioSetup:
    """Factorization target, loss weights, and labels for one scenario."""
    if scenario not in SCENARIOS:
        raise ValidationError(f"unknown scenario {scenario!r}")
    mode = {"without": GraphMode.WITHOUT_DIFFICULT,
            "removed": GraphMode.REMOVED}.get(scenario, GraphMode.WITH_DIFFICULT)
    ng = normalize(build_adjacency(params, mode))
    target = ng.a_bar
    weights = None
    if scenario == "margin":
        target = ng.a_bar - normalized_margin(margin_matrix(params), ng.degrees)
    elif scenario == "temperature":
        t = temperature_matrix(params).entries
        target = t * ng.a_bar
        weights = 1.0 / t ** 2
    return ScenarioSetup(scenario=scenario, target=target, weights=weights,
                         degrees=ng.degrees, true_labels=ng.graph.class_of,
                         num_classes=params.r + 1)


def scenario_bound(params: GraphParams, scenario: str, delta: float,
                   k: int) -> float:
    if scenario == "without":
        return bounds_mod.bound_without(params, delta).bound_value
    if scenario == "with":
        return bounds_mod.bound_with(params, delta, k).bound_value
    if scenario == "removed":
        return bounds_mod.bound_removed(params, delta).bound_value
    if scenario == "margin":
        return bounds_mod.bound_margin(params, delta).bound_value
    if scenario == "temperature":
        return bounds_mod.bound_temperature(params, delta).bound_value
    raise ValidationError(f"unknown scenario {scenario!r}")


def optimize_scenario(params: GraphParams, scenario: str,
                      config: OptimizeConfig):
    setup = scenario_setup(params, scenario)
    result = optimize(config, setup.target, setup.weights)
    return setup, result


def run_probe(params: GraphParams, scenario: str, delta: float,
              label_seed: int, config: OptimizeConfig,
              ridge: float = 1e-6,
              precomputed=None) -> ProbeResult:
    """Full pipeline for one scenario and corruption seed.

    `precomputed` may carry an (setup, optimize_result) pair so the
    factorization is shared across corruption seeds.
    """
    if precomputed is None:
        setup, result = optimize_scenario(params, scenario, config)
    else:
        setup, result = precomputed
    fit_labels = corrupt_labels(setup.true_labels, setup.num_classes,
                                delta, label_seed)
    weights = fit_linear_probe(result.F, fit_labels, ridge=ridge)
    error = probe_error(result.F, weights, setup.true_labels, setup.degrees)
    return ProbeResult(probe_weights=weights, weighted_error=error,
                       delta_used=delta, scenario=scenario,
                       bound_value=scenario_bound(params, scenario, delta,
                                                  config.k))
