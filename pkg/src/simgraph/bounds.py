"""Linear-probing error bounds and the two crossover thresholds.

Every bound takes the form factor * 4*delta / (1 - lambda_term) + 8*delta,
with factor = 1 except for the temperature-scaled bound. Bounds may exceed
1; they are reported raw with an `exceeds_one` flag because the comparisons
between them stay meaningful.
"""

import math
from dataclasses import dataclass

from .params import GraphParams, ValidationError, degree_constants, removed_degree

SCENARIOS = ("without_difficult", "with_difficult", "removed",
             "temperature_scaled", "margin_tuned")


@dataclass(frozen=True)
class BoundReport:
    scenario: str
    delta: float
    k: int | None
    lambda_term: float
    factor: float
    bound_value: float

    @property
    def exceeds_one(self) -> bool:
        return self.bound_value > 1.0


def _check_delta(delta):
    if not 0 <= delta <= 1:
        raise ValidationError(f"delta must lie in [0, 1], got {delta}")


def _soft_validate(params: GraphParams):
    # Bounds tolerate the gamma = beta limit (the with-difficult bound
    # reduces to the no-difficult one there), so only weak ordering of
    # beta and gamma is enforced.
    if params.n < 1 or params.r < 1 or not 0 <= params.n_d <= params.n:
        raise ValidationError("invalid counts")
    if not (0 <= params.beta <= params.gamma < params.alpha < 1):
        raise ValidationError(
            "violated 0 <= beta <= gamma < alpha < 1 for bound evaluation")


def _report(scenario, delta, k, lambda_term, factor=1.0) -> BoundReport:
    value = factor * 4 * delta / (1 - lambda_term) + 8 * delta
    return BoundReport(scenario=scenario, delta=delta, k=k,
                       lambda_term=lambda_term, factor=factor,
                       bound_value=value)


def bound_without(params: GraphParams, delta: float) -> BoundReport:
    _soft_validate(params)
    _check_delta(delta)
    c2 = degree_constants(params).c2
    return _report("without_difficult", delta, None, (1 - params.alpha) / c2)


def bound_with(params: GraphParams, delta: float, k: int) -> BoundReport:
    _soft_validate(params)
    _check_delta(delta)
    if not params.r + 1 <= k < params.n_d + params.r + 1:
        raise ValidationError(
            f"k={k} outside the valid range {params.r + 1} <= k < "
            f"{params.n_d + params.r + 1}")
    c1 = degree_constants(params).c1
    lam = ((1 - params.alpha) + params.r * (params.gamma - params.beta)) / c1
    return _report("with_difficult", delta, k, lam)


def bound_removed(params: GraphParams, delta: float) -> BoundReport:
    _soft_validate(params)
    _check_delta(delta)
    if params.n_d < 1:
        raise ValidationError("nothing to remove: n_d = 0")
    if params.n_d >= params.n:
        raise ValidationError("removal leaves an empty dataset: n_d = n")
    lam = (1 - params.alpha) / removed_degree(params)
    return _report("removed", delta, None, lam)


def bound_temperature(params: GraphParams, delta: float) -> BoundReport:
    _soft_validate(params)
    _check_delta(delta)
    if params.beta == 0:
        raise ValidationError("temperature bound needs beta > 0 (gamma/beta ratio)")
    c2 = degree_constants(params).c2
    ratio = params.n_d / params.n
    factor = 1 - ratio ** 2 + (params.gamma / params.beta) ** 2 * ratio ** 2
    return _report("temperature_scaled", delta, None,
                   (1 - params.alpha) / c2, factor=factor)


def bound_margin(params: GraphParams, delta: float) -> BoundReport:
    """Margin tuning restores the no-difficult bound exactly."""
    base = bound_without(params, delta)
    return BoundReport(scenario="margin_tuned", delta=delta, k=None,
                       lambda_term=base.lambda_term, factor=base.factor,
                       bound_value=base.bound_value)


def removal_crossover_threshold(params: GraphParams) -> float:
    """Threshold on gamma - beta above which removal beats keeping.

    bound_removed < bound_with iff gamma - beta strictly exceeds this value.
    """
    _soft_validate(params)
    if params.n_d < 1:
        raise ValidationError("threshold needs n_d >= 1")
    a, b, g, r = params.alpha, params.beta, params.gamma, params.r
    num = params.n_d * (1 - a) * (a + r * g)
    den = r * ((1 - a) + (params.n - params.n_d) * (a + r * b))
    return num / den


def temperature_nd_threshold(params: GraphParams) -> float:
    """n_d value below which temperature scaling beats the uncorrected bound."""
    _soft_validate(params)
    a, b, g, r = params.alpha, params.beta, params.gamma, params.r
    return math.sqrt(r / ((a + r * b) * (g + b))) * b * math.sqrt(params.n)


def compare_bounds(params: GraphParams, delta: float, k: int) -> list[BoundReport]:
    """All applicable bounds on shared parameters, sorted ascending."""
    reports = [bound_without(params, delta)]
    if params.n_d >= 1:
        reports.append(bound_with(params, delta, k))
        if params.n_d < params.n:
            reports.append(bound_removed(params, delta))
    if params.beta > 0:
        reports.append(bound_temperature(params, delta))
    reports.append(bound_margin(params, delta))
    return sorted(reports, key=lambda rep: rep.bound_value)


def with_strictly_worse(params: GraphParams, delta: float, k: int) -> bool:
    """The central ordering claim: the with-difficult bound strictly exceeds
    the no-difficult bound (true whenever gamma > beta and n_d >= 1)."""
    return (bound_with(params, delta, k).bound_value
            > bound_without(params, delta).bound_value)
