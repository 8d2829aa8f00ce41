"""Margin and temperature correction matrices.

Both corrections, built from closed-form piecewise entries, restore the
normalized no-difficult similarity matrix exactly: A_bar - M_bar and
T (*) A_bar both equal the c2-normalized target entrywise. The restoration
identity is the authoritative check of the piecewise tables and of the
M_bar = D^{1/2} M D^{1/2} normalization convention.
"""

from dataclasses import dataclass

import numpy as np

from .graph import GraphMode, build_adjacency, normalize, without_difficult_target
from .params import GraphParams, ValidationError, degree_constants


@dataclass(frozen=True)
class MarginMatrix:
    entries: np.ndarray
    params: GraphParams


@dataclass(frozen=True)
class TemperatureMatrix:
    entries: np.ndarray
    params: GraphParams


def _masks(params: GraphParams):
    num_classes = params.r + 1
    class_of = np.repeat(np.arange(num_classes), params.n)
    hard = np.zeros(params.n, dtype=bool)
    if params.n_d > 0:
        hard[params.n - params.n_d:] = True
    hard = np.tile(hard, num_classes)
    same = class_of[:, None] == class_of[None, :]
    both_hard = hard[:, None] & hard[None, :]
    one_hard = hard[:, None] ^ hard[None, :]
    return same, both_hard, one_hard


def margin_matrix(params: GraphParams) -> MarginMatrix:
    """Piecewise margin entries m_{x,x'}; zero wherever neither sample is
    difficult. n_d = 0 gives the all-zero matrix."""
    params.validate()
    dc = degree_constants(params)
    c0, c1, c2 = dc.c0, dc.c1, dc.c2
    g = params.gamma - params.beta
    same, both_hard, one_hard = _masks(params)

    diag_hard = -params.n_d * params.r * g / (c1 ** 2 * c2)
    mixed_scale = -(np.sqrt(c1 / c2) - 1) / (c1 * c2)

    m = np.zeros_like(same, dtype=float)
    m[same & both_hard] = params.alpha * diag_hard        # same class, both hard
    m[same & one_hard] = params.alpha * mixed_scale       # same class, one hard
    m[~same & both_hard] = c0 * g / (c1 ** 2 * c2)        # cross class, both hard
    m[~same & one_hard] = params.beta * mixed_scale       # cross class, one hard
    np.fill_diagonal(m, np.where(np.diag(both_hard), diag_hard, 0.0))
    return MarginMatrix(entries=m, params=params)


def temperature_matrix(params: GraphParams) -> TemperatureMatrix:
    """Piecewise temperature entries tau_{x,x'}; one wherever neither sample
    is difficult."""
    params.validate()
    if params.beta == 0:
        raise ValidationError("temperature matrix needs beta > 0")
    dc = degree_constants(params)
    ratio = dc.c1 / dc.c2
    same, both_hard, one_hard = _masks(params)

    t = np.ones_like(same, dtype=float)
    t[same & both_hard] = ratio                                  # incl. hard diagonal
    t[one_hard] = np.sqrt(ratio)
    t[~same & both_hard] = ratio * params.beta / params.gamma
    np.fill_diagonal(t, np.where(np.diag(both_hard), ratio, 1.0))
    return TemperatureMatrix(entries=t, params=params)


def normalized_margin(margin: MarginMatrix, degrees: np.ndarray) -> np.ndarray:
    """M_bar = D^{1/2} M D^{1/2} (opposite exponent to A_bar's)."""
    s = np.sqrt(degrees)
    return margin.entries * np.outer(s, s)


def verify_margin_correction(params: GraphParams) -> float:
    """Max entrywise deviation of (A_bar - M_bar) from the no-difficult target."""
    ng = normalize(build_adjacency(params, GraphMode.WITH_DIFFICULT))
    m_bar = normalized_margin(margin_matrix(params), ng.degrees)
    deviation = (ng.a_bar - m_bar) - without_difficult_target(params)
    return float(np.max(np.abs(deviation)))


def verify_temperature_correction(params: GraphParams) -> float:
    """Max entrywise deviation of T (*) A_bar from the no-difficult target."""
    ng = normalize(build_adjacency(params, GraphMode.WITH_DIFFICULT))
    t = temperature_matrix(params).entries
    deviation = t * ng.a_bar - without_difficult_target(params)
    return float(np.max(np.abs(deviation)))
