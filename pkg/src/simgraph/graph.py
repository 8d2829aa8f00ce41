"""Construction and normalization of the structured similarity graphs.

Canonical sample layout: class-major blocks of size n, with the n_d
difficult samples placed *last* within each class block. All downstream
index arithmetic relies on this ordering.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .params import GraphParams, ValidationError, degree_constants


class GraphMode(enum.Enum):
    WITHOUT_DIFFICULT = "without_difficult"
    WITH_DIFFICULT = "with_difficult"
    REMOVED = "removed"


@dataclass(frozen=True)
class SimilarityGraph:
    mode: GraphMode
    adjacency: np.ndarray      # (N, N) symmetric, unit diagonal
    class_of: np.ndarray       # (N,) class index per sample
    is_difficult: np.ndarray   # (N,) bool

    @property
    def N(self) -> int:
        return self.adjacency.shape[0]


@dataclass(frozen=True)
class NormalizedGraph:
    graph: SimilarityGraph
    degrees: np.ndarray  # (N,) row sums w_x
    a_bar: np.ndarray    # (N, N) D^{-1/2} A D^{-1/2}


def build_adjacency(params: GraphParams, mode: GraphMode) -> SimilarityGraph:
    """Build the dense adjacency matrix for one of the three graph modes.

    Entry rules: 1 on the diagonal, alpha within a class, gamma between
    difficult samples of different classes (WITH_DIFFICULT only), beta
    otherwise. REMOVED drops the difficult samples entirely, giving the
    WITHOUT_DIFFICULT graph with n - n_d samples per class.
    """
    params.validate()
    if mode is GraphMode.WITH_DIFFICULT:
        params.validate_kappa()

    if mode is GraphMode.REMOVED:
        n_eff = params.n - params.n_d
        if n_eff < 1:
            raise ValidationError("removal leaves no samples per class")
        n_hard = 0
    else:
        n_eff = params.n
        n_hard = params.n_d if mode is GraphMode.WITH_DIFFICULT else 0

    num_classes = params.r + 1
    class_of = np.repeat(np.arange(num_classes), n_eff)
    within = np.zeros(n_eff, dtype=bool)
    if n_hard > 0:
        within[n_eff - n_hard:] = True
    is_difficult = np.tile(within, num_classes)

    same_class = class_of[:, None] == class_of[None, :]
    adjacency = np.where(same_class, params.alpha, params.beta)
    if n_hard > 0:
        hard_pair = is_difficult[:, None] & is_difficult[None, :]
        adjacency[hard_pair & ~same_class] = params.gamma
    np.fill_diagonal(adjacency, 1.0)

    return SimilarityGraph(mode=mode, adjacency=adjacency,
                           class_of=class_of, is_difficult=is_difficult)


def normalize(graph: SimilarityGraph) -> NormalizedGraph:
    """Degrees (exact row sums) and A_bar = D^{-1/2} A D^{-1/2}."""
    degrees = graph.adjacency.sum(axis=1)
    inv_sqrt = 1.0 / np.sqrt(degrees)
    a_bar = graph.adjacency * np.outer(inv_sqrt, inv_sqrt)
    return NormalizedGraph(graph=graph, degrees=degrees, a_bar=a_bar)


def without_difficult_target(params: GraphParams) -> np.ndarray:
    """The c2-normalized no-difficult matrix on the WITH_DIFFICULT layout.

    This is the common restoration target of the margin and temperature
    corrections: 1/c2 on the diagonal, alpha/c2 within a class, beta/c2
    across classes, at the full size n(r+1).
    """
    c2 = degree_constants(params).c2
    class_of = np.repeat(np.arange(params.r + 1), params.n)
    same = class_of[:, None] == class_of[None, :]
    target = np.where(same, params.alpha / c2, params.beta / c2)
    np.fill_diagonal(target, 1.0 / c2)
    return target
