"""Population contrastive losses, their factorization equivalents, and a
fixed-step gradient-descent optimizer for the low-rank factor F.

Rows of F represent u_x = sqrt(w_x) * f(x); the spectral-form losses take
the raw embedding values f(x) together with the graph, and differ from the
corresponding factorization losses by an offset that is constant in F.
"""

from dataclasses import dataclass, field

import numpy as np

from .graph import NormalizedGraph


class DivergenceError(RuntimeError):
    """Optimization diverged; retry with a smaller learning rate."""


@dataclass(frozen=True)
class OptimizeConfig:
    k: int
    steps: int = 5000
    learning_rate: float = 0.05
    init_scale: float = 0.1
    seed: int = 0
    tolerance: float = 1e-8

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")


def embedding_from_factor(F: np.ndarray, degrees: np.ndarray) -> np.ndarray:
    """Recover f(x) rows from F rows: f(x) = u_x / sqrt(w_x)."""
    return F / np.sqrt(degrees)[:, None]


def mf_loss(F: np.ndarray, target: np.ndarray) -> float:
    """|| target - F F^T ||_F^2."""
    if F.shape[0] != target.shape[0]:
        raise ValueError(
            f"row count mismatch: F has {F.shape[0]}, target {target.shape[0]}")
    diff = target - F @ F.T
    return float(np.sum(diff * diff))


def spectral_loss(f_values: np.ndarray, ng: NormalizedGraph) -> float:
    """-2 sum w_{xx'} f(x)^T f(x') + sum w_x w_{x'} (f(x)^T f(x'))^2."""
    if f_values.shape[0] != ng.graph.N:
        raise ValueError("f_values row count does not match the graph")
    gram = f_values @ f_values.T
    w = ng.degrees
    return float(-2 * np.sum(ng.graph.adjacency * gram)
                 + np.sum(np.outer(w, w) * gram ** 2))


def margin_mf_loss(F: np.ndarray, a_bar: np.ndarray, m_bar: np.ndarray) -> float:
    """|| (A_bar - M_bar) - F F^T ||_F^2."""
    return mf_loss(F, a_bar - m_bar)


def margin_spectral_loss(f_values: np.ndarray, ng: NormalizedGraph,
                         margin: np.ndarray) -> float:
    """Margin-shifted population loss over the graph distribution."""
    gram = f_values @ f_values.T
    w = ng.degrees
    return float(-2 * np.sum(ng.graph.adjacency * gram)
                 + np.sum(np.outer(w, w) * (gram + margin) ** 2))


def margin_offset(ng: NormalizedGraph, margin: np.ndarray) -> float:
    """The F-independent gap between the two margin-loss forms."""
    w = ng.graph.adjacency
    wx = ng.degrees
    return float(np.sum(2 * w * margin - w ** 2 / np.outer(wx, wx)))


def temperature_mf_loss(F: np.ndarray, a_bar: np.ndarray,
                        temperatures: np.ndarray) -> float:
    """Weighted Frobenius loss: sum (1/tau^2) ((T (*) A_bar) - F F^T)^2."""
    if np.any(temperatures <= 0):
        raise ValueError("temperature entries must be strictly positive")
    diff = temperatures * a_bar - F @ F.T
    return float(np.sum(diff * diff / temperatures ** 2))


def temperature_spectral_loss(f_values: np.ndarray, ng: NormalizedGraph,
                              temperatures: np.ndarray) -> float:
    """Temperature-scaled population loss over the graph distribution."""
    if np.any(temperatures <= 0):
        raise ValueError("temperature entries must be strictly positive")
    gram = f_values @ f_values.T
    w = ng.degrees
    return float(-2 * np.sum(ng.graph.adjacency / temperatures * gram)
                 + np.sum(np.outer(w, w) / temperatures ** 2 * gram ** 2))


def phi_tilde(ng: NormalizedGraph, temperatures: np.ndarray,
              labeling: np.ndarray) -> float:
    """sum over differently-labeled ordered pairs of w_{xx'} / tau_{xx'}^2."""
    differ = labeling[:, None] != labeling[None, :]
    return float(np.sum(ng.graph.adjacency[differ]
                        / temperatures[differ] ** 2))


def gradient(F: np.ndarray, target: np.ndarray,
             weights: np.ndarray | None = None) -> np.ndarray:
    """Analytic gradient of the (weighted) factorization loss w.r.t. F.

    Plain loss: 4 (F F^T - target) F. The weighted variant multiplies the
    residual entrywise by the (symmetric) weights before the product.
    """
    residual = F @ F.T - target
    if weights is not None:
        residual = residual * weights
    return 4 * residual @ F


@dataclass
class OptimizeResult:
    F: np.ndarray
    loss_trace: np.ndarray
    converged: bool
    steps_run: int = field(default=0)


def optimize(config: OptimizeConfig, target: np.ndarray,
             weights: np.ndarray | None = None) -> OptimizeResult:
    """Fixed-step gradient descent on the (weighted) factorization loss."""
    rng = np.random.default_rng(config.seed)
    N = target.shape[0]
    F = rng.uniform(-config.init_scale, config.init_scale, size=(N, config.k))

    def loss(Fc):
        diff = target - Fc @ Fc.T
        if weights is not None:
            return float(np.sum(diff * diff * weights))
        return float(np.sum(diff * diff))

    trace = np.empty(config.steps + 1)
    trace[0] = loss(F)
    rising = 0
    converged = False
    step = 0
    for step in range(1, config.steps + 1):
        grad = gradient(F, target, weights)
        F = F - config.learning_rate * grad
        trace[step] = loss(F)
        if not np.isfinite(trace[step]):
            raise DivergenceError(
                "loss became non-finite; use a smaller learning_rate")
        if trace[step] > trace[step - 1]:
            rising += 1
            if rising >= 50:
                raise DivergenceError(
                    "loss increased for 50 consecutive steps; "
                    "use a smaller learning_rate")
        else:
            rising = 0
        if np.linalg.norm(gradient(F, target, weights)) < config.tolerance:
            converged = True
            break
    return OptimizeResult(F=F, loss_trace=trace[:step + 1],
                          converged=converged, steps_run=step)


def psd_rank_k_residual(eigenvalues: np.ndarray, k: int) -> float:
    """Sum of squared eigenvalues excluded by the best PSD rank-k approximation.

    Negative eigenvalues can never be represented by F F^T, so they are
    always part of the residual.
    """
    vals = np.sort(np.asarray(eigenvalues))[::-1]
    kept = vals[:k]
    kept = kept[kept > 0]
    residual = np.sum(vals ** 2) - np.sum(kept ** 2)
    return float(residual)
