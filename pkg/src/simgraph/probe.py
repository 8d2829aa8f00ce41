"""Linear probing with injected labeling error, and Welch's t-test.

The labeling error delta is realized as corruption of a fixed fraction of
the finite sample set; the probe is fit on corrupted labels and evaluated
against the true ones with degree weights, matching the population error
the bounds control.
"""

import math
from dataclasses import dataclass

import numpy as np

from .params import GraphParams, ValidationError


class SingularProbeError(np.linalg.LinAlgError):
    """Normal equations singular; pass ridge > 0."""


class DegenerateSampleError(ValueError):
    """Both samples have zero variance; the Welch statistic is undefined."""


@dataclass(frozen=True)
class ProbeResult:
    probe_weights: np.ndarray   # (classes, k)
    weighted_error: float
    delta_used: float
    scenario: str = ""
    bound_value: float = float("nan")

    @property
    def within_bound(self) -> bool:
        return self.weighted_error <= self.bound_value


def block_labels(num_classes: int, per_class: int) -> np.ndarray:
    return np.repeat(np.arange(num_classes), per_class)


def corrupt_labels(true_labels: np.ndarray, num_classes: int, delta: float,
                   seed: int) -> np.ndarray:
    """Reassign exactly round(delta * N) samples to a uniformly-chosen wrong
    class, deterministically per seed."""
    if not 0 <= delta <= 0.5:
        raise ValidationError(f"delta must lie in [0, 0.5], got {delta}")
    labels = np.array(true_labels, copy=True)
    n_corrupt = int(round(delta * len(labels)))
    if n_corrupt == 0:
        return labels
    rng = np.random.default_rng(seed)
    idx = rng.choice(len(labels), size=n_corrupt, replace=False)
    shift = rng.integers(1, num_classes, size=n_corrupt)
    labels[idx] = (labels[idx] + shift) % num_classes
    return labels


def generate_labels(params: GraphParams, delta: float, seed: int,
                    per_class: int | None = None) -> np.ndarray:
    """Ground-truth block labels with delta-fraction corruption."""
    per_class = params.n if per_class is None else per_class
    truth = block_labels(params.r + 1, per_class)
    return corrupt_labels(truth, params.r + 1, delta, seed)


def fit_linear_probe(F: np.ndarray, labels: np.ndarray,
                     ridge: float = 1e-6) -> np.ndarray:
    """Ridge least-squares fit of one-hot labels on embedding rows.

    Returns B with shape (classes, k); prediction is argmax of B f(x),
    ties broken toward the lower class index.
    """
    if ridge < 0:
        raise ValidationError("ridge must be >= 0")
    n, k = F.shape
    num_classes = int(np.max(labels)) + 1
    onehot = np.zeros((n, num_classes))
    onehot[np.arange(n), labels] = 1.0
    normal = F.T @ F + ridge * np.eye(k)
    if ridge == 0 and np.linalg.matrix_rank(normal) < k:
        raise SingularProbeError(
            "singular normal equations with ridge=0; pass ridge > 0")
    coeffs = np.linalg.solve(normal, F.T @ onehot)  # (k, classes)
    return coeffs.T


def predict(F: np.ndarray, probe_weights: np.ndarray) -> np.ndarray:
    scores = F @ probe_weights.T
    return np.argmax(scores, axis=1)  # argmax takes the lowest index on ties


def probe_error(F: np.ndarray, probe_weights: np.ndarray,
                true_labels: np.ndarray, degrees: np.ndarray) -> float:
    """Degree-weighted misclassification rate, weights w_x / sum(w)."""
    wrong = predict(F, probe_weights) != np.asarray(true_labels)
    return float(np.sum(degrees[wrong]) / np.sum(degrees))


def welch_t_test(sample_a, sample_b):
    """Welch's t statistic, Welch-Satterthwaite dof, and two-sided p-value."""
    a = np.asarray(sample_a, dtype=float)
    b = np.asarray(sample_b, dtype=float)
    if len(a) < 2 or len(b) < 2:
        raise ValidationError("each sample needs size >= 2")
    va = np.var(a, ddof=1)
    vb = np.var(b, ddof=1)
    if va == 0 and vb == 0:
        raise DegenerateSampleError("both samples have zero variance")
    sa, sb = va / len(a), vb / len(b)
    t = (np.mean(a) - np.mean(b)) / math.sqrt(sa + sb)
    dof = (sa + sb) ** 2 / (sa ** 2 / (len(a) - 1) + sb ** 2 / (len(b) - 1))
    p = student_t_two_sided_p(t, dof)
    return float(t), float(dof), float(p)


def student_t_two_sided_p(t: float, dof: float) -> float:
    """Two-sided tail probability of Student's t via the incomplete beta."""
    x = dof / (dof + t * t)
    return regularized_incomplete_beta(dof / 2.0, 0.5, x)


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) by the continued-fraction expansion (Lentz's method)."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                + a * math.log(x) + b * math.log1p(-x))
    front = math.exp(ln_front)
    if x < (a + 1) / (a + b + 2):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, 1.0 - x) / b


def _beta_cf(a: float, b: float, x: float, max_iter: int = 300,
             eps: float = 1e-14) -> float:
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        num = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + num * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + num / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        num = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + num * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + num / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            break
    return h
