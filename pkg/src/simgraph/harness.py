"""Synthetic contrastive-training harness: a boundary-mixing dataset
generator, percentile-based selection of difficult pairs, five pairwise
loss variants sharing one softmax skeleton, and a seeded training loop
for a linear encoder with output normalization.

All gradients are analytic; the selection matrix is recomputed every step
from current features but held constant inside each gradient (the
indicator is not differentiable).
"""

from dataclasses import dataclass, field

import numpy as np

from .factorize import DivergenceError
from .params import ValidationError
from .probe import fit_linear_probe, predict

VARIANTS = ("baseline", "removal", "margin", "temperature", "combined")


@dataclass(frozen=True)
class SyntheticDataset:
    points: np.ndarray          # (N, d)
    labels: np.ndarray          # (N,)
    difficult_mask: np.ndarray  # (N,) bool
    mix_ratio: float

    @property
    def N(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class SelectionMatrix:
    P: np.ndarray               # (2N, 2N) binary, zero diagonal
    sim_pos_high: float
    sim_pos_low: float
    pos_high: float
    pos_low: float


@dataclass(frozen=True)
class TrainConfig:
    batch_size: int             # N samples per batch (2N views)
    tau: float
    sigma: float = 0.0
    rho: float = 1.0
    pos_high: float = 0.25
    pos_low: float = 0.75
    epochs: int = 10
    learning_rate: float = 0.1
    seed: int = 0
    input_dim: int = 8
    embed_dim: int = 4
    jitter: float = 0.1

    def __post_init__(self):
        if self.tau <= 0:
            raise ValidationError("tau must be positive")
        if self.sigma < 0:
            raise ValidationError("sigma must be >= 0")
        if self.rho <= 0:
            raise ValidationError("rho must be positive")
        if not 0 <= self.pos_high < self.pos_low <= 1:
            raise ValidationError(
                "need 0 <= pos_high < pos_low <= 1, got "
                f"pos_high={self.pos_high}, pos_low={self.pos_low}")
        if self.batch_size < 1 or self.epochs < 0:
            raise ValidationError("batch_size >= 1 and epochs >= 0 required")
        if self.learning_rate <= 0:
            raise ValidationError("learning_rate must be positive")
        if self.jitter < 0:
            raise ValidationError("jitter must be >= 0")


@dataclass
class TrainMetrics:
    loss: np.ndarray                 # per-epoch mean batch loss
    probe_accuracy: np.ndarray       # per-epoch linear-probe accuracy
    diff_class_ratio: np.ndarray     # per-epoch selection diagnostic
    variant: str = ""


def make_dataset(classes: int, per_class: int, d: int, separation: float,
                 mix_ratio: float, seed: int) -> SyntheticDataset:
    """Gaussian class clusters at separation * (unit directions); a
    mix_ratio fraction of each class is replaced by cross-class convex
    mixtures (coefficient in [0.4, 0.6]) and flagged difficult."""
    if not 0 <= mix_ratio < 1:
        raise ValidationError(f"mix_ratio must lie in [0, 1), got {mix_ratio}")
    if d < classes:
        raise ValidationError("need d >= classes for orthogonal cluster means")
    rng = np.random.default_rng(seed)
    means = separation * np.eye(classes, d)
    labels = np.repeat(np.arange(classes), per_class)
    points = means[labels] + rng.standard_normal((classes * per_class, d))
    difficult = np.zeros(len(labels), dtype=bool)
    n_mix = int(round(mix_ratio * per_class))
    for c in range(classes):
        if n_mix == 0:
            break
        idx = c * per_class + rng.choice(per_class, size=n_mix, replace=False)
        others = rng.choice(np.setdiff1d(np.arange(classes), [c]), size=n_mix)
        own = means[c] + rng.standard_normal((n_mix, d))
        cross = means[others] + rng.standard_normal((n_mix, d))
        lam = rng.uniform(0.4, 0.6, size=n_mix)[:, None]
        points[idx] = lam * own + (1 - lam) * cross
        difficult[idx] = True
    return SyntheticDataset(points=points, labels=labels,
                            difficult_mask=difficult, mix_ratio=mix_ratio)


def augment(point: np.ndarray, jitter: float, seed) -> tuple:
    """Two independent Gaussian-jitter views of one point."""
    if jitter < 0:
        raise ValidationError("jitter must be >= 0")
    rng = seed if isinstance(seed, np.random.Generator) \
        else np.random.default_rng(seed)
    noise = jitter * rng.standard_normal((2, len(point)))
    return point + noise[0], point + noise[1]


def cosine_similarity_matrix(embeddings: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(embeddings, axis=1)
    if np.any(norms == 0):
        raise ValidationError("zero-norm row in embeddings")
    z = embeddings / norms[:, None]
    s = z @ z.T
    np.fill_diagonal(s, 1.0)
    return s


def select_pairs(S: np.ndarray, pos_high: float, pos_low: float) -> SelectionMatrix:
    """Percentile selection on the descending sort of off-diagonal
    similarities: thresholds at index floor(pos * (count - 1)), selected
    iff sim_pos_low <= s < sim_pos_high."""
    if not (0 <= pos_high <= 1 and 0 <= pos_low <= 1):
        raise ValidationError("pos_high and pos_low must lie in [0, 1]")
    off = S[~np.eye(S.shape[0], dtype=bool)]
    ordered = np.sort(off)[::-1]
    count = len(ordered)
    sim_high = float(ordered[int(np.floor(pos_high * (count - 1)))])
    sim_low = float(ordered[int(np.floor(pos_low * (count - 1)))])
    P = ((S >= sim_low) & (S < sim_high)).astype(float)
    np.fill_diagonal(P, 0.0)
    return SelectionMatrix(P=P, sim_pos_high=sim_high, sim_pos_low=sim_low,
                           pos_high=pos_high, pos_low=pos_low)


def variant_logits(S: np.ndarray, P: np.ndarray, variant: str, tau: float,
                   sigma: float, rho: float):
    """Pairwise logits H and the entrywise dH/dS coefficient.

    baseline     s / tau
    removal      s (1 - p) / tau
    margin       (s + p sigma) / tau
    temperature  s / ((p rho + (1 - p)) tau)
    combined     (s + p sigma) / ((p rho + (1 - p)) tau)
    """
    if variant not in VARIANTS:
        raise ValidationError(f"unknown variant {variant!r}; "
                              f"expected one of {VARIANTS}")
    if tau <= 0:
        raise ValidationError("tau must be positive")
    if rho <= 0:
        raise ValidationError("rho must be positive")
    if variant == "removal":
        coef = (1.0 - P) / tau
        return S * coef, coef
    shift = sigma * P if variant in ("margin", "combined") else 0.0
    if variant in ("temperature", "combined"):
        coef = 1.0 / ((P * rho + (1.0 - P)) * tau)
    else:
        coef = np.full_like(S, 1.0 / tau)
    return (S + shift) * coef, coef


def pair_loss(i: int, j: int, S: np.ndarray, P: np.ndarray, variant: str,
              tau: float, sigma: float, rho: float) -> float:
    """-log softmax of the (i, j) logit over all k != i."""
    H, _ = variant_logits(S, P, variant, tau, sigma, rho)
    row = np.delete(H[i], i)
    hij = H[i, j]
    m = np.max(row)
    return float(m + np.log(np.sum(np.exp(row - m))) - hij)


def batch_loss(S: np.ndarray, P: np.ndarray, variant: str, tau: float,
               sigma: float, rho: float) -> float:
    """(1/2N) sum over view pairs of pair_loss in both directions; views
    are interleaved so partners are (2k, 2k+1)."""
    H, _ = variant_logits(S, P, variant, tau, sigma, rho)
    return _loss_from_logits(H)[0]


def _partners(two_n: int) -> np.ndarray:
    p = np.arange(two_n)
    p[0::2] += 1
    p[1::2] -= 1
    return p


def _loss_from_logits(H: np.ndarray):
    """Mean pairwise loss and the gradient dL/dH (zero diagonal)."""
    two_n = H.shape[0]
    partners = _partners(two_n)
    masked = H.copy()
    np.fill_diagonal(masked, -np.inf)
    m = np.max(masked, axis=1, keepdims=True)
    expd = np.exp(masked - m)
    denom = np.sum(expd, axis=1, keepdims=True)
    log_denom = (m + np.log(denom))[:, 0]
    loss = float(np.mean(log_denom - H[np.arange(two_n), partners]))
    g = expd / denom
    g[np.arange(two_n), partners] -= 1.0
    return loss, g / two_n


def encoder_forward(X: np.ndarray, W: np.ndarray):
    """Linear map plus row normalization; returns (Z, norms, Z_normalized)."""
    Z = X @ W
    norms = np.linalg.norm(Z, axis=1)
    if np.any(norms == 0):
        raise ValidationError("zero-norm encoder output; reinitialize or "
                              "lower the learning rate")
    return Z, norms, Z / norms[:, None]


def loss_and_gradient(X: np.ndarray, W: np.ndarray, P: np.ndarray,
                      variant: str, tau: float, sigma: float, rho: float):
    """Batch loss and its analytic gradient with respect to W, holding the
    selection matrix P fixed."""
    Z, norms, Zn = encoder_forward(X, W)
    S = Zn @ Zn.T
    np.fill_diagonal(S, 1.0)
    H, coef = variant_logits(S, P, variant, tau, sigma, rho)
    loss, gH = _loss_from_logits(H)
    gS = gH * coef
    np.fill_diagonal(gS, 0.0)
    gZn = (gS + gS.T) @ Zn
    # back through row normalization: dz_n/dz = (I - z_n z_n^T) / ||z||
    gZ = (gZn - Zn * np.sum(gZn * Zn, axis=1, keepdims=True)) / norms[:, None]
    return loss, X.T @ gZ


def different_class_ratio(P: np.ndarray, labels: np.ndarray):
    """Fraction of selected pairs whose true labels differ.

    Returns (ratio, empty); an empty selection reports ratio 0.0 with
    empty=True.
    """
    sel = P > 0
    total = int(np.sum(sel))
    if total == 0:
        return 0.0, True
    differ = labels[:, None] != labels[None, :]
    return float(np.sum(sel & differ) / total), False


def _probe_accuracy(dataset: SyntheticDataset, W: np.ndarray) -> float:
    _, _, Zn = encoder_forward(dataset.points, W)
    weights = fit_linear_probe(Zn, dataset.labels)
    return float(np.mean(predict(Zn, weights) == dataset.labels))


def train(dataset: SyntheticDataset, config: TrainConfig, variant: str):
    """Seeded contrastive training of the linear encoder.

    Per batch: two jittered views per sample (interleaved), cosine
    similarities of the normalized encodings, percentile selection, one
    gradient step on the chosen loss variant. Divergence is declared after
    50 consecutive steps of rising batch loss.
    """
    if variant not in VARIANTS:
        raise ValidationError(f"unknown variant {variant!r}; "
                              f"expected one of {VARIANTS}")
    if dataset.points.shape[1] != config.input_dim:
        raise ValidationError(
            f"dataset dimension {dataset.points.shape[1]} does not match "
            f"input_dim {config.input_dim}")
    rng = np.random.default_rng(config.seed)
    W = 0.1 * rng.standard_normal((config.input_dim, config.embed_dim))

    losses = np.zeros(config.epochs)
    accs = np.zeros(config.epochs)
    ratios = np.zeros(config.epochs)
    prev_loss = np.inf
    rising = 0
    for epoch in range(config.epochs):
        order = rng.permutation(dataset.N)
        epoch_losses = []
        epoch_ratio = 0.0
        for start in range(0, dataset.N, config.batch_size):
            batch = order[start:start + config.batch_size]
            if len(batch) < 2:
                continue
            X = np.empty((2 * len(batch), config.input_dim))
            for row, sample in enumerate(batch):
                X[2 * row], X[2 * row + 1] = augment(
                    dataset.points[sample], config.jitter, rng)
            _, _, Zn = encoder_forward(X, W)
            S = Zn @ Zn.T
            np.fill_diagonal(S, 1.0)
            selection = select_pairs(S, config.pos_high, config.pos_low)
            loss, grad = loss_and_gradient(X, W, selection.P, variant,
                                           config.tau, config.sigma,
                                           config.rho)
            W = W - config.learning_rate * grad
            epoch_losses.append(loss)
            view_labels = np.repeat(dataset.labels[batch], 2)
            epoch_ratio, _ = different_class_ratio(selection.P, view_labels)
            if not np.isfinite(loss):
                raise DivergenceError(
                    "batch loss became non-finite; "
                    "use a smaller learning_rate")
            if loss > prev_loss:
                rising += 1
                if rising >= 50:
                    raise DivergenceError(
                        "batch loss rose for 50 consecutive steps; "
                        "use a smaller learning_rate")
            else:
                rising = 0
            prev_loss = loss
        losses[epoch] = np.mean(epoch_losses) if epoch_losses else 0.0
        ratios[epoch] = epoch_ratio
        accs[epoch] = _probe_accuracy(dataset, W)
    return W, TrainMetrics(loss=losses, probe_accuracy=accs,
                           diff_class_ratio=ratios, variant=variant)
