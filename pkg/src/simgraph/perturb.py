"""Gaussian symmetric perturbations of the normalized graph: Monte Carlo
eigenvalue shifts with per-trial Weyl verification, and the semicircle-law
check on the scaled noise spectrum.

Normal variates are produced by an explicit Box-Muller transform over the
seeded 64-bit PCG64 uniform stream, so every report is reproducible
bit-for-bit from (seed, trial index) regardless of numpy's internal
normal-sampling algorithm.
"""

from dataclasses import dataclass

import numpy as np

from .eigensolver import symmetric_eigenvalues
from .graph import GraphMode, build_adjacency, normalize
from .params import GraphParams


@dataclass(frozen=True)
class PerturbConfig:
    epsilon: float
    trials: int
    seed: int
    k: int

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.epsilon < 0:
            raise ValueError("epsilon must be >= 0")


@dataclass
class LambdaShiftReport:
    lambda_k1: np.ndarray      # per-trial perturbed (k+1)-th eigenvalue
    weyl_bound: np.ndarray     # per-trial min_{i+j=k+2} lambda_i + mu_j
    holds: np.ndarray          # per-trial bool
    mean: float
    std: float


@dataclass
class SpectralLawReport:
    bin_edges: np.ndarray
    density: np.ndarray
    ks_distance: float
    eigenvalues: np.ndarray


def box_muller(rng: np.random.Generator, count: int) -> np.ndarray:
    """Standard-normal draws from the uniform stream: with u1 in (0, 1],
    z = sqrt(-2 ln u1) * (cos, sin)(2 pi u2)."""
    pairs = (count + 1) // 2
    u1 = 1.0 - rng.random(pairs)
    u2 = rng.random(pairs)
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    z = np.concatenate([radius * np.cos(angle), radius * np.sin(angle)])
    return z[:count]


def sample_symmetric_gaussian(N: int, seed) -> np.ndarray:
    """Symmetric matrix with i.i.d. standard-normal upper triangle
    (diagonal included) mirrored below."""
    if N < 2:
        raise ValueError("N must be >= 2")
    rng = seed if isinstance(seed, np.random.Generator) \
        else np.random.default_rng(seed)
    iu = np.triu_indices(N)
    w = np.zeros((N, N))
    w[iu] = box_muller(rng, len(iu[0]))
    return w + np.triu(w, 1).T


def perturb_normalized(a_bar: np.ndarray, epsilon: float, seed) -> np.ndarray:
    """A_bar + eps * W with the diagonal noise removed (net zero diagonal
    perturbation)."""
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    if epsilon == 0:
        return a_bar.copy()
    noise = sample_symmetric_gaussian(a_bar.shape[0], seed)
    np.fill_diagonal(noise, 0.0)
    return a_bar + epsilon * noise


def perturb_adjacency(adjacency: np.ndarray, epsilon: float, seed) -> np.ndarray:
    """Raw-similarity variant: perturb A itself (off-diagonal only).
    Kept for empirical comparison with the normalized-level perturbation."""
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    if epsilon == 0:
        return adjacency.copy()
    noise = sample_symmetric_gaussian(adjacency.shape[0], seed)
    np.fill_diagonal(noise, 0.0)
    return adjacency + epsilon * noise


def mc_lambda_shift(params: GraphParams, epsilon: float, trials: int, k: int,
                    seed: int,
                    mode: GraphMode = GraphMode.WITH_DIFFICULT) -> LambdaShiftReport:
    """Monte Carlo over perturbations: per trial, check the Weyl inequality
    lambda_{k+1}(A_bar + E) <= min_{i+j=k+2} lambda_i(A_bar) + mu_j(E)."""
    ng = normalize(build_adjacency(params, mode))
    base = symmetric_eigenvalues(ng.a_bar)
    N = ng.graph.N
    lam = np.empty(trials)
    bound = np.empty(trials)
    holds = np.empty(trials, dtype=bool)
    for trial in range(trials):
        perturbed = perturb_normalized(ng.a_bar, epsilon, seed + trial)
        noise = perturbed - ng.a_bar
        lam_tilde = symmetric_eigenvalues(perturbed)
        mu = symmetric_eigenvalues(noise)
        lam[trial] = lam_tilde[k]  # (k+1)-th largest, 0-based index k
        combos = [base[i - 1] + mu[j - 1]
                  for i in range(1, k + 2)
                  for j in (k + 2 - i,)
                  if 1 <= j <= N and i <= N]
        bound[trial] = min(combos)
        holds[trial] = lam[trial] <= bound[trial] + 1e-10
    return LambdaShiftReport(lambda_k1=lam, weyl_bound=bound, holds=holds,
                             mean=float(np.mean(lam)), std=float(np.std(lam)))


def semicircle_cdf(x):
    """CDF of the semicircle law on [-2, 2]."""
    x = np.clip(np.asarray(x, dtype=float), -2.0, 2.0)
    return 0.5 + x * np.sqrt(4.0 - x * x) / (4.0 * np.pi) + np.arcsin(x / 2.0) / np.pi


def empirical_spectral_law(N: int, trials: int, bins: int,
                           seed: int) -> SpectralLawReport:
    """Pool eigenvalues of W / sqrt(N) across trials; KS distance to the
    semicircle law."""
    if N < 64:
        raise ValueError("N must be >= 64 for a meaningful spectral law check")
    pooled = []
    scale = 1.0 / np.sqrt(N)
    for trial in range(trials):
        w = sample_symmetric_gaussian(N, seed + trial)
        pooled.append(symmetric_eigenvalues(w * scale))
    eigenvalues = np.sort(np.concatenate(pooled))
    m = len(eigenvalues)
    cdf = semicircle_cdf(eigenvalues)
    ecdf_hi = np.arange(1, m + 1) / m
    ecdf_lo = np.arange(0, m) / m
    ks = float(max(np.max(np.abs(ecdf_hi - cdf)), np.max(np.abs(cdf - ecdf_lo))))
    counts, edges = np.histogram(eigenvalues, bins=bins, density=True)
    return SpectralLawReport(bin_edges=edges, density=counts,
                             ks_distance=ks, eigenvalues=eigenvalues)
