"""Closed-form eigen-systems of the structured graphs and the Weyl bound.

The normalized adjacency of the no-difficult graph has three eigenvalue
groups; the with-difficult graph splits as A_bar = A1 + A2 whose component
spectra are known in closed form, and Weyl's inequality bounds the
(k+1)-th eigenvalue of the sum.
"""

from dataclasses import dataclass

import numpy as np

from .eigensolver import symmetric_eigenvalues
from .params import GraphParams, ValidationError, degree_constants

GROUPING_TOL = 1e-8  # eigenvalues closer than this merge into one reported group


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with multiplicities, sorted descending."""

    groups: tuple          # ((value, multiplicity, label), ...)
    source: str            # "closed_form" | "numerical"

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m, _ in self.groups)

    def values(self) -> np.ndarray:
        """Expanded eigenvalue list, descending."""
        out = np.concatenate([np.full(m, v) for v, m, _ in self.groups])
        return np.sort(out)[::-1]


def _make_spectrum(groups, source):
    groups = tuple(sorted(groups, key=lambda g: -g[0]))
    return Spectrum(groups=groups, source=source)


def closed_form_without(params: GraphParams) -> Spectrum:
    """Eigenvalue groups of the normalized no-difficult graph."""
    n, r = params.n, params.r
    a, b = params.alpha, params.beta
    c2 = degree_constants(params).c2
    groups = [
        (1.0, 1, "top"),
        (((1 - a) + n * (a - b)) / c2, r, "class"),
        ((1 - a) / c2, n * (r + 1) - r - 1, "bulk"),
    ]
    return _make_spectrum(groups, "closed_form")


def closed_form_removed(params: GraphParams) -> Spectrum:
    """No-difficult closed form with n replaced by n - n_d."""
    reduced = GraphParams(n=params.n - params.n_d, r=params.r, n_d=0,
                          alpha=params.alpha, beta=params.beta,
                          gamma=params.gamma)
    return closed_form_without(reduced)


def closed_form_with_components(params: GraphParams):
    """Spectra of the split A_bar = A1 + A2 of the with-difficult graph.

    A1 collects the identity-like Kronecker terms, A2 the rank-deficient
    block-averaging terms; their sum is the full normalized adjacency.
    """
    params.validate()
    if params.n_d < 1:
        raise ValidationError("component split requires n_d >= 1")
    params.validate_kappa()
    n, r, n_d = params.n, params.r, params.n_d
    a, b, g = params.alpha, params.beta, params.gamma
    kappa = params.kappa
    dc = degree_constants(params)
    c1, c2 = dc.c1, dc.c2

    a1_groups = [
        (((1 - a) + r * (g - b)) / c1, n_d, "difficult-top"),
        ((1 - a) / c2, (r + 1) * (n - n_d), "bulk"),
        (((1 - a) - (g - b)) / c1, r * n_d, "difficult-low"),
    ]
    coupling = (kappa - 1) / c2 + 1 / c1
    a2_groups = [
        ((a + r * b) * coupling * n_d, 1, "top"),
        ((a - b) * coupling * n_d, r, "class"),
        (0.0, (r + 1) * n - r - 1, "null"),
    ]
    return (_make_spectrum(a1_groups, "closed_form"),
            _make_spectrum(a2_groups, "closed_form"))


def component_matrices(params: GraphParams):
    """Dense reconstruction of the A1/A2 split via Kronecker products."""
    params.validate()
    if params.n_d < 1:
        raise ValidationError("component split requires n_d >= 1")
    params.validate_kappa()
    n, r, n_d = params.n, params.r, params.n_d
    a, b, g = params.alpha, params.beta, params.gamma
    kappa = params.kappa
    dc = degree_constants(params)
    c1, c2 = dc.c1, dc.c2

    i_c = np.eye(r + 1)
    ones_c = np.ones((r + 1, r + 1))
    i_nd = np.eye(n_d)
    ones_nd = np.ones((n_d, n_d))
    e_last = np.zeros((kappa, kappa))
    e_last[-1, -1] = 1.0

    a1 = ((1 - a) / c2 * np.kron(i_c, np.kron(np.eye(kappa), i_nd))
          + (g - b) / c1 * np.kron(ones_c, np.kron(e_last, i_nd))
          - ((g - b) / c1 + (1 / c2 - 1 / c1) * (1 - a))
          * np.kron(i_c, np.kron(e_last, i_nd)))

    q = np.full(kappa, 1 / np.sqrt(c2))
    q[-1] = 1 / np.sqrt(c1)
    qq = np.outer(q, q)
    a2 = ((a - b) * np.kron(i_c, np.kron(qq, ones_nd))
          + b * np.kron(ones_c, np.kron(qq, ones_nd)))
    return a1, a2


def dense_eigenvalues(matrix, symmetry_tol: float = 1e-9) -> Spectrum:
    """Numerical spectrum via the in-repo symmetric eigensolver."""
    values = symmetric_eigenvalues(matrix, symmetry_tol=symmetry_tol)
    groups = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or abs(values[i] - values[start]) > GROUPING_TOL:
            groups.append((float(np.mean(values[start:i])), i - start,
                           f"group{len(groups)}"))
            start = i
    return Spectrum(groups=tuple(groups), source="numerical")


def weyl_lambda_bound(params: GraphParams, k: int) -> float:
    """Closed-form Weyl bound on the (k+1)-th eigenvalue of the component sum.

    For r + 1 <= k < n_d + r + 1 the value ((1 - alpha) + r*(gamma - beta)) / c1
    equals lambda_i(A1) + lambda_j(A2) for an admissible i + j = k + 2 split,
    so it upper-bounds lambda_{k+1}(A1 + A2); when n_d = 1 it is also the
    minimum over all such splits.
    """
    if not params.r + 1 <= k < params.n_d + params.r + 1:
        raise ValidationError(
            f"k={k} outside the valid range {params.r + 1} <= k < "
            f"{params.n_d + params.r + 1}")
    dc = degree_constants(params)
    return ((1 - params.alpha) + params.r * (params.gamma - params.beta)) / dc.c1


def weyl_min_combination(spec_a: Spectrum, spec_b: Spectrum, k: int) -> float:
    """min over i + j = k + 2 of lambda_i(A) + lambda_j(B), 1-based indices."""
    va, vb = spec_a.values(), spec_b.values()
    best = np.inf
    for i in range(1, k + 2):
        j = k + 2 - i
        if i <= len(va) and 1 <= j <= len(vb):
            best = min(best, va[i - 1] + vb[j - 1])
    return float(best)
