"""Shared fixtures: canonical parameter sets and the evaluation grid."""

import numpy as np
import pytest

from simgraph import GraphParams

# Canonical small / large parameter sets used by the frozen-value tests.
P0 = GraphParams(n=4, r=1, n_d=1, alpha=0.8, beta=0.1, gamma=0.5)
P1 = GraphParams(n=100, r=1, n_d=1, alpha=0.8, beta=0.1, gamma=0.5)

SIMILARITY_TRIPLES = (
    (0.8, 0.1, 0.5),
    (0.7, 0.05, 0.4),
    (0.9, 0.2, 0.6),
    (0.85, 0.0, 0.3),
)


def build_grid():
    """Valid parameter tuples across counts and similarity triples.

    Every n_d here divides n, so all three graph modes apply to each
    tuple with n_d >= 1.
    """
    grid = []
    for n in (2, 4, 6):
        for r in (1, 2, 3):
            for n_d in (0, 1, 2):
                if n_d > 0 and n % n_d != 0:
                    continue
                for alpha, beta, gamma in SIMILARITY_TRIPLES:
                    params = GraphParams(n=n, r=r, n_d=n_d, alpha=alpha,
                                         beta=beta, gamma=gamma)
                    params.validate()
                    grid.append(params)
    return grid


GRID = build_grid()


@pytest.fixture(scope="session")
def grid():
    assert len(GRID) >= 48
    return GRID


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
