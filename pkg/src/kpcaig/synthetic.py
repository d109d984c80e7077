"""Seeded synthetic data generators used by the evaluation harness and tests."""

from __future__ import annotations

import numpy as np

from .data import Dataset


def planted_clusters(n: int, p: int, k: int, n_informative: int, *,
                     separation: float = 1.0, within_std: float = 0.1,
                     seed: int = 0) -> Dataset:
    """Gaussian clusters that differ only in the first n_informative columns.

    Cluster centers are distinct +-separation sign patterns on the
    informative block (pairwise Hamming distance >= 2); every other column
    is standard normal noise. Labels are balanced and shuffled.
    """
    rng = np.random.default_rng(seed)
    if n_informative > p:
        raise ValueError("n_informative exceeds p")
    min_hamming = min(n_informative, max(2, int(0.4 * n_informative)))
    while True:
        patterns = rng.choice([-1.0, 1.0], size=(k, n_informative))
        # every informative column must differ across clusters, and every
        # cluster pair must be separated in enough coordinates
        if np.any(patterns.min(axis=0) == patterns.max(axis=0)):
            continue
        dists = [np.sum(patterns[a] != patterns[b])
                 for a in range(k) for b in range(a + 1, k)]
        if not dists or min(dists) >= min_hamming:
            break
    labels = rng.permutation(np.arange(n) % k)
    X = rng.normal(0.0, 1.0, size=(n, p))
    X[:, :n_informative] = (separation * patterns[labels]
                            + within_std * rng.normal(size=(n, n_informative)))
    return Dataset.from_matrix(X, labels=labels)


def two_blobs(n: int, dim: int = 2, *, separation: float = 10.0,
              spread: float = 1.0, seed: int = 0) -> Dataset:
    """Two isotropic Gaussian blobs along the first axis, labels attached."""
    rng = np.random.default_rng(seed)
    labels = rng.permutation(np.arange(n) % 2)
    X = spread * rng.normal(size=(n, dim))
    X[:, 0] += separation * labels
    return Dataset.from_matrix(X, labels=labels)


def smooth_manifold(n: int, p: int, *, noise: float = 0.02, seed: int = 0) -> Dataset:
    """Points on a smooth closed curve embedded linearly in p dimensions."""
    rng = np.random.default_rng(seed)
    t = rng.uniform(0.0, 2.0 * np.pi, size=n)
    Z = np.column_stack([np.cos(t), np.sin(t), 0.5 * np.cos(2.0 * t)])
    A = rng.normal(size=(p, Z.shape[1]))
    X = Z @ A.T + noise * rng.normal(size=(n, p))
    return Dataset.from_matrix(X)


def gaussian_matrix(n: int, p: int, seed: int = 0) -> Dataset:
    """Pure white-noise matrix."""
    rng = np.random.default_rng(seed)
    return Dataset.from_matrix(rng.normal(size=(n, p)))


def random_ranking(p: int, seed: int) -> np.ndarray:
    """A seeded random permutation of the feature indices."""
    return np.random.default_rng(seed).permutation(p)
