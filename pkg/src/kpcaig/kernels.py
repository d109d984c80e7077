"""Kernel evaluation, analytic first derivatives, Gram matrices and centering.

Families:
    rbf        : k(x, y) = exp(-sigma * ||x - y||^2)
    linear     : k(x, y) = <x, y>
    polynomial : k(x, y) = (<x, y> + coef0)^degree

All families admit a closed-form partial derivative with respect to a
single coordinate of the first argument, which is what the feature
importance machinery consumes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist, pdist, squareform

from .exceptions import DegenerateDataError, InputError

FAMILIES = ("rbf", "linear", "polynomial")


@dataclass(frozen=True)
class KernelSpec:
    family: str = "rbf"
    sigma: float | None = None    # rbf bandwidth, k = exp(-sigma * d^2)
    degree: int = 2               # polynomial only
    coef0: float = 1.0            # polynomial only

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"unknown kernel family {self.family!r}")
        if self.family == "rbf":
            if self.sigma is None or not self.sigma > 0:
                raise InputError(f"rbf kernel needs sigma > 0, got {self.sigma}")
        if self.family == "polynomial":
            if int(self.degree) != self.degree or self.degree < 1:
                raise InputError(f"polynomial degree must be an integer >= 1, got {self.degree}")


@dataclass(frozen=True)
class GramMatrix:
    """Pairwise kernel similarities; ``centered`` marks double-centering."""

    values: np.ndarray
    centered: bool = False

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise InputError(f"Gram matrix must be square, got shape {v.shape}")
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.shape[0]


def _as_matrix(data) -> np.ndarray:
    X = getattr(data, "matrix", data)
    return np.asarray(X, dtype=np.float64)


def _check_pair(x, y):
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.shape != y.shape or x.size < 1:
        raise InputError(f"point dimensions differ: {x.shape} vs {y.shape}")
    return x, y


def eval_kernel(spec: KernelSpec, x, y) -> float:
    """Scalar kernel value k(x, y); symmetric in its arguments."""
    x, y = _check_pair(x, y)
    if spec.family == "rbf":
        d = x - y
        return float(np.exp(-spec.sigma * np.dot(d, d)))
    if spec.family == "linear":
        return float(np.dot(x, y))
    return float((np.dot(x, y) + spec.coef0) ** spec.degree)


def kernel_partial(spec: KernelSpec, x, x_i, j: int) -> float:
    """Partial derivative of k(x, x_i) with respect to coordinate j of x.

    For the rbf family this is -2*sigma*k(x, x_i)*(x[j] - x_i[j]); linear
    and polynomial use their own closed forms. Index j is zero-based.
    """
    x, x_i = _check_pair(x, x_i)
    if not 0 <= j < x.size:
        raise InputError(f"feature index {j} out of range for p={x.size}")
    if spec.family == "rbf":
        d = x - x_i
        return float(-2.0 * spec.sigma * np.exp(-spec.sigma * np.dot(d, d)) * (x[j] - x_i[j]))
    if spec.family == "linear":
        return float(x_i[j])
    return float(spec.degree * (np.dot(x, x_i) + spec.coef0) ** (spec.degree - 1) * x_i[j])


def kernel_row(spec: KernelSpec, X, x) -> np.ndarray:
    """Vector (k(x, x_i))_i over the rows of X."""
    X = _as_matrix(X)
    x = np.asarray(x, dtype=np.float64).ravel()
    if x.size != X.shape[1]:
        raise InputError(f"point has {x.size} coords, training data has p={X.shape[1]}")
    if spec.family == "rbf":
        d2 = cdist(x[None, :], X, "sqeuclidean")[0]
        return np.exp(-spec.sigma * d2)
    if spec.family == "linear":
        return X @ x
    return (X @ x + spec.coef0) ** spec.degree


def _mirror_upper(M: np.ndarray) -> np.ndarray:
    # bitwise symmetry: each off-diagonal pair stored once, then mirrored
    U = np.triu(M)
    return U + np.triu(M, 1).T


def gram_matrix(spec: KernelSpec, data) -> GramMatrix:
    """Uncentered n x n Gram matrix of all pairwise similarities."""
    X = _as_matrix(data)
    n = X.shape[0]
    if n < 2:
        raise InputError(f"need at least 2 samples, got n={n}")
    if spec.family == "rbf":
        K = squareform(np.exp(-spec.sigma * pdist(X, "sqeuclidean")))
        np.fill_diagonal(K, 1.0)
        return GramMatrix(K, centered=False)
    G = X @ X.T
    if spec.family == "linear":
        return GramMatrix(_mirror_upper(G), centered=False)
    return GramMatrix(_mirror_upper((G + spec.coef0) ** spec.degree), centered=False)


def center_gram(K: GramMatrix) -> GramMatrix:
    """Double-center a Gram matrix so feature-space coordinates have zero mean.

    Idempotent: centering an already centered matrix is a no-op up to
    rounding.
    """
    V = K.values
    row = V.mean(axis=1)
    col = V.mean(axis=0)
    grand = V.mean()
    out = V - row[:, None] - col[None, :] + grand
    return GramMatrix(_mirror_upper(out), centered=True)


def center_cross(K: GramMatrix, Z) -> np.ndarray:
    """Centered cross-kernel row (Z^T - (1/n) 1^T K)(I - (1/n) 11^T).

    K is the raw (uncentered) training Gram matrix and Z the kernel values
    of a query point against the training points. When the query equals
    training point m the result is row m of the centered Gram matrix.
    """
    if K.centered:
        raise InputError("center_cross expects the uncentered training Gram matrix")
    Z = np.asarray(Z, dtype=np.float64).ravel()
    if Z.size != K.n:
        raise InputError(f"cross-kernel vector has length {Z.size}, expected n={K.n}")
    v = Z - K.values.mean(axis=0)
    return v - v.mean()


def partial_prefactor(spec: KernelSpec, X, gram: GramMatrix | None = None):
    """Feature-independent pairwise factor of the kernel derivative.

    Returns the n x n matrix P such that the full derivative matrix for
    feature j is P * (xj[:, None] - xj[None, :]) for rbf and
    P * xj[None, :] for polynomial; linear kernels need no prefactor
    (None is returned).
    """
    X = _as_matrix(X)
    if spec.family == "rbf":
        K = gram.values if gram is not None and not gram.centered else \
            gram_matrix(spec, X).values
        return -2.0 * spec.sigma * K
    if spec.family == "linear":
        return None
    G = X @ X.T
    return float(spec.degree) * (G + spec.coef0) ** (spec.degree - 1)


def partial_matrix(spec: KernelSpec, X, j: int, prefactor=None) -> np.ndarray:
    """Matrix D with D[m, i] = d k(x_m, x_i) / d x_m[j] over training pairs."""
    X = _as_matrix(X)
    n, p = X.shape
    if not 0 <= j < p:
        raise InputError(f"feature index {j} out of range for p={p}")
    xj = X[:, j]
    if spec.family == "linear":
        return np.broadcast_to(xj, (n, n))
    if prefactor is None:
        prefactor = partial_prefactor(spec, X)
    if spec.family == "rbf":
        return prefactor * (xj[:, None] - xj[None, :])
    return prefactor * xj[None, :]


def sigma_heuristic(data) -> float:
    """Default rbf bandwidth: inverse median squared pairwise distance."""
    X = _as_matrix(data)
    if X.shape[0] < 2:
        raise InputError(f"need at least 2 samples, got n={X.shape[0]}")
    med = float(np.median(pdist(X, "sqeuclidean")))
    if med <= 0:
        raise DegenerateDataError("all pairwise distances vanish; cannot pick a bandwidth")
    return 1.0 / med
