"""Gradient-based variable importance on a kernel PCA embedding.

For each original variable j, the direction of maximum variation of the
embedding is evaluated at every training point: row m of the n x q field
is d_m^T (I - (1/n) 11^T) alpha, where d_m collects the analytic kernel
derivatives d k(x_m, x_i) / d x_m[j] against all training points. The mean
Euclidean norm of these rows is the variable's score; sorting the scores
descending yields the ranking.

Fields are produced one variable at a time (an n x q working set), so the
full p x n x q tensor is never materialized even for very wide matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import InputError
from .kpca import FittedKpca, project_training
from .kernels import partial_matrix, partial_prefactor


@dataclass(frozen=True)
class GradientField:
    """Projected maximum-variation directions of one variable, per sample."""

    variable_index: int
    W: np.ndarray  # n x q


@dataclass(frozen=True)
class FeatureRanking:
    scores: np.ndarray           # p mean gradient norms
    stds: np.ndarray             # population std of the n per-sample norms
    order: np.ndarray            # feature indices sorted by score descending
    feature_names: tuple[str, ...]


def _centered_alphas(model: FittedKpca) -> np.ndarray:
    # (I - (1/n) 11^T) alpha, shared by every variable
    return model.alphas - model.alphas.mean(axis=0)


def _field(model: FittedKpca, j: int, B: np.ndarray, prefactor) -> np.ndarray:
    D = partial_matrix(model.kernel, model.training_data.matrix, j, prefactor)
    return D @ B


def gradient_field(model: FittedKpca, j: int) -> GradientField:
    """n x q matrix of projected gradient directions for variable j."""
    if not 0 <= j < model.p:
        raise InputError(f"feature index {j} out of range for p={model.p}")
    pre = partial_prefactor(model.kernel, model.training_data.matrix, gram=model.K)
    return GradientField(variable_index=j,
                         W=_field(model, j, _centered_alphas(model), pre))


def feature_score(model: FittedKpca, j: int) -> tuple[float, float]:
    """Mean and population standard deviation of the per-sample field norms."""
    W = gradient_field(model, j).W
    norms = np.sqrt(np.einsum("ik,ik->i", W, W))
    return float(norms.mean()), float(norms.std())


def rank_features(model: FittedKpca) -> FeatureRanking:
    """Score every variable and sort descending (ties: lower index first)."""
    X = model.training_data.matrix
    p = X.shape[1]
    B = _centered_alphas(model)
    pre = partial_prefactor(model.kernel, X, gram=model.K)
    scores = np.empty(p)
    stds = np.empty(p)
    for j in range(p):
        W = _field(model, j, B, pre)
        norms = np.sqrt(np.einsum("ik,ik->i", W, W))
        scores[j] = norms.mean()
        stds[j] = norms.std()
    order = np.lexsort((np.arange(p), -scores))
    return FeatureRanking(scores=scores, stds=stds, order=order,
                          feature_names=model.training_data.feature_names)


def arrow_field(model: FittedKpca, j: int, scale: float = 1.0):
    """Per-sample 2-D arrows of variable j on the first two kernel axes.

    Returns a list of ((x, y), (dx, dy)) pairs suitable for quiver plots;
    the arrow components are the first two entries of the variable's
    gradient field rows multiplied by ``scale``.
    """
    if model.q < 2:
        raise InputError(f"arrow field needs q >= 2 retained components, got q={model.q}")
    if scale < 0:
        raise InputError(f"scale must be >= 0, got {scale}")
    coords = project_training(model).coords[:, :2]
    vects = gradient_field(model, j).W[:, :2] * scale
    return [((float(px), float(py)), (float(vx), float(vy)))
            for (px, py), (vx, vy) in zip(coords, vects)]
