"""Feature-count evaluation curves: clustering quality, silhouette, variance.

Three protocols over a grid of selected-feature counts d:

* selection_curve  — k-means ACC/NMI on the top-d raw (standardized)
  features, averaged over repeated seeded runs;
* silhouette_curve — mean silhouette of a k-means solution on the 2-D
  kernel PCA embedding of the top-d features;
* variance_generalization — retained-component variance share of kernel
  PCA fits on train and test halves restricted to the train-ranked top-d
  features.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .exceptions import InputError
from .importance import rank_features
from .kernels import KernelSpec
from .kpca import SigmaRule, explained_variance, fit_kpca, project_training, resolve_spec
from .metrics import clustering_accuracy, kmeans, nmi, silhouette


@dataclass(frozen=True)
class CurvePoint:
    d: int
    acc_mean: float | None = None
    acc_std: float | None = None
    nmi_mean: float | None = None
    nmi_std: float | None = None
    silhouette: float | None = None
    var_train: float | None = None
    var_test: float | None = None
    split: int | None = None


def _check_grid(d_grid, p: int) -> tuple[int, ...]:
    grid = tuple(int(d) for d in d_grid)
    if not grid:
        raise InputError("feature-count grid is empty")
    if min(grid) < 1 or max(grid) > p:
        raise InputError(f"grid values must lie in [1, p={p}], got {grid}")
    return grid


def selection_curve(data: Dataset, order, truth, k: int, d_grid,
                    runs: int = 20, seed: int = 0) -> list[CurvePoint]:
    """Mean/std k-means ACC and NMI for each top-d feature subset.

    k-means runs use consecutive seeds seed..seed+runs-1 on the selected
    raw columns; the std is the population standard deviation over runs.
    """
    grid = _check_grid(d_grid, data.p)
    if runs < 1:
        raise InputError(f"runs must be >= 1, got {runs}")
    order = np.asarray(order, dtype=np.int64)
    truth = np.asarray(truth).ravel()
    points = []
    for d in grid:
        sub = data.matrix[:, order[:d]]
        accs = np.empty(runs)
        nmis = np.empty(runs)
        for r in range(runs):
            res = kmeans(sub, k, seed + r)
            accs[r] = clustering_accuracy(res.labels, truth)
            nmis[r] = nmi(res.labels, truth)
        points.append(CurvePoint(d=d,
                                 acc_mean=float(accs.mean()), acc_std=float(accs.std()),
                                 nmi_mean=float(nmis.mean()), nmi_std=float(nmis.std())))
    return points


def silhouette_curve(data: Dataset, order, spec: KernelSpec, k: int, d_grid,
                     sigma_rule: SigmaRule | None = None,
                     seed: int = 0, restarts: int = 5) -> list[CurvePoint]:
    """Mean silhouette of k-means clusters on the 2-D embedding per d.

    When a sigma rule is given the rbf bandwidth is re-resolved on every
    feature subset, so the kernel adapts to the number of columns kept.
    The clustering takes the best of ``restarts`` seeded k-means runs by
    inertia, which keeps the curve stable against unlucky initializations.
    """
    grid = _check_grid(d_grid, data.p)
    if restarts < 1:
        raise InputError(f"restarts must be >= 1, got {restarts}")
    order = np.asarray(order, dtype=np.int64)
    points = []
    for d in grid:
        sub = data.select_features(order[:d])
        spec_d = resolve_spec(spec, sigma_rule, sub, 2)
        model = fit_kpca(sub, spec_d, 2, allow_unstandardized=True)
        coords = project_training(model).coords
        best = min((kmeans(coords, k, seed + r) for r in range(restarts)),
                   key=lambda res: res.inertia)
        points.append(CurvePoint(d=d, silhouette=silhouette(coords, best.labels)))
    return points


def variance_generalization(data: Dataset, spec: KernelSpec, q: int, d_grid,
                            n_splits: int = 5, seed: int = 0,
                            sigma_rule: SigmaRule | None = None,
                            split_indices=None) -> list[CurvePoint]:
    """Train/test explained-variance shares for train-ranked top-d features.

    Each split holds out ~25% of the samples; features are ranked on the
    training part only, and the retained-q variance share is computed from
    independent kernel PCA fits on both parts restricted to those
    features. Explicit (train, test) index pairs may be supplied instead
    of seeded random splits.
    """
    grid = _check_grid(d_grid, data.p)
    n = data.n
    if split_indices is None:
        if n_splits < 1:
            raise InputError(f"n_splits must be >= 1, got {n_splits}")
        n_train = int(0.75 * n)
        splits = []
        for s in range(n_splits):
            perm = np.random.default_rng([seed, s]).permutation(n)
            splits.append((perm[:n_train], perm[n_train:]))
    else:
        splits = [(np.asarray(tr, dtype=np.int64), np.asarray(te, dtype=np.int64))
                  for tr, te in split_indices]
    points = []
    for s, (tr, te) in enumerate(splits):
        if min(tr.size, te.size) < 3:
            raise InputError(f"split {s} leaves fewer than 3 samples on one side")
        train = data.subset_samples(tr)
        test = data.subset_samples(te)
        spec_rank = resolve_spec(spec, sigma_rule, train, q)
        ranking = rank_features(fit_kpca(train, spec_rank, q, allow_unstandardized=True))
        for d in grid:
            cols = ranking.order[:d]
            sub_tr = train.select_features(cols)
            sub_te = test.select_features(cols)
            m_tr = fit_kpca(sub_tr, resolve_spec(spec, sigma_rule, sub_tr, q), q,
                            allow_unstandardized=True)
            m_te = fit_kpca(sub_te, resolve_spec(spec, sigma_rule, sub_te, q), q,
                            allow_unstandardized=True)
            points.append(CurvePoint(d=d, split=s,
                                     var_train=float(explained_variance(m_tr).sum()),
                                     var_test=float(explained_variance(m_te).sum())))
    return points
