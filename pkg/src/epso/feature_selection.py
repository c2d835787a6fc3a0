"""Wrapper feature selection: continuous positions in [-1, 1]^F are
thresholded into feature masks and scored by a k-nearest-neighbor objective
(k=1 by default) under leave-one-out or stratified k-fold evaluation.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .datasets import Dataset, stratified_folds
from .errors import ConfigError, ContractError
from .swarm import EpsoConfig, Objective, RunResult, optimize

POSITION_LOW, POSITION_HIGH = -1.0, 1.0


@dataclass(frozen=True)
class FeatureMask:
    selected: np.ndarray  # boolean, length n_features

    def __post_init__(self):
        object.__setattr__(self, "selected", np.asarray(self.selected, dtype=bool))

    @property
    def count(self) -> int:
        return int(self.selected.sum())


@dataclass(frozen=True)
class WrapperConfig:
    """How candidate masks are scored."""

    threshold: float = 0.5
    k_neighbors: int = 1
    protocol: str = "kfold"  # "kfold" or "loo"
    k_folds: int = 10

    def __post_init__(self):
        if not (POSITION_LOW < self.threshold < POSITION_HIGH):
            raise ConfigError("threshold must lie strictly inside [-1, +1]")
        if self.k_neighbors < 1:
            raise ConfigError("k_neighbors must be at least 1")
        if self.protocol not in ("kfold", "loo"):
            raise ConfigError("protocol must be 'kfold' or 'loo'")
        if self.protocol == "kfold" and self.k_folds < 2:
            raise ConfigError("k_folds must be at least 2")


@dataclass
class FeatureSelectionResult:
    mask: FeatureMask
    accuracy: float
    accuracy_std: float
    wall_time: float
    selected_names: tuple[str, ...]
    run: RunResult | None = None


def binarize(position, threshold: float) -> FeatureMask:
    """Select feature f iff position_f > threshold (strictly)."""
    position = np.asarray(position, dtype=float)
    return FeatureMask(position > threshold)


def _pairwise_sq_dists(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Squared Euclidean distances between the rows of a and of b."""
    aa = np.sum(a * a, axis=1)[:, None]
    bb = np.sum(b * b, axis=1)[None, :]
    d = aa + bb - 2.0 * (a @ b.T)
    np.maximum(d, 0.0, out=d)
    return d


def knn_classify(train_features, train_labels, query, k: int = 1) -> int:
    """Label of the majority among the k nearest training rows.

    Distance ties break toward the lower row index; a vote tie goes to the
    class of the nearest tied-class neighbor.
    """
    x = np.asarray(train_features, dtype=float)
    y = np.asarray(train_labels, dtype=int)
    q = np.asarray(query, dtype=float)
    if x.shape[0] == 0:
        raise ContractError("training set is empty")
    if x.shape[1] != q.size:
        raise ContractError("query dimension does not match the training features")
    if k < 1:
        raise ContractError("k must be at least 1")
    dists = np.sum((x - q) ** 2, axis=1)
    order = np.argsort(dists, kind="stable")[: min(k, x.shape[0])]
    if k == 1:
        return int(y[order[0]])
    votes = np.bincount(y[order])
    top = np.flatnonzero(votes == votes.max())
    for idx in order:  # earliest neighbor among the tied classes decides
        if y[idx] in top:
            return int(y[idx])
    return int(y[order[0]])


def _fold_accuracy_1nn(x: np.ndarray, y: np.ndarray, folds: list[np.ndarray]) -> float:
    n = x.shape[0]
    accs = []
    for fold in folds:
        train = np.setdiff1d(np.arange(n), fold)
        d = _pairwise_sq_dists(x[fold], x[train])
        pred = y[train][np.argmin(d, axis=1)]
        accs.append(float(np.mean(pred == y[fold])))
    return float(np.mean(accs))


def _loo_accuracy_1nn(x: np.ndarray, y: np.ndarray) -> float:
    d = _pairwise_sq_dists(x, x)
    np.fill_diagonal(d, np.inf)
    pred = y[np.argmin(d, axis=1)]
    return float(np.mean(pred == y))


def _masked_accuracy(
    d: Dataset,
    mask: FeatureMask,
    cfg: WrapperConfig,
    folds: list[np.ndarray] | None,
) -> float:
    if mask.count == 0:
        return 0.0  # empty masks score worst instead of erroring
    x = d.features[:, mask.selected]
    y = d.labels
    if cfg.protocol == "loo":
        if cfg.k_neighbors == 1:
            return _loo_accuracy_1nn(x, y)
        hits = 0
        rest = np.arange(d.n_samples)
        for i in range(d.n_samples):
            others = rest != i
            hits += knn_classify(x[others], y[others], x[i], cfg.k_neighbors) == y[i]
        return hits / d.n_samples
    assert folds is not None
    if cfg.k_neighbors == 1:
        return _fold_accuracy_1nn(x, y, folds)
    accs = []
    for fold in folds:
        train = np.setdiff1d(np.arange(d.n_samples), fold)
        hits = sum(
            knn_classify(x[train], y[train], x[i], cfg.k_neighbors) == y[i]
            for i in fold
        )
        accs.append(hits / fold.size)
    return float(np.mean(accs))


def evaluate_mask(d: Dataset, mask: FeatureMask, cfg: WrapperConfig, seed: int = 0) -> float:
    """Protocol accuracy of the mask's feature subset; empty masks score 0."""
    folds = stratified_folds(d, cfg.k_folds, seed) if cfg.protocol == "kfold" else None
    return _masked_accuracy(d, mask, cfg, folds)


def wrapper_objective(d: Dataset, cfg: WrapperConfig, seed: int = 0) -> Objective:
    """Minimization objective 1 - accuracy over positions in [-1, 1]^F.

    Fold assignments are frozen here, once, so the objective is a pure
    function of the position for the whole run.
    """
    folds = stratified_folds(d, cfg.k_folds, seed) if cfg.protocol == "kfold" else None

    def objective(position) -> float:
        mask = binarize(position, cfg.threshold)
        return 1.0 - _masked_accuracy(d, mask, cfg, folds)

    return objective


def position_bounds(n_features: int) -> np.ndarray:
    return np.tile([POSITION_LOW, POSITION_HIGH], (n_features, 1))


def select_features(
    d: Dataset,
    epso_config: EpsoConfig,
    wrapper_cfg: WrapperConfig,
    mode: str = "epso",
) -> FeatureSelectionResult:
    """Optimize the wrapper objective and report the best mask found."""
    if epso_config.dimension != d.n_features:
        raise ConfigError(
            f"config dimension {epso_config.dimension} != dataset features {d.n_features}"
        )
    expected = position_bounds(d.n_features)
    if not np.array_equal(epso_config.bounds, expected):
        raise ConfigError("feature selection requires bounds of [-1, +1] per feature")

    start = time.perf_counter()
    objective = wrapper_objective(d, wrapper_cfg, seed=epso_config.seed)
    run = optimize(epso_config, objective, mode=mode)
    mask = binarize(run.best_position, wrapper_cfg.threshold)
    names = tuple(np.array(d.feature_names)[mask.selected])
    return FeatureSelectionResult(
        mask=mask,
        accuracy=1.0 - run.best_fitness,
        accuracy_std=0.0,  # across-runs spread is filled in by the harness
        wall_time=time.perf_counter() - start,
        selected_names=names,
        run=run,
    )
