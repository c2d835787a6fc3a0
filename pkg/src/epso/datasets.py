"""Labeled tabular datasets: CSV ingestion, normalization, stratified folds,
the class*features/observations complexity index, and a synthetic generator
for high-dimensional selection experiments.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ContractError, DataError


@dataclass(frozen=True)
class Dataset:
    """An immutable feature matrix with dense integer class labels."""

    features: np.ndarray      # (n_samples, n_features) float
    labels: np.ndarray        # (n_samples,) int, dense 0..C-1
    feature_names: tuple[str, ...]
    name: str = "dataset"

    def __post_init__(self):
        x = np.asarray(self.features, dtype=float)
        y = np.asarray(self.labels, dtype=int)
        if x.ndim != 2:
            raise DataError("features must be a 2-D matrix")
        if y.shape != (x.shape[0],):
            raise DataError("labels must have one entry per observation")
        if len(self.feature_names) != x.shape[1]:
            raise DataError("feature_names must have one entry per feature")
        counts = np.bincount(y) if y.size else np.empty(0)
        if counts.size < 2 or np.any(counts == 0):
            raise DataError("need at least 2 classes, each with >= 1 observation")
        object.__setattr__(self, "features", x)
        object.__setattr__(self, "labels", y)
        object.__setattr__(self, "feature_names", tuple(self.feature_names))

    @property
    def n_samples(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    @property
    def n_classes(self) -> int:
        return int(self.labels.max()) + 1


def _is_number(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


def load_csv(path, label_column: str = "last") -> Dataset:
    """Load a comma-delimited UTF-8 file into a Dataset.

    label_column is "first", "last", or a header name. A header row is
    auto-detected when any feature cell of the first row is non-numeric.
    Rows containing empty cells are dropped (with a warning giving the count);
    non-numeric feature cells are an error naming the row and column.
    Class identifiers map to dense integers in first-occurrence order.
    """
    path = Path(path)
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [row for row in csv.reader(fh) if any(cell.strip() for cell in row)]
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise DataError(f"{path} contains no data")

    width = len(rows[0])
    by_name = label_column not in ("first", "last")

    if label_column == "first":
        label_idx = 0
    elif label_column == "last":
        label_idx = width - 1
    else:
        header_row = [c.strip() for c in rows[0]]
        if label_column not in header_row:
            raise DataError(f"label column {label_column!r} not found in header")
        label_idx = header_row.index(label_column)

    first = [c.strip() for c in rows[0]]
    has_header = by_name or any(
        not _is_number(c) for i, c in enumerate(first) if i != label_idx and c
    )
    if has_header:
        names = tuple(c for i, c in enumerate(first) if i != label_idx)
        data_rows = rows[1:]
        first_data_line = 2
    else:
        names = tuple(f"f{i}" for i in range(width - 1))
        data_rows = rows
        first_data_line = 1

    features: list[list[float]] = []
    raw_labels: list[str] = []
    dropped = 0
    for offset, row in enumerate(data_rows):
        line = first_data_line + offset
        if len(row) != width:
            raise DataError(f"row {line}: expected {width} cells, got {len(row)}")
        cells = [c.strip() for c in row]
        if any(c == "" for c in cells):
            dropped += 1
            continue
        vec = []
        for i, c in enumerate(cells):
            if i == label_idx:
                continue
            if not _is_number(c):
                col = names[i if i < label_idx else i - 1] if has_header else f"f{i}"
                raise DataError(f"row {line}, column {col!r}: cannot parse {c!r} as a number")
            vec.append(float(c))
        features.append(vec)
        raw_labels.append(cells[label_idx])

    if dropped:
        warnings.warn(f"{path.name}: dropped {dropped} row(s) with missing cells")
    if not features:
        raise DataError(f"{path} has no complete data rows")

    mapping: dict[str, int] = {}
    labels = []
    for lab in raw_labels:
        if lab not in mapping:
            mapping[lab] = len(mapping)
        labels.append(mapping[lab])
    if len(mapping) < 2:
        raise DataError(f"{path} has a single class ({next(iter(mapping))!r})")

    return Dataset(
        features=np.asarray(features, dtype=float),
        labels=np.asarray(labels, dtype=int),
        feature_names=names,
        name=path.stem,
    )


def save_csv(d: Dataset, path) -> None:
    """Write a Dataset back out with a header row and the label column last."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(d.feature_names) + ["label"])
        for row, lab in zip(d.features, d.labels):
            writer.writerow([repr(float(v)) for v in row] + [int(lab)])


def normalize_minmax(d: Dataset) -> Dataset:
    """Map every feature column linearly to [0, 1]; constant columns become 0."""
    x = d.features
    lo = x.min(axis=0)
    hi = x.max(axis=0)
    span = hi - lo
    safe = np.where(span == 0.0, 1.0, span)
    scaled = (x - lo) / safe
    scaled[:, span == 0.0] = 0.0
    return Dataset(scaled, d.labels, d.feature_names, d.name)


def stratified_folds(d: Dataset, k: int, seed: int) -> list[np.ndarray]:
    """k disjoint index folds with per-class counts differing by at most 1.

    If the smallest class has fewer than k members, k is reduced to that size
    (with a warning). Deterministic for a given seed.
    """
    if k < 2:
        raise ContractError("need at least 2 folds")
    counts = np.bincount(d.labels)
    smallest = int(counts.min())
    if smallest < k:
        warnings.warn(
            f"reducing folds from {k} to {smallest} (smallest class size)"
        )
        k = smallest
    if k < 2:
        raise ContractError("smallest class is too small for any stratified split")

    rng = np.random.default_rng(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    pointer = 0
    for c in range(counts.size):
        idx = np.flatnonzero(d.labels == c)
        rng.shuffle(idx)
        for i in idx:
            folds[pointer % k].append(int(i))
            pointer += 1
    return [np.sort(np.array(f, dtype=np.intp)) for f in folds]


def cfo_index(n_classes: int, n_features: int, n_samples: int) -> float:
    """classes * features / observations; bigger means harder."""
    return n_classes * n_features / n_samples


def complexity_index(d: Dataset) -> float:
    return cfo_index(d.n_classes, d.n_features, d.n_samples)


def synth_dataset(
    n_samples: int,
    n_features: int,
    n_informative: int,
    class_count: int = 2,
    seed: int = 0,
    separation: float = 4.0,
) -> Dataset:
    """Gaussian classes separated only along a random informative feature set.

    Non-informative features are pure standard-normal noise. The informative
    index list is embedded in the dataset name so tests can introspect it.
    """
    if n_informative > n_features:
        raise DataError("n_informative cannot exceed n_features")
    if class_count < 2:
        raise DataError("need at least 2 classes")
    if n_samples < class_count:
        raise DataError("need at least one sample per class")
    rng = np.random.default_rng(seed)
    informative = np.sort(rng.choice(n_features, size=n_informative, replace=False))
    labels = rng.permutation(np.arange(n_samples) % class_count)
    x = rng.standard_normal((n_samples, n_features))
    if n_informative:
        x[:, informative] += separation * labels[:, None]
    inf_str = ",".join(str(int(i)) for i in informative)
    name = f"synth_s{seed}_{n_samples}x{n_features}_inf[{inf_str}]"
    return Dataset(
        features=x,
        labels=labels,
        feature_names=tuple(f"f{i}" for i in range(n_features)),
        name=name,
    )
