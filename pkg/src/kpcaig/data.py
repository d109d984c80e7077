"""Dataset container, delimited-matrix I/O and column standardization."""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace

import numpy as np

from .exceptions import InputError, ParseError


@dataclass(frozen=True)
class Dataset:
    """An n x p numeric matrix with sample/feature metadata.

    matrix            : float64 array, samples as rows
    feature_names     : p unique column names
    sample_ids        : n row identifiers
    labels            : optional integer class labels, one per sample
    standardized      : True once columns have zero mean / unit variance
    constant_features : indices of columns that were constant when the
                        dataset was standardized (left at zero)
    """

    matrix: np.ndarray
    feature_names: tuple[str, ...]
    sample_ids: tuple[str, ...]
    labels: np.ndarray | None = None
    standardized: bool = False
    constant_features: tuple[int, ...] = ()

    def __post_init__(self):
        m = np.ascontiguousarray(np.asarray(self.matrix, dtype=np.float64))
        if m.ndim != 2:
            raise InputError(f"matrix must be 2-D, got ndim={m.ndim}")
        if not np.all(np.isfinite(m)):
            raise InputError("matrix contains NaN or Inf entries")
        object.__setattr__(self, "matrix", m)
        n, p = m.shape
        if len(self.feature_names) != p:
            raise InputError(f"{len(self.feature_names)} feature names for p={p} columns")
        if len(set(self.feature_names)) != p:
            raise InputError("feature names are not unique")
        if len(self.sample_ids) != n:
            raise InputError(f"{len(self.sample_ids)} sample ids for n={n} rows")
        if self.labels is not None:
            lab = np.asarray(self.labels, dtype=np.int64)
            if lab.shape != (n,):
                raise InputError(f"labels must have shape ({n},), got {lab.shape}")
            object.__setattr__(self, "labels", lab)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def p(self) -> int:
        return self.matrix.shape[1]

    @classmethod
    def from_matrix(cls, matrix, feature_names=None, sample_ids=None,
                    labels=None, standardized=False) -> "Dataset":
        """Wrap a raw array, synthesizing f0..f{p-1} / s0..s{n-1} names."""
        m = np.atleast_2d(np.asarray(matrix, dtype=np.float64))
        n, p = m.shape
        if feature_names is None:
            feature_names = tuple(f"f{j}" for j in range(p))
        if sample_ids is None:
            sample_ids = tuple(f"s{i}" for i in range(n))
        return cls(m, tuple(feature_names), tuple(sample_ids),
                   labels=labels, standardized=standardized)

    def select_features(self, indices) -> "Dataset":
        """Restrict to the given column indices (order preserved)."""
        idx = np.asarray(indices, dtype=np.int64)
        return Dataset(self.matrix[:, idx],
                       tuple(self.feature_names[j] for j in idx),
                       self.sample_ids, labels=self.labels,
                       standardized=self.standardized)

    def subset_samples(self, indices) -> "Dataset":
        idx = np.asarray(indices, dtype=np.int64)
        return Dataset(self.matrix[idx],
                       self.feature_names,
                       tuple(self.sample_ids[i] for i in idx),
                       labels=None if self.labels is None else self.labels[idx],
                       standardized=self.standardized)


def _sniff_delimiter(header_line: str) -> str:
    return "\t" if "\t" in header_line else ","


def load_matrix(path, orientation: str = "rows") -> Dataset:
    """Load a delimited text matrix (one header row, one leading ID column).

    orientation "rows" means samples are rows; "cols" means samples are
    columns (the table is transposed on load).
    """
    if orientation not in ("rows", "cols"):
        raise InputError(f"orientation must be 'rows' or 'cols', got {orientation!r}")
    with open(path, encoding="utf-8", newline="") as fh:
        first = fh.readline()
        if not first.strip():
            raise ParseError(f"{path}: empty file")
        delim = _sniff_delimiter(first)
        fh.seek(0)
        rows = [row for row in csv.reader(fh, delimiter=delim) if row]
    header = rows[0]
    width = len(header)
    if width < 2:
        raise ParseError(f"{path}: need at least one data column besides the ID column")
    ids, values = [], []
    for r, row in enumerate(rows[1:], start=2):
        if len(row) != width:
            raise ParseError(f"{path}: row {r} has {len(row)} fields, expected {width}")
        ids.append(row[0])
        parsed = []
        for c, cell in enumerate(row[1:], start=2):
            try:
                v = float(cell)
            except ValueError:
                raise ParseError(
                    f"{path}: non-numeric value {cell!r} at row {r}, column {c}") from None
            if not np.isfinite(v):
                raise ParseError(
                    f"{path}: non-finite value {cell!r} at row {r}, column {c}")
            parsed.append(v)
        values.append(parsed)
    if not values:
        raise ParseError(f"{path}: no data rows")
    matrix = np.asarray(values, dtype=np.float64)
    if orientation == "cols":
        matrix = matrix.T.copy()
        feature_names, sample_ids = tuple(ids), tuple(header[1:])
    else:
        feature_names, sample_ids = tuple(header[1:]), tuple(ids)
    if len(set(feature_names)) != len(feature_names):
        dupes = sorted({nm for nm in feature_names if feature_names.count(nm) > 1})
        raise ParseError(f"{path}: duplicate feature names {dupes}")
    return Dataset(matrix, feature_names, sample_ids)


def save_matrix(data: Dataset, path) -> None:
    """Write a Dataset back to TSV with full round-trip float precision."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("id\t" + "\t".join(data.feature_names) + "\n")
        for sid, row in zip(data.sample_ids, data.matrix):
            fh.write(sid + "\t" + "\t".join(repr(float(v)) for v in row) + "\n")


def load_labels(path) -> np.ndarray:
    """One integer label per line, same order as the matrix samples."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for ln, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                out.append(int(text))
            except ValueError:
                raise ParseError(f"{path}: non-integer label {text!r} on line {ln}") from None
    if not out:
        raise ParseError(f"{path}: no labels found")
    return np.asarray(out, dtype=np.int64)


def standardize(data: Dataset) -> Dataset:
    """Center each column and scale to unit (population) standard deviation.

    Constant columns are set to exactly zero and recorded in
    ``constant_features`` instead of being divided by zero.
    """
    X = data.matrix
    centered = X - X.mean(axis=0)
    sd = np.sqrt(np.mean(centered * centered, axis=0))
    const = np.flatnonzero((np.ptp(X, axis=0) == 0) | (sd == 0))
    safe = sd.copy()
    safe[const] = 1.0
    out = centered / safe
    out[:, const] = 0.0
    return replace(data, matrix=out, standardized=True,
                   constant_features=tuple(int(j) for j in const))
