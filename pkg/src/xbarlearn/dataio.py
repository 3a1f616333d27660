"""Dataset loading, sensor encoding and target encoding.

The classification task is Fisher's Iris: 150 flowers, 4 measured
features, 3 species.  Each normalized feature is expanded into four
analog "sensor" channels modeling partially redundant front-end
detectors, giving a 16-line input; a 17th constant line feeds the bias
row of the array.  Targets are one-vs-rest levels in {-1, +1}.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources
from typing import Optional, Sequence, Tuple

import numpy as np

SPECIES = ("setosa", "versicolor", "virginica")
N_SENSORS_PER_FEATURE = 4
TARGET_HIGH = 1.0
TARGET_LOW = -1.0


class ParseError(ValueError):
    """Malformed dataset row; carries the offending 1-based line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class DegenerateFeature(ValueError):
    """A training-split feature has zero range; min-max scaling undefined."""


MissingFile = FileNotFoundError


def load_iris(path=None) -> Tuple[np.ndarray, np.ndarray]:
    """Read the iris table; returns (features (150, 4), labels (150,) int).

    Without ``path`` the copy bundled with the package is used.  Labels
    are integer class indices in species order: setosa 0, versicolor 1,
    virginica 2.
    """
    if path is None:
        source = resources.files("xbarlearn.data").joinpath("iris.csv")
        with resources.as_file(source) as p:
            return load_iris(p)

    features, labels = [], []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ParseError("empty file")
        if len(header) != 5:
            raise ParseError("expected 4 feature columns plus species",
                             line=1)
        for row in reader:
            if not row:
                continue
            if len(row) != 5:
                raise ParseError(f"expected 5 columns, got {len(row)}",
                                 line=reader.line_num)
            try:
                features.append([float(v) for v in row[:4]])
            except ValueError:
                raise ParseError(f"non-numeric feature in {row[:4]}",
                                 line=reader.line_num) from None
            name = row[4].strip().lower()
            if name not in SPECIES:
                raise ParseError(f"unknown species {row[4]!r}",
                                 line=reader.line_num)
            labels.append(SPECIES.index(name))
    X = np.asarray(features, dtype=float)
    y = np.asarray(labels, dtype=int)
    if X.shape[0] == 0:
        raise ParseError("no data rows")
    return X, y


@dataclass(frozen=True)
class FeatureScaler:
    """Min-max normalization frozen on the training split."""

    minima: np.ndarray
    maxima: np.ndarray

    @classmethod
    def fit(cls, X: np.ndarray) -> "FeatureScaler":
        X = np.asarray(X, dtype=float)
        minima = X.min(axis=0)
        maxima = X.max(axis=0)
        if np.any(maxima <= minima):
            bad = np.flatnonzero(maxima <= minima)
            raise DegenerateFeature(
                f"constant training feature(s) at column(s) {bad.tolist()}")
        return cls(minima, maxima)

    def transform(self, X: np.ndarray) -> np.ndarray:
        """Map to [0, 1]; values outside the training range are clamped."""
        X = np.asarray(X, dtype=float)
        return np.clip((X - self.minima) / (self.maxima - self.minima),
                       0.0, 1.0)


def normalize(X: np.ndarray, scaler: FeatureScaler) -> np.ndarray:
    """Apply train-split min-max statistics to any split (clamped)."""
    return scaler.transform(X)


def sensor_expand(X_norm: np.ndarray) -> np.ndarray:
    """Expand normalized features into the 4-channel sensor code.

    For each feature value x in [0, 1] the four channels are

        x,  1 - x,  1 - 2|x - 0.5|,  2|x - 0.5|,

    i.e. two complementary linear detectors and two complementary
    tent detectors centered on the range midpoint.  Channels are laid
    out feature-major: columns 0-3 encode feature 0, and so on.
    Channel pairs (0, 1) and (2, 3) each sum to exactly 1, a parity
    the input-referred tests rely on.
    """
    X_norm = np.atleast_2d(np.asarray(X_norm, dtype=float))
    if np.any(X_norm < -1e-12) or np.any(X_norm > 1 + 1e-12):
        raise ValueError("sensor_expand expects features normalized to [0, 1]")
    n, d = X_norm.shape
    out = np.empty((n, d * N_SENSORS_PER_FEATURE))
    tent = 1.0 - 2.0 * np.abs(X_norm - 0.5)
    out[:, 0::4] = X_norm
    out[:, 1::4] = 1.0 - X_norm
    out[:, 2::4] = tent
    out[:, 3::4] = 1.0 - tent
    return out


def encode_targets(labels: np.ndarray, n_classes: int = 3) -> np.ndarray:
    """One-vs-rest target levels: +1 on the true class node, -1 elsewhere."""
    labels = np.asarray(labels, dtype=int)
    if np.any(labels < 0) or np.any(labels >= n_classes):
        raise ValueError("label out of range")
    Y = np.full((labels.shape[0], n_classes), TARGET_LOW)
    Y[np.arange(labels.shape[0]), labels] = TARGET_HIGH
    return Y


def decode_outputs(y: np.ndarray) -> np.ndarray:
    """Hard class decision: index of the most positive output node."""
    return np.argmax(np.atleast_2d(y), axis=1)


def stratified_split(labels: np.ndarray, n_train: int,
                     rng: np.random.Generator
                     ) -> Tuple[np.ndarray, np.ndarray]:
    """Class-proportional train/test split by largest-remainder rounding.

    Returns (train_idx, test_idx), each shuffled.  Allocation across
    classes follows each class's exact proportional share, with the
    leftover seats going to the largest fractional remainders (ties
    broken by class index), so 100 of 150 balanced 3-class samples
    splits as 34 + 33 + 33.
    """
    labels = np.asarray(labels, dtype=int)
    n_total = labels.shape[0]
    if not 0 < n_train < n_total:
        raise ValueError("n_train must be in (0, n_total)")
    classes = np.unique(labels)
    shares = np.array([(labels == c).sum() * n_train / n_total
                       for c in classes])
    counts = np.floor(shares).astype(int)
    remainder = n_train - counts.sum()
    order = np.lexsort((np.arange(len(classes)), -(shares - counts)))
    counts[order[:remainder]] += 1

    train_parts, test_parts = [], []
    for c, k in zip(classes, counts):
        idx = np.flatnonzero(labels == c)
        idx = rng.permutation(idx)
        train_parts.append(idx[:k])
        test_parts.append(idx[k:])
    train_idx = rng.permutation(np.concatenate(train_parts))
    test_idx = rng.permutation(np.concatenate(test_parts))
    return train_idx, test_idx


def split(labels: np.ndarray, seed: Optional[int] = None,
          n_train: int = 100) -> Tuple[np.ndarray, np.ndarray]:
    """Seeded stratified train/test index split (100/50 by default)."""
    return stratified_split(labels, n_train, np.random.default_rng(seed))


@dataclass(frozen=True)
class Dataset:
    """Encoded train/test split ready for the array."""

    X_train: np.ndarray  # (n_train, 16) sensor lines in [0, 1]
    Y_train: np.ndarray  # (n_train, 3) target levels in {-1, +1}
    X_test: np.ndarray
    Y_test: np.ndarray
    labels_train: np.ndarray
    labels_test: np.ndarray
    scaler: FeatureScaler


def prepare_dataset(n_train: int = 100, seed: Optional[int] = None,
                    path=None, rng: Optional[np.random.Generator] = None
                    ) -> Dataset:
    """Load, split, normalize (on train statistics only) and encode."""
    X, labels = load_iris(path)
    if rng is None:
        rng = np.random.default_rng(seed)
    train_idx, test_idx = stratified_split(labels, n_train, rng)
    scaler = FeatureScaler.fit(X[train_idx])
    X_train = sensor_expand(scaler.transform(X[train_idx]))
    X_test = sensor_expand(scaler.transform(X[test_idx]))
    return Dataset(
        X_train=X_train,
        Y_train=encode_targets(labels[train_idx]),
        X_test=X_test,
        Y_test=encode_targets(labels[test_idx]),
        labels_train=labels[train_idx],
        labels_test=labels[test_idx],
        scaler=scaler,
    )
