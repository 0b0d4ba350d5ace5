"""The transductive assignment classifier.

Targets are labeled jointly, not point by point: squared distances to the
source class centers form the cost matrix of the annotation program in
:mod:`easytl.lp`, whose coverage constraint guarantees that every class
receives at least one target. The probability annotation matrix from the
solver is column-normalized and each column's argmax becomes the label.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import lp
from .errors import InvalidInputError, MissingClassError


def _as_features(x, name: str) -> np.ndarray:
    a = np.asarray(x, dtype=np.float64)
    if a.ndim != 2:
        raise InvalidInputError(f"{name} must be a 2-D feature matrix, got ndim={a.ndim}")
    return a


@dataclass(frozen=True)
class LabeledDataset:
    """Feature matrix with dense integer labels in [0, num_classes).

    ``num_classes`` defaults to max(labels) + 1; pass it explicitly when the
    label space is wider than the samples at hand. Presence of every class
    is checked where it matters (center computation), not at construction.
    """

    features: np.ndarray
    labels: np.ndarray
    num_classes: int = field(default=-1)

    def __post_init__(self):
        features = _as_features(self.features, "features")
        labels = np.asarray(self.labels)
        if labels.ndim != 1 or labels.shape[0] != features.shape[0]:
            raise InvalidInputError(
                f"labels must be one per feature row: {labels.shape} vs {features.shape}"
            )
        if not np.isfinite(features).all():
            raise InvalidInputError("features contain non-finite entries")
        labels = labels.astype(np.int64, casting="safe") if labels.size else labels.astype(np.int64)
        num_classes = self.num_classes
        if num_classes < 0:
            if labels.size == 0:
                raise InvalidInputError("cannot infer num_classes from an empty dataset")
            num_classes = int(labels.max()) + 1
        if labels.size and (labels.min() < 0 or labels.max() >= num_classes):
            raise InvalidInputError(
                f"labels must lie in [0, {num_classes}), got range "
                f"[{labels.min()}, {labels.max()}]"
            )
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "num_classes", num_classes)

    @property
    def num_samples(self) -> int:
        return self.features.shape[0]

    @property
    def num_features(self) -> int:
        return self.features.shape[1]


@dataclass(frozen=True)
class ClassCenters:
    """Per-class mean feature vectors and the sample count behind each."""

    centers: np.ndarray
    counts: np.ndarray


@dataclass(frozen=True)
class Prediction:
    """Predicted labels plus the annotation matrix they were read from.

    ``labels[j]`` is the argmax of column j of ``probabilities.values``
    (lowest class index on ties). For the assignment classifier the matrix
    is the LP optimum; the baseline classifiers store their one-hot choice
    matrix with the summed cost of the chosen assignments as objective, and
    only the LP route guarantees the row-coverage property.
    """

    labels: np.ndarray
    probabilities: lp.AnnotationMatrix


def class_centers(src: LabeledDataset) -> ClassCenters:
    """Mean feature vector of every class; every class must have samples."""
    c = src.num_classes
    counts = np.bincount(src.labels, minlength=c)
    for cls in range(c):
        if counts[cls] == 0:
            raise MissingClassError(cls)
    centers = np.zeros((c, src.num_features))
    np.add.at(centers, src.labels, src.features)
    centers /= counts[:, None]
    return ClassCenters(centers=centers, counts=counts)


def distance_matrix(centers: ClassCenters, target) -> np.ndarray:
    """Squared Euclidean distances, classes by rows and targets by columns."""
    t = _as_features(target, "target")
    h = centers.centers
    if t.shape[1] != h.shape[1]:
        raise InvalidInputError(
            f"target has {t.shape[1]} features but centers have {h.shape[1]}"
        )
    sq = (h * h).sum(axis=1)[:, None] + (t * t).sum(axis=1)[None, :] - 2.0 * (h @ t.T)
    return np.maximum(sq, 0.0)


def labels_from_annotation(values: np.ndarray) -> np.ndarray:
    """Column-normalize an annotation matrix and take per-column argmax.

    The normalization divides each column by its sum; with unit column
    sums it is a no-op, but it keeps the readout meaningful should a
    solver ever return an interior (fractional) optimum. Ties go to the
    lowest class index.
    """
    sums = values.sum(axis=0)
    normalized = values / np.where(sums > 0, sums, 1.0)
    return normalized.argmax(axis=0)


def classify(src: LabeledDataset, target) -> Prediction:
    """Label the whole target set through the annotation program.

    Needs at least as many target rows as classes; otherwise the coverage
    constraint is infeasible and InfeasibleProblemError propagates.
    """
    centers = class_centers(src)
    costs = distance_matrix(centers, target)
    annotation = lp.solve(lp.AnnotationProblem(costs))
    labels = labels_from_annotation(annotation.values)
    return Prediction(labels=labels, probabilities=annotation)
