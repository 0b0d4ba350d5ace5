"""End-to-end orchestration: optional alignment, then a classifier.

Also ships the two dependency-free baselines (1-nearest-neighbor and
nearest-centroid) used by the evaluation harness. All three classifiers
are deterministic functions of their inputs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import alignment
from .classifier import (
    LabeledDataset,
    Prediction,
    class_centers,
    classify,
    distance_matrix,
)
from .errors import InvalidInputError
from .lp import AnnotationMatrix

ALIGNMENTS = ("none", "coral")
CLASSIFIERS = ("easytl", "1nn", "centroid")


@dataclass(frozen=True)
class PipelineConfig:
    """Which alignment and classifier to run.

    alignment "none" with classifier "easytl" is the assignment classifier
    on raw features; alignment "coral" adds correlation alignment in front
    of it (the default full method).
    """

    alignment: str = "coral"
    classifier: str = "easytl"

    def __post_init__(self):
        if self.classifier not in CLASSIFIERS:
            raise InvalidInputError(
                f"unknown classifier {self.classifier!r}; choose from {CLASSIFIERS}"
            )
        if self.alignment not in alignment.available_transforms():
            raise InvalidInputError(
                f"unknown alignment {self.alignment!r}; "
                f"choose from {tuple(alignment.available_transforms())}"
            )


def _one_hot_prediction(labels: np.ndarray, num_classes: int, chosen_costs: np.ndarray) -> Prediction:
    values = np.zeros((num_classes, labels.shape[0]))
    values[labels, np.arange(labels.shape[0])] = 1.0
    mat = AnnotationMatrix(values=values, objective=float(chosen_costs.sum()))
    return Prediction(labels=labels, probabilities=mat)


def nearest_neighbor_1(src: LabeledDataset, target) -> Prediction:
    """1-NN baseline: each target takes the label of its nearest source row.

    Distances are squared Euclidean; ties resolve to the lowest source row
    index.
    """
    if src.num_samples == 0:
        raise InvalidInputError("nearest neighbor needs a nonempty source")
    t = np.asarray(target, dtype=np.float64)
    if t.ndim != 2 or t.shape[1] != src.num_features:
        raise InvalidInputError(
            f"target shape {t.shape} incompatible with {src.num_features} source features"
        )
    s = src.features
    sq = (t * t).sum(axis=1)[:, None] + (s * s).sum(axis=1)[None, :] - 2.0 * (t @ s.T)
    np.maximum(sq, 0.0, out=sq)
    nearest = sq.argmin(axis=1)
    labels = src.labels[nearest]
    chosen = sq[np.arange(t.shape[0]), nearest]
    return _one_hot_prediction(labels, src.num_classes, chosen)


def nearest_centroid(src: LabeledDataset, target) -> Prediction:
    """Nearest-centroid baseline: per-column argmin of the center distances.

    Ties resolve to the lowest class index. Unlike the assignment
    classifier there is no coverage guarantee.
    """
    centers = class_centers(src)
    costs = distance_matrix(centers, target)
    labels = costs.argmin(axis=0)
    chosen = costs[labels, np.arange(costs.shape[1])]
    return _one_hot_prediction(labels, src.num_classes, chosen)


_CLASSIFIER_FUNCS = {
    "easytl": classify,
    "1nn": nearest_neighbor_1,
    "centroid": nearest_centroid,
}


def run(cfg: PipelineConfig, src: LabeledDataset, target, timings: dict | None = None) -> Prediction:
    """Fit the configured alignment on raw features, apply it, classify.

    The transform is fitted once on the raw (pre-alignment) features of
    both domains; source rows are mapped, target rows pass through
    unchanged. When ``timings`` is a dict, per-stage wall times in
    milliseconds are recorded into it under "align" and "classify".
    """
    t = np.asarray(target, dtype=np.float64)
    if t.ndim != 2 or t.shape[1] != src.num_features:
        raise InvalidInputError(
            f"target shape {t.shape} incompatible with {src.num_features} source features"
        )

    tic = time.perf_counter()
    transform = alignment.fit_transform(cfg.alignment, src.features, t)
    aligned_src = transform.apply(src.features, alignment.SOURCE)
    aligned_tgt = transform.apply(t, alignment.TARGET)
    if timings is not None:
        timings["align"] = (time.perf_counter() - tic) * 1000.0

    aligned = LabeledDataset(
        features=aligned_src, labels=src.labels, num_classes=src.num_classes
    )
    tic = time.perf_counter()
    prediction = _CLASSIFIER_FUNCS[cfg.classifier](aligned, aligned_tgt)
    if timings is not None:
        timings["classify"] = (time.perf_counter() - tic) * 1000.0
    return prediction
