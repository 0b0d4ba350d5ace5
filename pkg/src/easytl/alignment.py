"""Feature-space alignment between a source and a target domain.

The shipped transform is correlation alignment: whiten source features by
the regularized source covariance and re-color them with the regularized
target covariance. Target features pass through untouched. Additional
transforms can be registered to experiment with other feature learners in
front of the same classifier.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import InvalidInputError, NotFittedError
from .linalg import covariance, matrix_power_half

SOURCE = "source"
TARGET = "target"


@dataclass(frozen=True)
class FeatureTransform:
    """A fitted feature map applied to source rows only.

    ``matrix`` is the d x d map A such that aligned source features are
    X @ A; for correlation alignment A = (cov_s + I)^(-1/2) (cov_t + I)^(1/2).
    Identity transforms carry no matrix and leave both roles unchanged.
    """

    kind: str
    matrix: Optional[np.ndarray] = None

    def apply(self, x, role: str) -> np.ndarray:
        """Transform a feature matrix for the given domain role.

        Source rows are pushed through the fitted map; target rows are
        returned bit-identical. Identity transforms return the input
        unchanged for both roles.
        """
        if role not in (SOURCE, TARGET):
            raise InvalidInputError(f"role must be {SOURCE!r} or {TARGET!r}, got {role!r}")
        x = np.asarray(x, dtype=np.float64)
        if self.kind == "identity" or role == TARGET:
            return x
        if self.matrix is None:
            raise NotFittedError(f"{self.kind} transform applied before fitting")
        if x.ndim != 2 or x.shape[1] != self.matrix.shape[0]:
            raise InvalidInputError(
                f"feature matrix of shape {x.shape} does not match "
                f"fitted dimension {self.matrix.shape[0]}"
            )
        return x @ self.matrix


def identity_transform() -> FeatureTransform:
    return FeatureTransform(kind="identity")


def fit_coral(source, target) -> FeatureTransform:
    """Fit correlation alignment from raw source and target features.

    Both inputs are (n, d) matrices over the same d features; each needs at
    least one row. Covariances are regularized by the identity before the
    inverse square root / square root, so degenerate domains (a single
    sample, constant features) stay well-defined.
    """
    s = np.asarray(source, dtype=np.float64)
    t = np.asarray(target, dtype=np.float64)
    if s.ndim != 2 or t.ndim != 2:
        raise InvalidInputError("source and target must be 2-D feature matrices")
    if s.shape[1] != t.shape[1]:
        raise InvalidInputError(
            f"source has {s.shape[1]} features but target has {t.shape[1]}"
        )
    if s.shape[0] < 1 or t.shape[0] < 1:
        raise InvalidInputError("source and target each need at least one row")
    d = s.shape[1]
    eye = np.eye(d)
    whiten = matrix_power_half(covariance(s) + eye, -1)
    recolor = matrix_power_half(covariance(t) + eye, +1)
    return FeatureTransform(kind="coral", matrix=whiten @ recolor)


def _fit_identity(source, target) -> FeatureTransform:
    return identity_transform()


# Registry keyed by the CLI's --alignment values. Extension point for other
# feature learners: register a fitter with the same (source, target) signature.
_FITTERS: dict[str, Callable[[np.ndarray, np.ndarray], FeatureTransform]] = {
    "none": _fit_identity,
    "coral": fit_coral,
}


def register_transform(name: str, fitter: Callable[[np.ndarray, np.ndarray], FeatureTransform]):
    """Register a custom alignment under ``name`` for fit_transform/CLI use."""
    _FITTERS[name] = fitter


def available_transforms() -> list[str]:
    return sorted(_FITTERS)


def fit_transform(kind: str, source, target) -> FeatureTransform:
    """Fit the alignment registered under ``kind`` on raw domain features."""
    try:
        fitter = _FITTERS[kind]
    except KeyError:
        raise InvalidInputError(
            f"unknown alignment {kind!r}; available: {', '.join(available_transforms())}"
        ) from None
    return fitter(source, target)
