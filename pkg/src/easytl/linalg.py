"""Dense symmetric linear algebra: covariance and matrix square roots.

Everything here operates on plain float64 numpy arrays. Matrices returned
by these functions are exactly symmetric as stored, so downstream
decompositions never see accumulated asymmetry.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError

# Eigenvalues are clamped here before fractional powers. Intended inputs are
# covariance + identity, whose true spectrum is >= 1; the clamp only guards
# against numerical noise around zero.
EIGENVALUE_FLOOR = 1e-12

# Maximum relative asymmetry accepted by symmetric_eig before it refuses
# to treat the input as symmetric.
SYMMETRY_RTOL = 1e-8


@dataclass(frozen=True)
class SymmetricSpectrum:
    """Eigendecomposition of a symmetric matrix.

    Attributes
    ----------
    eigenvalues : ndarray of shape (d,)
        Real eigenvalues in descending order.
    eigenvectors : ndarray of shape (d, d)
        Orthonormal eigenvectors as columns, ordered to match.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        """Return V diag(lambda) V^T."""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.T


def _as_matrix(x, name: str) -> np.ndarray:
    a = np.asarray(x, dtype=np.float64)
    if a.ndim != 2:
        raise InvalidInputError(f"{name} must be a 2-D matrix, got ndim={a.ndim}")
    return a


def _require_square(s, name: str) -> np.ndarray:
    a = _as_matrix(s, name)
    if a.shape[0] != a.shape[1]:
        raise InvalidInputError(f"{name} must be square, got shape {a.shape}")
    return a


def covariance(x) -> np.ndarray:
    """Unbiased sample covariance of row-sample data.

    Parameters
    ----------
    x : array-like of shape (n, d)
        One sample per row.

    Returns
    -------
    ndarray of shape (d, d)
        Symmetric positive-semidefinite covariance with denominator n - 1.
        For n <= 1 the deviations carry no information and the d x d zero
        matrix is returned.
    """
    a = _as_matrix(x, "covariance input")
    n, d = a.shape
    if d < 1:
        raise InvalidInputError("covariance input has no columns")
    if not np.isfinite(a).all():
        raise InvalidInputError("covariance input contains non-finite entries")
    if n <= 1:
        return np.zeros((d, d))
    centered = a - a.mean(axis=0)
    cov = centered.T @ centered / (n - 1)
    return (cov + cov.T) / 2.0


def symmetric_eig(s) -> SymmetricSpectrum:
    """Eigendecomposition of a (numerically) symmetric matrix.

    The input is symmetrized as (S + S^T)/2 before decomposition; inputs
    whose asymmetry exceeds ``SYMMETRY_RTOL`` relative to their magnitude
    are rejected rather than silently averaged.
    """
    a = _require_square(s, "symmetric_eig input")
    if a.size:
        scale = max(1.0, float(np.abs(a).max()))
        if float(np.abs(a - a.T).max()) > SYMMETRY_RTOL * scale:
            raise InvalidInputError("symmetric_eig input is not symmetric")
    sym = (a + a.T) / 2.0
    w, v = np.linalg.eigh(sym)
    order = np.argsort(w)[::-1]
    return SymmetricSpectrum(eigenvalues=w[order], eigenvectors=v[:, order])


def matrix_power_half(s, sign: int) -> np.ndarray:
    """Symmetric square root (sign=+1) or inverse square root (sign=-1).

    Computes V diag(lambda^(sign/2)) V^T with eigenvalues clamped at
    ``EIGENVALUE_FLOOR`` before powering.
    """
    if sign not in (+1, -1):
        raise InvalidInputError(f"sign must be +1 or -1, got {sign!r}")
    spectrum = symmetric_eig(s)
    lam = np.maximum(spectrum.eigenvalues, EIGENVALUE_FLOOR)
    powered = lam ** (sign / 2.0)
    v = spectrum.eigenvectors
    out = (v * powered) @ v.T
    return (out + out.T) / 2.0
