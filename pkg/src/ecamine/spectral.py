"""Covariance spectra and the truncated orthogonal-basis transform.

The eigensolve itself is delegated to LAPACK via numpy; this module owns
the contracts around it: canonical symmetry, descending eigenvalue order,
deterministic eigenvector signs, the dual (Gram) route used as a
cross-check, and the truncation-error bookkeeping.

BLAS/LAPACK calls run pinned to one thread so results are byte-identical
regardless of ambient thread-pool configuration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from threadpoolctl import threadpool_limits

from .dataset import CenteredMatrix

DEFAULT_TAU_REL = 1e-10


@dataclass(frozen=True)
class Spectrum:
    """Descending eigenvalues with aligned orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    order: int


@dataclass(frozen=True)
class KlBasis:
    """Forward/backward change of basis plus a truncation order.

    ``forward`` rows are the eigenvectors (analysis); ``backward`` columns
    are the same eigenvectors (synthesis); keeping the first ``m``
    coefficients gives the best rank-m mean-square reconstruction.
    """

    forward: np.ndarray
    backward: np.ndarray
    m: int

    def __post_init__(self) -> None:
        if self.forward.shape != self.backward.shape or self.forward.ndim != 2:
            raise ValueError("forward/backward matrices must have matching shape")
        if not 1 <= self.m <= self.order:
            raise ValueError(f"truncation order must be in [1, {self.order}]")

    @property
    def order(self) -> int:
        return self.backward.shape[0]

    @classmethod
    def from_spectrum(cls, spectrum: Spectrum, m: int) -> "KlBasis":
        return cls(
            forward=spectrum.eigenvectors.T.copy(),
            backward=spectrum.eigenvectors.copy(),
            m=m,
        )


def symmetrize(M: np.ndarray) -> np.ndarray:
    """Canonical exactly-symmetric form of a nearly symmetric matrix."""
    M = np.asarray(M, dtype=np.float64)
    return (M + M.T) / 2.0


def covariance(X: CenteredMatrix) -> np.ndarray:
    """Covariance of the retained columns, normalized by n: (1/n) X^T X."""
    with threadpool_limits(limits=1):
        R = X.values.T @ X.values
    return symmetrize(R / X.n)


def eig_sym(R: np.ndarray) -> Spectrum:
    """Full symmetric eigendecomposition, eigenvalues descending.

    Eigenvector signs are fixed by making the largest-magnitude entry of
    each vector positive, so repeated runs emit identical output.
    """
    R = np.asarray(R, dtype=np.float64)
    if R.ndim != 2 or R.shape[0] != R.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {R.shape}")
    if not np.isfinite(R).all():
        raise ValueError("matrix entries must be finite")
    if not np.array_equal(R, R.T):
        raise ValueError("matrix must be exactly symmetric; see symmetrize()")
    with threadpool_limits(limits=1):
        w, V = np.linalg.eigh(R)
    w = w[::-1].copy()
    V = V[:, ::-1].copy()
    anchor = np.argmax(np.abs(V), axis=0)
    flip = V[anchor, np.arange(V.shape[1])] < 0
    V[:, flip] *= -1.0
    return Spectrum(eigenvalues=w, eigenvectors=V, order=R.shape[0])


def dual_spectrum(X: CenteredMatrix) -> Spectrum:
    """Spectrum of the n x n Gram matrix (1/n) X X^T.

    Shares the nonzero eigenvalues of :func:`covariance` of the same data;
    computed independently, it serves as a brute-force cross-check of the
    primal route.
    """
    with threadpool_limits(limits=1):
        G = X.values @ X.values.T
    return eig_sym(symmetrize(G / X.n))


def kl_project(u: np.ndarray, basis: KlBasis) -> np.ndarray:
    """First m coefficients of u in the eigenvector basis."""
    u = np.asarray(u, dtype=np.float64)
    if u.shape != (basis.order,):
        raise ValueError(f"expected a vector of length {basis.order}, got {u.shape}")
    return basis.forward[: basis.m] @ u


def kl_reconstruct(w: np.ndarray, basis: KlBasis) -> np.ndarray:
    """Synthesize from m coefficients, zero-padding the discarded ones."""
    w = np.asarray(w, dtype=np.float64)
    if w.shape != (basis.m,):
        raise ValueError(f"expected {basis.m} coefficients, got {w.shape}")
    return basis.backward[:, : basis.m] @ w


def truncation_error(X: CenteredMatrix, basis: KlBasis) -> float:
    """Mean squared reconstruction error over the data rows.

    Computed directly as (1/n) * sum_j ||u_j - z_j||^2, not from the
    eigenvalues, so it can be checked against the discarded-eigenvalue sum.
    """
    B_m = basis.backward[:, : basis.m]
    Z = (X.values @ B_m) @ B_m.T
    diff = X.values - Z
    return float(np.mean(np.sum(diff * diff, axis=1)))


def count_components(spectrum: Spectrum, tau_rel: float = DEFAULT_TAU_REL) -> int:
    """Number of eigenvalues above ``tau_rel`` times the largest one."""
    if not 0.0 < tau_rel < 1.0:
        raise ValueError(f"relative threshold must be in (0, 1), got {tau_rel}")
    w = spectrum.eigenvalues
    if w.size == 0:
        raise ValueError("empty spectrum")
    return int(np.sum(w > tau_rel * w[0]))
