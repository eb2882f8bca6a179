"""Dense complex linear algebra on small tensor-product spaces.

All operators live on composite spaces indexed as i_first * dim_second +
i_second; every routine in the package assumes this one convention.
Matrices are plain complex128 ndarrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    AllZeroError,
    DimensionMismatchError,
    NegativeEigenvalueError,
    NonSquareError,
    NotHermitianError,
)


def as_matrix(m) -> np.ndarray:
    """Coerce input to a 2-D complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-D array, got shape {a.shape}")
    return a


def hermitian_part(m) -> np.ndarray:
    """(m + m†)/2."""
    m = as_matrix(m)
    return (m + m.conj().T) / 2


def _check_square(m: np.ndarray) -> None:
    if m.shape[0] != m.shape[1]:
        raise NonSquareError(f"matrix is {m.shape[0]}x{m.shape[1]}")


def _check_hermitian(m: np.ndarray, tol: float) -> None:
    dev = np.linalg.norm(m - m.conj().T)
    if dev > tol * max(1.0, np.linalg.norm(m)):
        raise NotHermitianError(f"Hermiticity deviation {dev:.3e} exceeds tolerance {tol:.1e}")


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral decomposition of a Hermitian matrix.

    eigenvalues are real and sorted non-increasing; eigenvectors holds the
    matching orthonormal eigenvectors as columns.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        """V diag(w) V†."""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def herm_eig(m, hermiticity_tol: float = 1e-10) -> EigenDecomposition:
    """Full spectral decomposition of the Hermitian part of m.

    Raises NonSquareError / NotHermitianError when m is not square or the
    anti-Hermitian part exceeds hermiticity_tol relative to max(1, ||m||_F).
    LAPACK convergence failures propagate as numpy.linalg.LinAlgError.
    """
    m = as_matrix(m)
    _check_square(m)
    _check_hermitian(m, hermiticity_tol)
    w, v = np.linalg.eigh(hermitian_part(m))
    return EigenDecomposition(w[::-1].copy(), v[:, ::-1].copy())


def psd_sqrt(m, clip_tol: float = 1e-12, hermiticity_tol: float = 1e-10) -> np.ndarray:
    """Positive-semidefinite Hermitian square root.

    Eigenvalues below clip_tol are treated as exact zeros (round-off guard);
    an eigenvalue below -clip_tol raises NegativeEigenvalueError.
    """
    eig = herm_eig(m, hermiticity_tol)
    w = eig.eigenvalues
    if w.min() < -clip_tol:
        raise NegativeEigenvalueError(f"eigenvalue {w.min():.3e} below -{clip_tol:.1e}")
    w = np.where(w < clip_tol, 0.0, w)
    v = eig.eigenvectors
    return (v * np.sqrt(w)) @ v.conj().T


def reg_inverse(m, rel_cutoff: float = 1e-12, hermiticity_tol: float = 1e-10) -> np.ndarray:
    """Hermitian pseudo-inverse with a relative eigenvalue cutoff.

    Eigenvalues w >= rel_cutoff * w_max are inverted, the rest map to zero,
    which keeps the result well-defined on the support of m.
    """
    eig = herm_eig(m, hermiticity_tol)
    w = eig.eigenvalues
    wmax = w.max(initial=0.0)
    if wmax <= 0.0:
        raise AllZeroError("no positive eigenvalue to invert")
    keep = (w >= rel_cutoff * wmax) & (w > 0.0)
    winv = np.zeros_like(w)
    winv[keep] = 1.0 / w[keep]
    v = eig.eigenvectors
    return (v * winv) @ v.conj().T


def kron(a, b) -> np.ndarray:
    """Tensor product with composite row index i_a * rows(b) + i_b."""
    return np.kron(as_matrix(a), as_matrix(b))


def _split(m, dim_first: int, dim_second: int) -> np.ndarray:
    m = as_matrix(m)
    n = dim_first * dim_second
    if m.shape != (n, n):
        raise DimensionMismatchError(
            f"matrix shape {m.shape} does not factor as ({dim_first}x{dim_second})^2"
        )
    return m.reshape(dim_first, dim_second, dim_first, dim_second)


def partial_trace(m, dim_first: int, dim_second: int, keep: str = "first") -> np.ndarray:
    """Trace out one tensor factor of an operator on a bipartite space."""
    t = _split(m, dim_first, dim_second)
    if keep == "first":
        return np.einsum("akbk->ab", t)
    if keep == "second":
        return np.einsum("akal->kl", t)
    raise ValueError(f"keep must be 'first' or 'second', got {keep!r}")


def partial_transpose(m, dim_first: int, dim_second: int, which: str = "second") -> np.ndarray:
    """Transpose the indices of one tensor factor only."""
    t = _split(m, dim_first, dim_second)
    n = dim_first * dim_second
    if which == "first":
        return t.transpose(2, 1, 0, 3).reshape(n, n)
    if which == "second":
        return t.transpose(0, 3, 2, 1).reshape(n, n)
    raise ValueError(f"which must be 'first' or 'second', got {which!r}")
