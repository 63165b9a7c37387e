"""Dense complex matrix helpers for small Hermitian problems.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  The functions
here validate shape and finiteness, and otherwise stay thin wrappers around
numpy so that the numerical behaviour is easy to audit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

ComplexMatrix = npt.NDArray[np.complex128]

#: Relative Hermiticity tolerance, scaled by ``max(1, ||A||_2)``.
HERM_RTOL = 1e-10


class NotHermitianError(ValueError):
    """Raised when a matrix that must be Hermitian is not."""


def as_matrix(a) -> ComplexMatrix:
    """Coerce ``a`` into a square, finite ``complex128`` array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValueError(f"expected a nonempty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def _check_same_dim(a: ComplexMatrix, b: ComplexMatrix) -> None:
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")


def matmul(a, b) -> ComplexMatrix:
    a, b = as_matrix(a), as_matrix(b)
    _check_same_dim(a, b)
    return a @ b


def trace(a) -> complex:
    return complex(np.trace(as_matrix(a)))


def dagger(a) -> ComplexMatrix:
    return as_matrix(a).conj().T


def commutator(a, b) -> ComplexMatrix:
    """Return ``ab - ba``."""
    a, b = as_matrix(a), as_matrix(b)
    _check_same_dim(a, b)
    return a @ b - b @ a


def hs_norm_sq(a) -> float:
    """Squared Hilbert-Schmidt (Frobenius) norm, ``Tr(a^dagger a)``."""
    m = as_matrix(a)
    return float(np.sum(m.real**2 + m.imag**2))


def hermiticity_residual(a) -> float:
    m = as_matrix(a)
    return float(np.sqrt(hs_norm_sq(m - m.conj().T)))


def is_hermitian(a, rtol: float = HERM_RTOL) -> bool:
    m = as_matrix(a)
    return hermiticity_residual(m) <= rtol * max(1.0, np.sqrt(hs_norm_sq(m)))


def hermitize(a, rtol: float = HERM_RTOL) -> ComplexMatrix:
    """Check Hermiticity within tolerance and return ``(a + a^dagger)/2``."""
    m = as_matrix(a)
    if not is_hermitian(m, rtol):
        raise NotHermitianError(
            f"matrix is not Hermitian: ||A - A^dagger||_2 = {hermiticity_residual(m):.3e}"
        )
    return (m + m.conj().T) / 2


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending real eigenvalues and the unitary whose columns are eigenvectors."""

    eigenvalues: npt.NDArray[np.float64]
    eigenvectors: ComplexMatrix

    def reconstruct(self) -> ComplexMatrix:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def hermitian_eig(a, rtol: float = HERM_RTOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix (LAPACK ``heevd`` via numpy)."""
    w, v = np.linalg.eigh(hermitize(a, rtol))
    return EigenDecomposition(w, v)


def is_psd(a, tol: float = 1e-10) -> bool:
    """True iff the smallest eigenvalue of Hermitian ``a`` is at least ``-tol``."""
    return bool(hermitian_eig(a).eigenvalues[0] >= -tol)
