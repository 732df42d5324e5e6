"""Dense complex linear algebra for small matrices.

Everything here works on plain numpy arrays of complex128. Matrices are
square and dense; dimensions stay small (tens, not thousands), so clarity
wins over performance everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NotHermitian, NotPSD


@dataclass(frozen=True)
class EigDecomposition:
    """Eigenvalues in ascending order with matching orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_square_matrix(M) -> np.ndarray:
    """Coerce input to a finite square complex matrix."""
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A.real)) or not np.all(np.isfinite(A.imag)):
        raise DimensionMismatch("matrix entries must be finite")
    return A


def hermitian_eig(M, tol: float = 1e-10) -> EigDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    A = as_square_matrix(M)
    dev = np.max(np.abs(A - A.conj().T))
    if dev > tol:
        raise NotHermitian(f"matrix deviates from Hermitian by {dev:.3e} (tol {tol:.1e})")
    try:
        w, V = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"eigensolver failed to converge: {exc}") from exc
    return EigDecomposition(eigenvalues=w, eigenvectors=V)


def psd_sqrt(M) -> np.ndarray:
    """Hermitian square root of a positive semidefinite matrix.

    Eigenvalues in [-1e-10, 0) are rounding debris and are clamped to zero;
    anything more negative is a genuine violation and raises NotPSD.
    """
    dec = hermitian_eig(M)
    w = dec.eigenvalues
    if np.min(w) < -1e-10:
        raise NotPSD(f"matrix has eigenvalue {np.min(w):.3e} < -1e-10")
    w = np.clip(w, 0.0, None)
    V = dec.eigenvectors
    return (V * np.sqrt(w)) @ V.conj().T


def kron(A, B) -> np.ndarray:
    """Kronecker product of two square matrices."""
    return np.kron(as_square_matrix(A), as_square_matrix(B))


def vec(M) -> np.ndarray:
    """Column-stacking vectorization: entry (i, j) lands at position j*n + i.

    This convention pairs with lifted operators of the form I (x) A, so that
    <vec(M)| I (x) A |vec(M)> = Tr(A M M^dagger).
    """
    return as_square_matrix(M).T.reshape(-1)


def unvec(v) -> np.ndarray:
    """Inverse of vec: fold a length n*n vector back into an n x n matrix."""
    a = np.asarray(v, dtype=complex).reshape(-1)
    n = int(round(np.sqrt(a.size)))
    if n * n != a.size:
        raise DimensionMismatch(f"vector length {a.size} is not a perfect square")
    return a.reshape(n, n).T


def is_unitary(M, tol: float = 1e-10) -> bool:
    """True iff the max-norm deviation of M^dagger M from I is within tol."""
    A = as_square_matrix(M)
    return bool(np.max(np.abs(A.conj().T @ A - np.eye(A.shape[0]))) <= tol)


def unitary_deviation(M) -> float:
    """Max-norm distance of M^dagger M from the identity."""
    A = as_square_matrix(M)
    return float(np.max(np.abs(A.conj().T @ A - np.eye(A.shape[0]))))


def partial_trace(M, keep: str) -> np.ndarray:
    """Trace out one tensor factor of an operator on C^n (x) C^n.

    M must be n^2 x n^2 with both factors of equal dimension n. keep="first"
    traces out the second factor, keep="second" the first.
    """
    A = as_square_matrix(M)
    n = int(round(np.sqrt(A.shape[0])))
    if n * n != A.shape[0]:
        raise DimensionMismatch(f"dimension {A.shape[0]} is not a perfect square")
    T = A.reshape(n, n, n, n)
    if keep == "first":
        return np.einsum("ikjk->ij", T)
    if keep == "second":
        return np.einsum("kikj->ij", T)
    raise ValueError(f"keep must be 'first' or 'second', got {keep!r}")
