"""Expectation values, delta coordinate vectors, variances, purification.

The variance convention throughout is the one natural for unitary operators:
with dA = A - <A>, the variance is <dA^dagger dA> = 1 - |<A>|^2 on pure
states and 1 - |Tr(A rho)|^2 on mixed ones. The coordinate vector of dA|psi>
in the computational basis drives every bound downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import (
    BlochVectorTooLong,
    DimensionMismatch,
    InvalidDensityMatrix,
    NotUnitary,
)

UNITARY_TOL = 1e-8

sigma_x = np.array([[0, 1], [1, 0]], dtype=complex)
sigma_y = np.array([[0, -1j], [1j, 0]], dtype=complex)
sigma_z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class PureState:
    """Unit-norm complex amplitude vector in the computational basis."""

    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
            raise ValueError("state amplitudes must be finite")
        nrm = np.linalg.norm(a)
        if abs(nrm - 1.0) > 1e-10:
            raise ValueError(f"state norm {nrm!r} deviates from 1 by more than 1e-10")
        object.__setattr__(self, "amplitudes", a)

    @property
    def dim(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        M = linalg.as_square_matrix(self.matrix)
        if np.max(np.abs(M - M.conj().T)) > 1e-10:
            raise InvalidDensityMatrix("density matrix is not Hermitian to 1e-10")
        tr = np.trace(M)
        if abs(tr - 1.0) > 1e-10:
            raise InvalidDensityMatrix(f"trace {tr!r} deviates from 1 by more than 1e-10")
        if np.min(np.linalg.eigvalsh(M)) < -1e-10:
            raise InvalidDensityMatrix("density matrix has an eigenvalue below -1e-10")
        object.__setattr__(self, "matrix", M)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class DeltaVector:
    """Coordinates of (A - <A>)|psi> plus the mean <A> they were built from.

    For unitary A the squared norm of the entries is the variance
    1 - |<A>|^2; that identity is what makes these coordinates useful.
    """

    entries: np.ndarray
    mean: complex


@dataclass(frozen=True)
class ModulusPair:
    """The nonnegative coordinate moduli x, y for an operator pair.

    x_i = |alpha_i| and y_i = |beta_i| where alpha, beta are the delta
    coordinate vectors of the two operators on the shared state. All the
    bound formulas downstream consume only x and y; the complex vectors ride
    along for the correlation term.
    """

    x: np.ndarray
    y: np.ndarray
    alpha: DeltaVector
    beta: DeltaVector

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if x.shape != y.shape or x.ndim != 1:
            raise DimensionMismatch(f"x and y must be 1-D of equal length, got {x.shape} and {y.shape}")
        if np.min(x) < 0 or np.min(y) < 0:
            raise ValueError("modulus vectors must be nonnegative")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def dim(self) -> int:
        return self.x.size

    @classmethod
    def from_moduli(cls, x, y) -> "ModulusPair":
        """Build a synthetic pair from bare modulus vectors (tests, CLI math)."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return cls(
            x=x,
            y=y,
            alpha=DeltaVector(entries=x.astype(complex), mean=0j),
            beta=DeltaVector(entries=y.astype(complex), mean=0j),
        )


def _check_dims(A: np.ndarray, psi: PureState):
    if A.shape[0] != psi.dim:
        raise DimensionMismatch(f"operator dim {A.shape[0]} != state dim {psi.dim}")


def _require_unitary(A: np.ndarray, name: str = "operator"):
    dev = linalg.unitary_deviation(A)
    if dev > UNITARY_TOL:
        raise NotUnitary(f"{name} deviates from unitarity by {dev:.3e} (tol {UNITARY_TOL:.1e})")


def expectation(A, psi: PureState) -> complex:
    """<psi|A|psi>."""
    M = linalg.as_square_matrix(A)
    _check_dims(M, psi)
    return complex(np.vdot(psi.amplitudes, M @ psi.amplitudes))


def delta_vector(A, psi: PureState) -> DeltaVector:
    """Coordinates of (A - <A>)|psi> in the computational basis."""
    M = linalg.as_square_matrix(A)
    _check_dims(M, psi)
    _require_unitary(M)
    mean = expectation(M, psi)
    return DeltaVector(entries=M @ psi.amplitudes - mean * psi.amplitudes, mean=mean)


def modulus_pair(A, B, psi: PureState) -> ModulusPair:
    """Coordinate moduli x, y of the two delta vectors on a shared state."""
    alpha = delta_vector(A, psi)
    beta = delta_vector(B, psi)
    return ModulusPair(x=np.abs(alpha.entries), y=np.abs(beta.entries), alpha=alpha, beta=beta)


def correlation(A, B, psi: PureState) -> complex:
    """<A^dagger B> - <A^dagger><B>, the cross term of the pair.

    Computed as the inner product of the two delta coordinate vectors,
    which equals the operator form identically.
    """
    alpha = delta_vector(A, psi)
    beta = delta_vector(B, psi)
    return complex(np.vdot(alpha.entries, beta.entries))


def variance_pure(A, psi: PureState) -> float:
    """Variance <dA^dagger dA> of a unitary operator on a pure state."""
    d = delta_vector(A, psi)
    return float(np.real(np.vdot(d.entries, d.entries)))


def variance_mixed(A, rho: DensityMatrix) -> float:
    """Variance 1 - |Tr(A rho)|^2 of a unitary operator on a mixed state."""
    M = linalg.as_square_matrix(A)
    if M.shape[0] != rho.dim:
        raise DimensionMismatch(f"operator dim {M.shape[0]} != state dim {rho.dim}")
    _require_unitary(M)
    return float(1.0 - abs(np.trace(M @ rho.matrix)) ** 2)


def purify(rho: DensityMatrix) -> PureState:
    """Spectral purification: the unit vector vec(sqrt(rho)) on C^n (x) C^n.

    Expectations of lifted operators I (x) A reproduce Tr(A rho) exactly.
    The partial trace over the first factor is rho; the one over the second
    factor is the transpose of rho (they coincide only for real rho).
    """
    root = linalg.psd_sqrt(rho.matrix)
    v = linalg.vec(root)
    return PureState(amplitudes=v / np.linalg.norm(v))


def lift(A) -> np.ndarray:
    """Lift an operator to the purified space as I (x) A."""
    M = linalg.as_square_matrix(A)
    return linalg.kron(np.eye(M.shape[0]), M)


def bloch_density(r) -> DensityMatrix:
    """Qubit density matrix (I + r . sigma)/2 from a Bloch 3-vector."""
    r = np.asarray(r, dtype=float).reshape(-1)
    if r.size != 3:
        raise ValueError(f"Bloch vector must have 3 components, got {r.size}")
    nrm = np.linalg.norm(r)
    if nrm > 1.0 + 1e-12:
        raise BlochVectorTooLong(f"Bloch vector norm {nrm!r} exceeds 1")
    M = 0.5 * (np.eye(2, dtype=complex) + r[0] * sigma_x + r[1] * sigma_y + r[2] * sigma_z)
    return DensityMatrix(matrix=M)
