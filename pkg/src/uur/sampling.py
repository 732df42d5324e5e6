"""Deterministic random instance generation for property suites.

Every trial gets its own counter-based generator keyed by (seed, trial), so
results never depend on the order trials run in and reruns with the same
seed are bit-identical.
"""

from __future__ import annotations

import numpy as np

from .moments import DensityMatrix, PureState


def trial_generator(seed: int, trial: int, stream: int = 0) -> np.random.Generator:
    """Independent generator for one (seed, trial) cell.

    stream separates consumers that share a seed and trial index (different
    check suites, for instance) without any draw-order coupling.
    """
    return np.random.Generator(np.random.Philox(key=seed, counter=[0, 0, stream, trial]))


def _complex_gaussian(rng: np.random.Generator, *shape: int) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-style random unitary via QR with phase-fixed diagonal."""
    Q, R = np.linalg.qr(_complex_gaussian(rng, n, n))
    diag = np.diag(R)
    return Q * (diag / np.abs(diag))


def random_state(rng: np.random.Generator, n: int) -> PureState:
    """Normalized complex Gaussian vector."""
    v = _complex_gaussian(rng, n)
    return PureState(amplitudes=v / np.linalg.norm(v))


def random_density(rng: np.random.Generator, n: int) -> DensityMatrix:
    """Full-rank-ish random mixed state from a normalized Wishart draw."""
    Z = _complex_gaussian(rng, n, n)
    M = Z @ Z.conj().T
    return DensityMatrix(matrix=M / np.real(np.trace(M)))
