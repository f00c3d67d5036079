"""Shared fixtures and independent oracle helpers."""

import numpy as np
import pytest
import scipy.linalg

from skewinfo import BipartiteState, DensityMatrix, stream

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def bell_pair() -> BipartiteState:
    v = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    return BipartiteState(DensityMatrix(np.outer(v, v.conj())), 2, 2)


def oracle_sqrtm(m: np.ndarray) -> np.ndarray:
    """State square root through scipy, independent of the package kernel."""
    root = scipy.linalg.sqrtm(m)
    return 0.5 * (root + root.conj().T)


def oracle_q_total(rho: np.ndarray) -> float:
    """Closed form n - (Tr sqrt(rho))^2."""
    n = rho.shape[0]
    return n - np.trace(oracle_sqrtm(rho)).real ** 2


def oracle_q_local(rho: np.ndarray, dims: tuple[int, int], side: str) -> float:
    """Closed form n_S - Tr[(Tr_S sqrt(rho))^2], tracing out the measured side."""
    n_a, n_b = dims
    root = oracle_sqrtm(rho).reshape(n_a, n_b, n_a, n_b)
    if side == "A":
        reduced = np.trace(root, axis1=0, axis2=2)
        n_s = n_a
    else:
        reduced = np.trace(root, axis1=1, axis2=3)
        n_s = n_b
    return n_s - np.trace(reduced @ reduced).real


@pytest.fixture
def bell() -> BipartiteState:
    return bell_pair()


@pytest.fixture
def rng() -> np.random.Generator:
    return stream(20240, 0)
