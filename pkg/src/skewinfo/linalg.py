"""Dense complex linear-algebra kernel.

Matrices are plain ``numpy.ndarray`` of ``complex128``. Subsystem A is
always the outer (slow) tensor factor; ``partial_trace`` and every
bipartite helper in the package rely on that one convention.
"""

from __future__ import annotations

from typing import Literal, NamedTuple

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NotHermitian, NotPSD

HERMITIAN_TOL = 1e-9
PSD_TOL = 1e-10

Side = Literal["A", "B"]


class HermitianEigenSystem(NamedTuple):
    """Ascending eigenvalues and the unitary of column eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(m) -> np.ndarray:
    """Coerce input to a 2-d complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got ndim={a.ndim}")
    return a


def hermiticity_residual(m: np.ndarray) -> float:
    """Max-abs deviation from Hermitian symmetry."""
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def require_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"matrix is not square: {m.shape}")
    res = hermiticity_residual(m)
    if res > tol:
        raise NotHermitian(f"hermiticity residual {res:.3e} exceeds {tol:.1e}")
    return m


def hermitian_eig(m) -> HermitianEigenSystem:
    """Eigendecompose a Hermitian matrix, eigenvalues ascending."""
    m = require_hermitian(m)
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return HermitianEigenSystem(w, v)


def sqrtm_psd(m) -> np.ndarray:
    """Hermitian square root of a PSD matrix.

    Eigenvalues in ``[-PSD_TOL, 0)`` are clamped to 0 before the root;
    anything below ``-PSD_TOL`` raises ``NotPSD``. Positive eigenvalues
    below the eigensolver noise floor (n * eps * lambda_max) are zeroed
    too: their square roots would otherwise inject ~1e-8 artifacts into
    the root of a rank-deficient input.
    """
    w, v = hermitian_eig(m)
    if w[0] < -PSD_TOL:
        raise NotPSD(f"minimum eigenvalue {w[0]:.3e} below -{PSD_TOL:.1e}")
    noise_floor = w.size * np.finfo(np.float64).eps * max(float(w[-1]), 0.0)
    w = np.where(w < noise_floor, 0.0, w)
    root = (v * np.sqrt(w)) @ v.conj().T
    return 0.5 * (root + root.conj().T)


def kron(a, b) -> np.ndarray:
    """Tensor product with the first factor outermost."""
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace(m, dims: tuple[int, int], side: Side) -> np.ndarray:
    """Trace out the named factor of a matrix on A (outer) tensor B (inner).

    ``side='B'`` returns the n_A-dimensional matrix on A, ``side='A'``
    the n_B-dimensional matrix on B.
    """
    m = as_matrix(m)
    n_a, n_b = dims
    d = n_a * n_b
    if m.shape != (d, d):
        raise DimensionMismatch(f"matrix shape {m.shape} does not factor as {n_a}x{n_b}")
    r = m.reshape(n_a, n_b, n_a, n_b)
    if side == "B":
        return np.trace(r, axis1=1, axis2=3)
    if side == "A":
        return np.trace(r, axis1=0, axis2=2)
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


def commutator(a, b) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0] or a.shape[0] != b.shape[1]:
        raise DimensionMismatch(f"cannot commute shapes {a.shape} and {b.shape}")
    return a @ b - b @ a


def trace_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product Tr(A† B); real when both are Hermitian."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape mismatch {a.shape} vs {b.shape}")
    return complex(np.sum(a.conj() * b))
