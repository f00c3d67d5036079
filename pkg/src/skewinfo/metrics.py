"""Skew information, total/local uncertainty, and local quantum uncertainty.

Skew information is computed in the expanded form
Tr(rho X^2) - Tr(sqrt(rho) X sqrt(rho) X), which equals
-1/2 Tr [sqrt(rho), X]^2 with a single matrix square root.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DimensionMismatch
from .linalg import Side, kron, partial_trace, sqrtm_psd
from .optim import OptimizerOptions, minimize_over_unitaries
from .states import (
    BipartiteState,
    DensityMatrix,
    NondegenerateObservable,
    Observable,
    ObservableBasis,
    check_spectrum,
)

CLAMP_WINDOW = 1e-10
LQU_FLOOR = 1e-11

ObservableLike = Union[Observable, NondegenerateObservable]

_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)


def _clamp(value: float) -> float:
    return 0.0 if -CLAMP_WINDOW <= value < 0.0 else value


def _obs_matrix(x: ObservableLike) -> np.ndarray:
    return x.matrix


def _skew_with_root(rho: np.ndarray, root: np.ndarray, x: np.ndarray) -> float:
    """Skew information given a precomputed square root of the state."""
    rx = root @ x
    t1 = np.trace(rho @ x @ x).real
    t2 = np.sum(rx * rx.T).real  # Tr(root X root X)
    return _clamp(t1 - t2)


def skew_information(rho: DensityMatrix, x: ObservableLike) -> float:
    """Information content of rho relative to the observable x.

    Zero iff sqrt(rho) and x commute; bounded above by the variance and
    equal to it on pure states. Values in [-1e-10, 0) are clamped to 0.
    """
    xm = _obs_matrix(x)
    if xm.shape[0] != rho.dim:
        raise DimensionMismatch(f"observable dim {xm.shape[0]} vs state dim {rho.dim}")
    root = sqrtm_psd(rho.matrix)
    return _skew_with_root(rho.matrix, root, xm)


def variance(rho: DensityMatrix, x: ObservableLike) -> float:
    """Tr(rho X^2) - (Tr rho X)^2."""
    xm = _obs_matrix(x)
    if xm.shape[0] != rho.dim:
        raise DimensionMismatch(f"observable dim {xm.shape[0]} vs state dim {rho.dim}")
    mean = np.trace(rho.matrix @ xm).real
    return np.trace(rho.matrix @ xm @ xm).real - mean * mean


def q_total(rho: DensityMatrix, basis: ObservableBasis) -> float:
    """Total uncertainty: skew information summed over an observable basis."""
    if basis.dim != rho.dim:
        raise DimensionMismatch(f"basis dim {basis.dim} vs state dim {rho.dim}")
    root = sqrtm_psd(rho.matrix)
    return sum(_skew_with_root(rho.matrix, root, o.matrix) for o in basis.elements)


def q_local(rho_ab: BipartiteState, side: Side, basis: ObservableBasis) -> float:
    """Information content of a bipartite state in one side's local observables."""
    n_side = rho_ab.n_a if side == "A" else rho_ab.n_b
    if basis.dim != n_side:
        raise DimensionMismatch(f"basis dim {basis.dim} vs side {side} dim {n_side}")
    root = sqrtm_psd(rho_ab.matrix)
    eye_other = np.eye(rho_ab.n_b if side == "A" else rho_ab.n_a)
    total = 0.0
    for o in basis.elements:
        full = kron(o.matrix, eye_other) if side == "A" else kron(eye_other, o.matrix)
        total += _skew_with_root(rho_ab.matrix, root, full)
    return total


class LocalSkewObjective:
    """Fast evaluator of I(rho_AB, K ⊗ I) (or I ⊗ K) over local observables K.

    Precomputes the reduced state and a rank-4 contraction of the state's
    square root so each evaluation touches only side-local matrices.
    """

    def __init__(self, rho_ab: BipartiteState, side: Side):
        self.side = side
        self.n = rho_ab.n_a if side == "A" else rho_ab.n_b
        root = sqrtm_psd(rho_ab.matrix)
        dims = rho_ab.dims
        s = root.reshape(dims[0], dims[1], dims[0], dims[1])
        if side == "A":
            self.marginal = partial_trace(rho_ab.matrix, dims, "B")
            self.cross = np.einsum("pxqy,rysx->pqrs", s, s)
        else:
            self.marginal = partial_trace(rho_ab.matrix, dims, "A")
            self.cross = np.einsum("xpyq,yrxs->pqrs", s, s)

    def skew(self, k: np.ndarray) -> float:
        """I(rho_AB, K embedded on this side), without clamping."""
        t1 = np.trace(self.marginal @ k @ k).real
        t2 = np.einsum("pqrs,qr,sp->", self.cross, k, k).real
        return t1 - t2


@dataclass
class LquResult:
    """Best found local quantum uncertainty and the observable attaining it."""

    value: float
    minimizer: NondegenerateObservable
    restarts_used: int
    converged: bool


def lqu(
    rho_ab: BipartiteState,
    spectrum: np.ndarray,
    side: Side = "A",
    opts: OptimizerOptions | None = None,
    seeds: tuple[NondegenerateObservable, ...] = (),
    rng: np.random.Generator | None = None,
) -> LquResult:
    """Minimize skew information over side-local observables with fixed spectrum.

    Runs the restarted simplex search over eigenbases U, evaluating
    I(rho_AB, U diag(spectrum) U† on the chosen side). Caller-supplied
    seed observables contribute their eigenbases as the first restart
    points; the remaining restarts are Haar draws from ``rng`` (a fixed
    internal stream when omitted, so results are reproducible).

    The returned value is an upper bound on the true minimum.
    """
    opts = opts or OptimizerOptions()
    lam = check_spectrum(spectrum)
    n_side = rho_ab.n_a if side == "A" else rho_ab.n_b
    if lam.size != n_side:
        raise DimensionMismatch(f"spectrum length {lam.size} vs side {side} dim {n_side}")
    for s in seeds:
        if s.dim != n_side:
            raise DimensionMismatch(f"seed observable dim {s.dim} vs side dim {n_side}")

    obj = LocalSkewObjective(rho_ab, side)

    def cost(u: np.ndarray) -> float:
        k = (u * lam) @ u.conj().T
        return obj.skew(k)

    best = minimize_over_unitaries(
        cost,
        n_side,
        opts,
        seed_unitaries=[s.eigenbasis for s in seeds],
        rng=rng,
        floor=LQU_FLOOR,
    )
    return LquResult(
        value=_clamp(best.value),
        minimizer=NondegenerateObservable(lam, best.unitary),
        restarts_used=best.restarts_used,
        converged=best.converged,
    )


def lqu_2xd(rho_ab: BipartiteState) -> float:
    """Closed-form local quantum uncertainty for 2 x d states, spectrum {-1, +1}.

    Returns 1 - lambda_max(W) with W_ij = Tr[sqrt(rho) (sigma_i ⊗ I)
    sqrt(rho) (sigma_j ⊗ I)] over the three Pauli directions, clamped
    to [0, 1 + 1e-9].
    """
    if rho_ab.n_a != 2:
        raise DimensionMismatch(f"closed form needs n_A = 2, got {rho_ab.n_a}")
    root = sqrtm_psd(rho_ab.matrix)
    eye_b = np.eye(rho_ab.n_b)
    locals_ = [np.kron(p, eye_b) for p in _PAULI]
    w = np.empty((3, 3))
    for i in range(3):
        left = root @ locals_[i] @ root
        for j in range(3):
            w[i, j] = np.sum(left * locals_[j].T).real
    w = 0.5 * (w + w.T)
    value = 1.0 - float(np.linalg.eigvalsh(w)[-1])
    return min(max(value, 0.0), 1.0 + 1e-9)
