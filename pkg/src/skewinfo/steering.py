"""Projective-measurement steering and steering-induced uncertainty.

Measuring side A of a shared state in a rank-1 projective basis steers
side B into an ensemble of conditional states. The quantities here
weight the conditionals' skew information (or total uncertainty) by the
outcome probabilities; maximizations over measurement bases reuse the
unitary-manifold search from :mod:`skewinfo.optim`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidState
from .metrics import ObservableLike, _obs_matrix, _skew_with_root, q_total, skew_information
from .optim import OptimizerOptions, minimize_over_unitaries
from .states import BipartiteState, DensityMatrix, ObservableBasis

SKIP_EPS = 1e-12
_UNITARY_TOL = 1e-10


@dataclass
class MeasurementBasis:
    """Rank-1 projective basis on A given by the columns of a unitary."""

    unitary: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.unitary, dtype=np.complex128)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise DimensionMismatch(f"basis unitary must be square, got {u.shape}")
        res = float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))
        if res > _UNITARY_TOL:
            raise InvalidState("orthonormal columns", res)
        self.unitary = u

    @property
    def dim(self) -> int:
        return self.unitary.shape[0]

    def projector(self, i: int) -> np.ndarray:
        v = self.unitary[:, i]
        return np.outer(v, v.conj())


@dataclass
class SteeringEnsemble:
    """Outcome probabilities and conditional states of B, with near-null
    outcomes (p below the skip threshold) listed separately."""

    outcomes: list[tuple[float, DensityMatrix]]
    skipped: list[int]


def steer(rho_ab: BipartiteState, theta: MeasurementBasis) -> SteeringEnsemble:
    """Condition B on the outcomes of measuring A in the given basis.

    Outcomes with probability below ``SKIP_EPS`` are recorded as skipped
    and contribute nothing downstream.
    """
    if theta.dim != rho_ab.n_a:
        raise DimensionMismatch(f"basis dim {theta.dim} vs side A dim {rho_ab.n_a}")
    r4 = rho_ab.matrix.reshape(rho_ab.n_a, rho_ab.n_b, rho_ab.n_a, rho_ab.n_b)
    cond = np.einsum("ai,abcd,ci->ibd", theta.unitary.conj(), r4, theta.unitary)
    outcomes: list[tuple[float, DensityMatrix]] = []
    skipped: list[int] = []
    total = 0.0
    for i in range(rho_ab.n_a):
        p = np.trace(cond[i]).real
        total += p
        if p < SKIP_EPS:
            skipped.append(i)
            continue
        m = cond[i] / p
        outcomes.append((p, DensityMatrix(0.5 * (m + m.conj().T))))
    if abs(total - 1.0) > 1e-9:
        raise InvalidState("probability normalization", abs(total - 1.0))
    return SteeringEnsemble(outcomes, skipped)


def steered_skew_sum(rho_ab: BipartiteState, theta: MeasurementBasis, k_b: ObservableLike) -> float:
    """Probability-weighted skew information of the steered states of B."""
    km = _obs_matrix(k_b)
    if km.shape[0] != rho_ab.n_b:
        raise DimensionMismatch(f"observable dim {km.shape[0]} vs side B dim {rho_ab.n_b}")
    ensemble = steer(rho_ab, theta)
    return sum(p * skew_information(rho_i, k_b) for p, rho_i in ensemble.outcomes)


def steered_q_sum(rho_ab: BipartiteState, theta: MeasurementBasis, basis_b: ObservableBasis) -> float:
    """Probability-weighted total uncertainty of the steered states of B."""
    if basis_b.dim != rho_ab.n_b:
        raise DimensionMismatch(f"basis dim {basis_b.dim} vs side B dim {rho_ab.n_b}")
    ensemble = steer(rho_ab, theta)
    return sum(p * q_total(rho_i, basis_b) for p, rho_i in ensemble.outcomes)


def _conditional_roots(r4: np.ndarray, u: np.ndarray):
    """Yield (p, conditional, root) triples for non-skipped outcomes."""
    cond = np.einsum("ai,abcd,ci->ibd", u.conj(), r4, u)
    for i in range(u.shape[0]):
        p = np.trace(cond[i]).real
        if p < SKIP_EPS:
            continue
        m = cond[i] / p
        m = 0.5 * (m + m.conj().T)
        w, v = np.linalg.eigh(m)
        root = (v * np.sqrt(np.maximum(w, 0.0))) @ v.conj().T
        yield p, m, root


@dataclass
class SteeringSearchResult:
    """Best found value of a steering maximization and the basis attaining it.

    The value is a lower bound on the true maximum.
    """

    value: float
    maximizer: MeasurementBasis
    restarts_used: int
    converged: bool


def steering_induced_skew(
    rho_ab: BipartiteState,
    k_b: ObservableLike,
    opts: OptimizerOptions | None = None,
    rng: np.random.Generator | None = None,
) -> SteeringSearchResult:
    """Maximize the steered skew-information sum over A's measurement bases."""
    opts = opts or OptimizerOptions()
    km = _obs_matrix(k_b)
    if km.shape[0] != rho_ab.n_b:
        raise DimensionMismatch(f"observable dim {km.shape[0]} vs side B dim {rho_ab.n_b}")
    r4 = rho_ab.matrix.reshape(rho_ab.n_a, rho_ab.n_b, rho_ab.n_a, rho_ab.n_b)

    def cost(u: np.ndarray) -> float:
        total = 0.0
        for p, m, root in _conditional_roots(r4, u):
            total += p * _skew_with_root(m, root, km)
        return -total

    best = minimize_over_unitaries(cost, rho_ab.n_a, opts, rng=rng)
    return SteeringSearchResult(
        value=-best.value,
        maximizer=MeasurementBasis(best.unitary),
        restarts_used=best.restarts_used,
        converged=best.converged,
    )


def average_steering_induced_q(
    rho_ab: BipartiteState,
    basis_b: ObservableBasis,
    opts: OptimizerOptions | None = None,
    rng: np.random.Generator | None = None,
) -> SteeringSearchResult:
    """Maximize the steered total-uncertainty sum over A's measurement bases."""
    opts = opts or OptimizerOptions()
    if basis_b.dim != rho_ab.n_b:
        raise DimensionMismatch(f"basis dim {basis_b.dim} vs side B dim {rho_ab.n_b}")
    r4 = rho_ab.matrix.reshape(rho_ab.n_a, rho_ab.n_b, rho_ab.n_a, rho_ab.n_b)
    stack = basis_b.matrices()

    def cost(u: np.ndarray) -> float:
        total = 0.0
        for p, m, root in _conditional_roots(r4, u):
            t1 = np.einsum("ab,jbc,jca->", m, stack, stack).real
            t2 = np.einsum("ab,jbc,cd,jda->", root, stack, root, stack, optimize=True).real
            total += p * (t1 - t2)
        return -total

    best = minimize_over_unitaries(cost, rho_ab.n_a, opts, rng=rng)
    return SteeringSearchResult(
        value=-best.value,
        maximizer=MeasurementBasis(best.unitary),
        restarts_used=best.restarts_used,
        converged=best.converged,
    )
