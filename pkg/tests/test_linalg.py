"""Kernel tests: eigendecomposition, PSD root, tensor ops, traces."""

import numpy as np
import pytest

from skewinfo import (
    DimensionMismatch,
    NotHermitian,
    NotPSD,
    commutator,
    hermitian_eig,
    kron,
    partial_trace,
    sqrtm_psd,
    stream,
    trace_inner,
)
from skewinfo.linalg import hermiticity_residual

from conftest import SIGMA_X, SIGMA_Y, SIGMA_Z


def random_hermitian(n, rng):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return z + z.conj().T


def random_psd(n, rng):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return z @ z.conj().T


def test_eig_identity():
    w, v = hermitian_eig(np.eye(2))
    np.testing.assert_allclose(w, [1.0, 1.0])
    np.testing.assert_allclose(v.conj().T @ v, np.eye(2), atol=1e-12)


def test_eig_diagonal_ascending():
    w, _ = hermitian_eig(np.diag([0.75, 0.25]))
    np.testing.assert_allclose(w, [0.25, 0.75])


def test_eig_pauli_x_spectrum():
    w, _ = hermitian_eig(SIGMA_X)
    np.testing.assert_allclose(w, [-1.0, 1.0], atol=1e-12)


def test_eig_reconstruction_and_unitarity():
    rng = stream(1, 0)
    for n in (2, 3, 8, 32):
        m = random_hermitian(n, rng)
        w, v = hermitian_eig(m)
        assert np.all(np.diff(w) >= -1e-12)
        np.testing.assert_allclose((v * w) @ v.conj().T, m, atol=1e-10)
        np.testing.assert_allclose(v.conj().T @ v, np.eye(n), atol=1e-10)


def test_eig_matches_characteristic_roots_2x2():
    rng = stream(1, 1)
    for _ in range(50):
        m = random_hermitian(2, rng)
        tr = np.trace(m).real
        det = np.linalg.det(m).real
        disc = np.sqrt(tr * tr - 4 * det)
        roots = sorted([(tr - disc) / 2, (tr + disc) / 2])
        w, _ = hermitian_eig(m)
        np.testing.assert_allclose(w, roots, atol=1e-10)


def test_eig_rejects_nonhermitian():
    with pytest.raises(NotHermitian):
        hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_eig_rejects_nonsquare():
    with pytest.raises(DimensionMismatch):
        hermitian_eig(np.zeros((2, 3)))


def test_sqrtm_identity():
    np.testing.assert_allclose(sqrtm_psd(np.eye(3)), np.eye(3), atol=1e-12)


def test_sqrtm_diagonal():
    root = sqrtm_psd(np.diag([0.25, 0.75]))
    np.testing.assert_allclose(root, np.diag([0.5, np.sqrt(0.75)]), atol=1e-12)


def test_sqrtm_rank1_projector_fixed_point():
    plus = np.array([1, 1], dtype=complex) / np.sqrt(2)
    proj = np.outer(plus, plus.conj())
    np.testing.assert_allclose(sqrtm_psd(proj), proj, atol=1e-12)


def test_sqrtm_squares_back():
    rng = stream(1, 2)
    for n in (2, 5, 16, 32):
        m = random_psd(n, rng)
        root = sqrtm_psd(m)
        assert hermiticity_residual(root) < 1e-12
        np.testing.assert_allclose(root @ root, m, atol=1e-9 * max(1.0, np.linalg.norm(m)))


def test_sqrtm_clamps_noise_eigenvalues():
    m = np.diag([1.0, -5e-11])
    root = sqrtm_psd(m)
    np.testing.assert_allclose(root, np.diag([1.0, 0.0]), atol=1e-12)


def test_sqrtm_rejects_negative():
    with pytest.raises(NotPSD):
        sqrtm_psd(np.diag([1.0, -1e-6]))


def test_kron_scalar_identity():
    a = np.arange(4).reshape(2, 2).astype(complex)
    np.testing.assert_allclose(kron(a, np.eye(1)), a)


def test_kron_diagonal():
    out = kron(np.diag([1.0, 2.0]), np.diag([1.0, 0.0]))
    np.testing.assert_allclose(out, np.diag([1.0, 0.0, 2.0, 0.0]))


def test_kron_zz_fixes_00():
    zz = kron(SIGMA_Z, SIGMA_Z)
    ket00 = np.array([1, 0, 0, 0], dtype=complex)
    np.testing.assert_allclose(zz @ ket00, ket00)


def test_partial_trace_product_state(rng):
    a = random_psd(2, rng)
    a /= np.trace(a).real
    b = random_psd(3, rng)
    b /= np.trace(b).real
    joint = kron(a, b)
    np.testing.assert_allclose(partial_trace(joint, (2, 3), "B"), a, atol=1e-12)
    np.testing.assert_allclose(partial_trace(joint, (2, 3), "A"), b, atol=1e-12)


def test_partial_trace_bell_is_maximally_mixed():
    v = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    rho = np.outer(v, v.conj())
    np.testing.assert_allclose(partial_trace(rho, (2, 2), "B"), np.eye(2) / 2, atol=1e-12)


def test_partial_trace_identity():
    np.testing.assert_allclose(partial_trace(np.eye(4) / 4, (2, 2), "A"), np.eye(2) / 2, atol=1e-14)


def test_partial_trace_preserves_trace(rng):
    for n_a, n_b in ((2, 2), (2, 3), (3, 2), (4, 2)):
        m = rng.standard_normal((n_a * n_b, n_a * n_b)) + 1j * rng.standard_normal((n_a * n_b, n_a * n_b))
        for side in ("A", "B"):
            assert abs(np.trace(partial_trace(m, (n_a, n_b), side)) - np.trace(m)) < 1e-12


def test_partial_trace_of_kron_scales_by_trace(rng):
    for _ in range(20):
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        np.testing.assert_allclose(
            partial_trace(kron(a, b), (2, 3), "B"), np.trace(b) * a, atol=1e-12
        )


def test_partial_trace_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        partial_trace(np.eye(4), (2, 3), "A")


def test_commutator_examples():
    np.testing.assert_allclose(commutator(SIGMA_Z, SIGMA_Z), np.zeros((2, 2)))
    np.testing.assert_allclose(commutator(SIGMA_X, SIGMA_Y), 2j * SIGMA_Z, atol=1e-14)


def test_trace_inner_examples():
    assert trace_inner(SIGMA_X, SIGMA_X) == pytest.approx(2.0)
    # real-valued for Hermitian pairs
    val = trace_inner(SIGMA_X + SIGMA_Z, SIGMA_Y)
    assert abs(val.imag) < 1e-14


def test_trace_inner_conjugates_first_argument():
    a = np.array([[1j, 0], [0, 0]], dtype=complex)
    b = np.array([[2j, 0], [0, 0]], dtype=complex)
    assert trace_inner(a, b) == pytest.approx(2.0)


def test_trace_inner_shape_mismatch():
    with pytest.raises(DimensionMismatch):
        trace_inner(np.eye(2), np.eye(3))
