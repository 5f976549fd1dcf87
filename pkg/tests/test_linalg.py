import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qudual import ContractViolationError, assert_hermitian, assert_unitary, hermitian_eig, kron, trace_norm

finite = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False)


def hermitian(a, d, br, bi):
    return np.array([[a, br - 1j * bi], [br + 1j * bi, d]], dtype=complex)


def test_exchange_matrix_eigensystem():
    w, v = hermitian_eig(np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex))
    np.testing.assert_allclose(w, [1.0, -1.0], atol=1e-15)
    # eigenvectors match (1, +-1)/sqrt(2) up to a global phase
    plus = np.array([1.0, 1.0]) / math.sqrt(2.0)
    minus = np.array([1.0, -1.0]) / math.sqrt(2.0)
    assert abs(np.vdot(v[:, 0], plus)) == pytest.approx(1.0, abs=1e-12)
    assert abs(np.vdot(v[:, 1], minus)) == pytest.approx(1.0, abs=1e-12)


def test_degenerate_matrix_keeps_identity_basis():
    w, v = hermitian_eig(np.eye(2, dtype=complex) * 0.7)
    np.testing.assert_allclose(w, [0.7, 0.7], atol=1e-15)
    np.testing.assert_allclose(v, np.eye(2), atol=1e-15)


def test_trace_norm_frozen_values():
    assert trace_norm(np.diag([0.5, -0.5]).astype(complex)) == pytest.approx(1.0, abs=1e-14)
    # projectors onto states with overlap 0.6: norm is 2 sqrt(1 - 0.36)
    psi0 = np.array([1.0, 0.0], dtype=complex)
    psi1 = np.array([0.6, 0.8], dtype=complex)
    diff = np.outer(psi0, psi0.conj()) - np.outer(psi1, psi1.conj())
    assert trace_norm(diff) == pytest.approx(1.6, abs=1e-12)


@given(a=finite, d=finite, br=finite, bi=finite)
def test_eigensystem_reconstructs_matrix(a, d, br, bi):
    m = hermitian(a, d, br, bi)
    w, v = hermitian_eig(m)
    scale = max(1.0, float(np.abs(m).max()))
    np.testing.assert_allclose(v @ np.diag(w) @ v.conj().T, m, atol=1e-12 * scale)
    assert w[0] >= w[1]
    np.testing.assert_allclose(v.conj().T @ v, np.eye(2), atol=1e-12)


@given(a=finite, d=finite, br=finite, bi=finite)
def test_eigenvalues_match_lapack(a, d, br, bi):
    m = hermitian(a, d, br, bi)
    w, _ = hermitian_eig(m)
    scale = max(1.0, float(np.abs(m).max()))
    np.testing.assert_allclose(w, np.linalg.eigvalsh(m)[::-1], atol=1e-12 * scale)


def test_subnormal_coherence_keeps_finite_eigenvectors():
    # purely imaginary off-diagonal at the smallest subnormal magnitude:
    # complex division by the subnormal rescaling factor must not overflow
    m = hermitian(0.0, 0.0, 0.0, 5e-324)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        w, v = hermitian_eig(m)
    assert np.all(np.isfinite(v))
    np.testing.assert_allclose(w, [5e-324, -5e-324])
    np.testing.assert_allclose(v.conj().T @ v, np.eye(2), atol=1e-12)


@given(a=finite, d=finite, br=finite, bi=finite)
def test_trace_norm_matches_singular_values(a, d, br, bi):
    m = hermitian(a, d, br, bi)
    scale = max(1.0, float(np.abs(m).max()))
    sv = float(np.linalg.svd(m, compute_uv=False).sum())
    assert trace_norm(m) == pytest.approx(sv, abs=1e-12 * scale)


def test_kron_mixed_product_identity():
    rng = np.random.default_rng(7)
    for _ in range(25):
        a, b, c, d = rng.normal(size=(4, 2, 2)) + 1j * rng.normal(size=(4, 2, 2))
        lhs = kron(a, b) @ kron(c, d)
        rhs = kron(a @ c, b @ d)
        np.testing.assert_allclose(lhs, rhs, atol=1e-12 * float(np.abs(rhs).max() + 1.0))


def test_kron_ordering_first_factor_slow():
    a = np.diag([1.0, 2.0]).astype(complex)
    b = np.eye(2, dtype=complex)
    np.testing.assert_allclose(np.diag(kron(a, b)).real, [1.0, 1.0, 2.0, 2.0])


def test_contract_guards_raise_with_deviation():
    with pytest.raises(ContractViolationError, match="Hermitian"):
        assert_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex), name="probe")
    with pytest.raises(ContractViolationError, match="unitary"):
        assert_unitary(2.0 * np.eye(2, dtype=complex), name="probe")
