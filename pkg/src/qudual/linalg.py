"""Small dense linear algebra for two-level problems.

Everything in this package is 2x2, or 4x4 after adjoining a meter, so the
eigenproblem is solved in closed form with the quadratic formula. No
iterative solver is used anywhere; results are reproducible to the last bit
across runs.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ContractViolationError

HERMITICITY_TOL = 1e-12
UNITARITY_TOL = 1e-12

__all__ = [
    "HERMITICITY_TOL",
    "UNITARITY_TOL",
    "assert_hermitian",
    "assert_unitary",
    "hermitian_eig",
    "trace_norm",
    "kron",
]


def assert_hermitian(m: np.ndarray, tol: float = HERMITICITY_TOL, name: str = "matrix") -> np.ndarray:
    """Return ``m`` as a complex array, raising if it is not Hermitian within ``tol``."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ContractViolationError(f"{name} must be square, got shape {m.shape}")
    dev = float(np.max(np.abs(m - m.conj().T)))
    if dev > tol:
        raise ContractViolationError(
            f"{name} is not Hermitian: max |m - m^dagger| = {dev:.3e} exceeds {tol:.1e}"
        )
    return m


def assert_unitary(m: np.ndarray, tol: float = UNITARITY_TOL, name: str = "matrix") -> np.ndarray:
    """Return ``m`` as a complex array, raising if it is not unitary within ``tol``."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ContractViolationError(f"{name} must be square, got shape {m.shape}")
    dev = float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))
    if dev > tol:
        raise ContractViolationError(
            f"{name} is not unitary: max |m^dagger m - 1| = {dev:.3e} exceeds {tol:.1e}"
        )
    return m


def hermitian_eig(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and eigenvectors of a Hermitian 2x2 matrix, in closed form.

    Returns ``(w, v)`` with the real eigenvalues ``w`` in descending order and
    the matching orthonormal eigenvectors as the columns of ``v``.
    """
    m = assert_hermitian(m)
    if m.shape != (2, 2):
        raise ContractViolationError(f"hermitian_eig expects a 2x2 matrix, got {m.shape}")
    a = m[0, 0].real
    d = m[1, 1].real
    b = m[0, 1]  # the upper triangle fixes the off-diagonal convention
    mean = 0.5 * (a + d)
    half_gap = math.hypot(0.5 * (a - d), abs(b))
    w = np.array([mean + half_gap, mean - half_gap])
    if half_gap == 0.0:
        return w, np.eye(2, dtype=complex)
    # Two algebraically equivalent eigenvector forms; pick the one whose norm
    # is bounded below by the spectral half-gap so it never degenerates.
    if a >= d:
        v_plus = np.array([w[0] - d, np.conj(b)])
    else:
        v_plus = np.array([b, w[0] - a])
    # rescale before normalizing: squaring subnormal components underflows.
    # divide the real and imaginary parts separately; complex division by a
    # subnormal scalar overflows in the intermediate |denominator|^2
    scale = np.abs(v_plus).max()
    v_plus = v_plus.real / scale + 1j * (v_plus.imag / scale)
    v_plus = v_plus / np.linalg.norm(v_plus)
    v_minus = np.array([-np.conj(v_plus[1]), np.conj(v_plus[0])])
    return w, np.column_stack([v_plus, v_minus])


def trace_norm(m: np.ndarray) -> float:
    """Trace norm (sum of absolute eigenvalues) of a Hermitian 2x2 matrix."""
    w, _ = hermitian_eig(m)
    return float(np.sum(np.abs(w)))


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor product with the first factor varying slowest.

    Composite indices are ordered (first factor, second factor); with a
    system in the first slot and a meter in the second, basis order is
    ``|s0 m0>, |s0 m1>, |s1 m0>, |s1 m1>``.
    """
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))
