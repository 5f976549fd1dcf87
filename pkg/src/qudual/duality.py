"""Predictability, visibility and the duality between them.

Predictability measures prior knowledge of which basis state the system
occupies; visibility measures the contrast of the interference fringe traced
by a phase scan behind a balanced beam splitter. For any state the two obey
``P**2 + V**2 <= 1`` with equality exactly on pure states, and the sum is
invariant under the choice of complementary family member.

The grid oracle here deliberately avoids the closed forms: it scans explicit
unitary transformations of the state and reads the fringe off the resulting
detection probabilities, which is what an experiment would do.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolationError, ParameterError
from .states import DensityMatrix, beam_splitter, phase_shift

__all__ = [
    "predictability",
    "visibility",
    "fringe_probability",
    "visibility_oracle",
    "predictability_of_b",
    "visibility_of_b",
    "DualityReport",
    "duality_report",
]


def predictability(rho: DensityMatrix) -> float:
    """Population imbalance ``|w_plus - w_minus|``."""
    return abs(rho.w_plus - rho.w_minus)


def visibility(rho: DensityMatrix) -> float:
    """Fringe contrast ``2 * rho12`` of the optimal phase scan."""
    return 2.0 * rho.rho12


def fringe_probability(rho: DensityMatrix, phi, xi):
    """Detection probability for ``|plus>`` after a phase shift and a beam splitter.

    Computes ``<plus| U_bs(xi) U_ps(phi) rho U_ps(phi)^dagger U_bs(xi)^dagger |plus>``
    by explicit matrix conjugation. ``phi`` and ``xi`` may be scalars or
    broadcastable arrays; the result has the broadcast shape.
    """
    phi_arr = np.asarray(phi, dtype=float)
    xi_arr = np.asarray(xi, dtype=float)
    shape = np.broadcast_shapes(phi_arr.shape, xi_arr.shape)
    phi_b = np.broadcast_to(phi_arr, shape)
    xi_b = np.broadcast_to(xi_arr, shape)

    u_ps = np.zeros(shape + (2, 2), dtype=complex)
    u_ps[..., 0, 0] = 1.0
    u_ps[..., 1, 1] = np.exp(1j * phi_b)
    u_bs = np.empty(shape + (2, 2), dtype=complex)
    u_bs[..., 0, 0] = np.cos(xi_b)
    u_bs[..., 0, 1] = 1j * np.sin(xi_b)
    u_bs[..., 1, 0] = 1j * np.sin(xi_b)
    u_bs[..., 1, 1] = np.cos(xi_b)

    u = u_bs @ u_ps
    rotated = u @ rho.matrix @ u.conj().swapaxes(-1, -2)
    p = rotated[..., 0, 0].real
    if shape == ():
        return float(p)
    return p


def visibility_oracle(rho: DensityMatrix, grid_n: int = 512) -> tuple[float, float]:
    """Brute-force fringe contrast from a grid scan of ``fringe_probability``.

    For every beam-splitter angle on a ``grid_n`` point grid over [0, 2 pi),
    the phase is swept over the same grid and the fringe amplitude
    ``max_phi p - min_phi p`` is recorded. The returned contrast
    ``(p_max - p_min) / (p_max + p_min)`` is evaluated at the angle with the
    largest amplitude, and that angle is returned folded to [0, pi/2).

    Independent of the closed form: agrees with :func:`visibility` to
    O(1/grid_n**2) and the folded angle lands within one grid step of pi/4.
    """
    grid_n = int(grid_n)
    if grid_n < 8:
        raise ParameterError(f"grid_n = {grid_n} violates the bound grid_n >= 8")
    phi = np.linspace(0.0, 2.0 * math.pi, grid_n, endpoint=False)
    xi = np.linspace(0.0, 2.0 * math.pi, grid_n, endpoint=False)
    p = fringe_probability(rho, phi[None, :], xi[:, None])
    p_max = p.max(axis=1)
    p_min = p.min(axis=1)
    amplitude = p_max - p_min
    k = int(np.argmax(amplitude))
    xi_hat = float(xi[k] % (math.pi / 2.0))
    if amplitude[k] <= 0.0:
        # No fringe at any splitter setting: zero contrast, angle meaningless.
        return 0.0, xi_hat
    v_hat = float((p_max[k] - p_min[k]) / (p_max[k] + p_min[k]))
    return v_hat, xi_hat


def predictability_of_b(rho: DensityMatrix, varrho: float) -> float:
    """Predictability of the complementary family member at phase ``varrho``.

    Equals ``2 * rho12 * |cos(theta - varrho)|``; largest for the proper
    member ``varrho = theta``, zero at the erasure phases
    ``varrho = theta +- pi/2``.
    """
    return 2.0 * rho.rho12 * abs(math.cos(rho.theta - varrho))


def visibility_of_b(rho: DensityMatrix, varrho: float) -> float:
    """Visibility of the complementary family member at phase ``varrho``.

    Equals ``sqrt(P**2 + 4 rho12**2 sin(theta - varrho)**2)``, so the pair
    ``(P_B, V_B)`` carries the same squared sum as ``(P, V)`` for every
    ``varrho``.
    """
    p = rho.w_plus - rho.w_minus
    s = math.sin(rho.theta - varrho)
    return math.sqrt(p * p + 4.0 * rho.rho12 ** 2 * s * s)


@dataclass(frozen=True)
class DualityReport:
    """Predictability, visibility, their squared sum, and the state purity."""

    p: float
    v: float
    sum_sq: float
    purity: float

    def __post_init__(self) -> None:
        if self.sum_sq > 1.0 + 1e-12:
            raise ContractViolationError(
                f"P**2 + V**2 = {self.sum_sq!r} exceeds 1 beyond tolerance"
            )
        if abs(self.sum_sq - (2.0 * self.purity - 1.0)) > 1e-12:
            raise ContractViolationError(
                "P**2 + V**2 must equal 2 * purity - 1; got "
                f"{self.sum_sq!r} versus {2.0 * self.purity - 1.0!r}"
            )


def duality_report(rho: DensityMatrix) -> DualityReport:
    """Evaluate the duality relation for one state."""
    p = predictability(rho)
    v = visibility(rho)
    return DualityReport(p=p, v=v, sum_sq=p * p + v * v, purity=rho.purity)
