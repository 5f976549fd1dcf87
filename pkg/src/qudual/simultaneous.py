"""Simultaneous estimation of both complementary observables via an entangled meter.

A pure system state with populations ``(w_plus, w_minus)`` and phase
``theta`` is coupled to a meter qubit so that the meter states labelling the
two system basis states have a real positive overlap ``c``::

    |psi_e> = sqrt(w+) |plus>|m+> + exp(i theta) sqrt(w-) |minus>|m->,
    |m-> = c |m+> + sqrt(1 - c**2) |m_perp>

``c`` interpolates between a perfect which-way marker (c = 0) and no marking
at all (c = 1). Reading the meter in a rotated basis and the system in a
complementary-family basis yields unbiased estimators of both observables at
once, at the price of rescaled outcome values and hence inflated variances.
The product of the two estimator variances has a state-dependent minimum
over ``c``, reached at ``c**2 = V / (P + V)``.

Basis order of the composite amplitudes is
``|plus m+>, |plus m_perp>, |minus m+>, |minus m_perp>`` (system index
slowest), matching :func:`qudual.linalg.kron`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolationError, ParameterError, SingularConfigurationError
from .linalg import trace_norm
from .states import (
    ComplementaryFamily,
    DensityMatrix,
    symmetric_observable,
)

TWO_PI = 2.0 * math.pi

# Cross-check tolerance between the closed forms and the explicit
# four-dimensional projection probabilities, relative to the value scale.
CROSS_CHECK_TOL = 1e-12

# Agreement tolerance between independent routes to the minimum product.
ROUTE_AGREEMENT_TOL = 1e-9

# Probe states used to fix the estimator sign branch: populations and phases
# chosen so the mean is nonzero and sign-sensitive on the grid.
_PROBE_W = (0.25, 0.5, 0.75)
_PROBE_THETA = (0.0, 2.0, 4.0)

__all__ = [
    "CROSS_CHECK_TOL",
    "ROUTE_AGREEMENT_TOL",
    "EntangledState",
    "entangle",
    "distinguishability",
    "entangled_visibility",
    "MeterProjectors",
    "meter_projectors",
    "estimate_a",
    "estimate_b",
    "simultaneous_product",
    "optimal_entanglement",
    "MinimumProductReport",
    "minimum_product_report",
    "minimum_simultaneous_product",
]


@dataclass(frozen=True, eq=False)
class EntangledState:
    """System-meter pure state with meter overlap ``c``."""

    w_plus: float
    theta: float
    c: float
    amplitudes: np.ndarray = field(repr=False)

    @property
    def w_minus(self) -> float:
        return 1.0 - self.w_plus

    def system_meter(self) -> np.ndarray:
        """Amplitudes reshaped to ``psi[system, meter]``."""
        return self.amplitudes.reshape(2, 2)

    def marginal_system(self) -> DensityMatrix:
        """Partial trace over the meter.

        Keeps the populations and shrinks the coherence to ``c sqrt(w+ w-)``.
        """
        psi = self.system_meter()
        return DensityMatrix.from_matrix(np.einsum("im,jm->ij", psi, psi.conj()))

    def marginal_meter(self) -> np.ndarray:
        """Partial trace over the system, as an explicit 2x2 matrix."""
        psi = self.system_meter()
        return np.einsum("im,in->mn", psi, psi.conj())


def entangle(w_plus: float, theta: float, c: float) -> EntangledState:
    """Couple the pure system state ``(w_plus, theta)`` to a meter with overlap ``c``."""
    w = float(w_plus)
    if math.isnan(w) or w < 0.0 or w > 1.0:
        raise ParameterError(f"w_plus = {w!r} violates the bound 0 <= w_plus <= 1")
    cc = float(c)
    if math.isnan(cc) or cc < 0.0 or cc > 1.0:
        raise ParameterError(f"c = {cc!r} violates the bound 0 <= c <= 1")
    t = float(theta) % TWO_PI
    phase = np.exp(1j * t)
    amp = np.array(
        [
            math.sqrt(w),
            0.0,
            phase * math.sqrt(1.0 - w) * cc,
            phase * math.sqrt(1.0 - w) * math.sqrt(1.0 - cc * cc),
        ]
    )
    amp.setflags(write=False)
    return EntangledState(w_plus=w, theta=t, c=cc, amplitudes=amp)


def distinguishability(psi_e: EntangledState) -> float:
    """Trace-norm distance of the meter states conditioned on the system basis.

    Evaluates ``|| <plus|rho_e|plus> - <minus|rho_e|minus> ||_1`` on the meter
    space; equals ``sqrt(1 - 4 c**2 w+ w-)``, which never falls below the
    predictability of the system state.
    """
    psi = psi_e.system_meter()
    block_plus = np.outer(psi[0], psi[0].conj())
    block_minus = np.outer(psi[1], psi[1].conj())
    return trace_norm(block_plus - block_minus)


def entangled_visibility(psi_e: EntangledState) -> float:
    """Fringe visibility left to the system after the meter is traced out.

    Equals ``2 c sqrt(w+ w-)``; together with the distinguishability it
    saturates ``D**2 + V_e**2 = 1`` for every ``(w_plus, c)``.
    """
    psi = psi_e.system_meter()
    rho_s = np.einsum("im,jm->ij", psi, psi.conj())
    return 2.0 * float(abs(rho_s[1, 0]))


@dataclass(frozen=True, eq=False)
class MeterProjectors:
    """Rotated meter readout basis with the rescaled outcome values.

    ``m1 = (cos gamma, sin gamma)`` and ``m2 = (-sin gamma, cos gamma)`` in
    the ``(|m+>, |m_perp>)`` basis (the extra phase ``kappa`` is fixed to 0;
    other values break orthogonality). The outcome values ``value_m1`` and
    ``value_m2`` are ``+-a_prime`` with the signs fixed by the unbiasedness
    probe, so that the readout mean reproduces the sharp mean for every
    input state.
    """

    gamma: float
    a_prime: float
    value_m1: float
    value_m2: float
    m1: np.ndarray = field(repr=False)
    m2: np.ndarray = field(repr=False)
    kappa: float = 0.0


def _meter_probabilities(psi_e: EntangledState, mp: MeterProjectors) -> tuple[float, float]:
    psi = psi_e.system_meter()
    amp1 = psi @ mp.m1.conj()
    amp2 = psi @ mp.m2.conj()
    return float(np.vdot(amp1, amp1).real), float(np.vdot(amp2, amp2).real)


def meter_projectors(c: float, a_value: float = 0.5) -> MeterProjectors:
    """Meter readout basis making the first-observable estimate unbiased.

    The rotation angle solves ``cot(2 gamma) = -sqrt(1 - c**2) / c`` with the
    branch ``gamma = (pi - arcsin c) / 2`` in (pi/4, pi/2), and the rescaled
    outcome magnitude is ``a_prime = a_value / sqrt(1 - c**2)``. Two outcome
    sign assignments are compatible with the angle equation; the one whose
    mean matches ``a_value (w+ - w-)`` on a 3x3 probe grid of states is
    selected, and a contract violation is raised if the probe does not single
    one out.
    """
    cc = float(c)
    if not 0.0 < cc < 1.0:
        raise SingularConfigurationError(
            f"meter readout requires 0 < c < 1, got c = {cc!r}: at c = 0 the rotation "
            "angle equation degenerates and at c = 1 the rescaled value diverges"
        )
    a = float(a_value)
    if a <= 0.0:
        raise ParameterError(f"a_value must be positive, got {a!r}")
    gamma = 0.5 * (math.pi - math.asin(cc))
    a_prime = a / math.sqrt(1.0 - cc * cc)
    m1 = np.array([math.cos(gamma), math.sin(gamma)], dtype=complex)
    m2 = np.array([-math.sin(gamma), math.cos(gamma)], dtype=complex)
    m1.setflags(write=False)
    m2.setflags(write=False)

    selected = None
    for value_m1 in (-a_prime, a_prime):
        candidate = MeterProjectors(
            gamma=gamma, a_prime=a_prime, value_m1=value_m1, value_m2=-value_m1, m1=m1, m2=m2
        )
        ok = True
        for w in _PROBE_W:
            for theta in _PROBE_THETA:
                p1, p2 = _meter_probabilities(entangle(w, theta, cc), candidate)
                mean = candidate.value_m1 * p1 + candidate.value_m2 * p2
                if abs(mean - a * (2.0 * w - 1.0)) > CROSS_CHECK_TOL:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            if selected is not None:
                raise ContractViolationError("both outcome sign assignments passed the probe")
            selected = candidate
    if selected is None:
        raise ContractViolationError("no outcome sign assignment reproduces the sharp mean")
    return selected


def _agree(x: float, y: float, tol: float = CROSS_CHECK_TOL) -> bool:
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


def estimate_a(psi_e: EntangledState, a_value: float = 0.5) -> tuple[float, float]:
    """Mean and variance of the rescaled first-observable readout.

    Returns the closed forms ``mean = a (w+ - w-)`` and
    ``variance = a**2 (c**2 / (1 - c**2) + 4 w+ w-)`` after verifying both
    against the explicit four-dimensional projection probabilities (within
    1e-12 relative to scale). Requires ``0 < c < 1``; both endpoints are
    singular for this readout.
    """
    mp = meter_projectors(psi_e.c, a_value)
    p1, p2 = _meter_probabilities(psi_e, mp)
    mean_expl = mp.value_m1 * p1 + mp.value_m2 * p2
    var_expl = mp.value_m1 ** 2 * p1 + mp.value_m2 ** 2 * p2 - mean_expl ** 2

    a = float(a_value)
    w = psi_e.w_plus
    cc = psi_e.c
    mean = a * (2.0 * w - 1.0)
    var = a * a * (cc * cc / (1.0 - cc * cc) + 4.0 * w * (1.0 - w))
    if not (_agree(mean, mean_expl) and _agree(var, var_expl)):
        raise ContractViolationError(
            "closed-form readout moments disagree with explicit projection: "
            f"mean {mean!r} vs {mean_expl!r}, variance {var!r} vs {var_expl!r}"
        )
    return mean, var


def estimate_b(psi_e: EntangledState, varrho: float, b_value: float = 0.5) -> tuple[float, float]:
    """Mean and variance of the rescaled complementary-observable readout.

    The system is read in the complementary basis at phase ``varrho`` and the
    outcomes are rescaled to ``+-b_value / c``, which makes the mean equal to
    the sharp mean ``2 b sqrt(w+ w-) cos(theta - varrho)`` of the initial
    pure state for every ``c``. Returns the closed forms after verifying them
    against explicit projection probabilities. Requires ``c > 0``.
    """
    cc = psi_e.c
    if cc <= 0.0:
        raise SingularConfigurationError(
            f"complementary readout requires c > 0, got c = {cc!r}: the rescaled "
            "outcome values +-b/c diverge"
        )
    b = float(b_value)
    if b <= 0.0:
        raise ParameterError(f"b_value must be positive, got {b!r}")
    family = ComplementaryFamily(symmetric_observable(b), varrho, b, -b)
    vec_plus, vec_minus = family.member_vectors()
    psi = psi_e.system_meter()
    amp_plus = vec_plus.conj() @ psi
    amp_minus = vec_minus.conj() @ psi
    p_plus = float(np.vdot(amp_plus, amp_plus).real)
    p_minus = float(np.vdot(amp_minus, amp_minus).real)
    value = b / cc
    mean_expl = value * (p_plus - p_minus)
    var_expl = value * value * (p_plus + p_minus) - mean_expl ** 2

    w = psi_e.w_plus
    delta = psi_e.theta - family.varrho
    root = math.sqrt(w * (1.0 - w))
    mean = 2.0 * b * root * math.cos(delta)
    var = b * b * (1.0 / (cc * cc) - 4.0 * w * (1.0 - w) * math.cos(delta) ** 2)
    if not (_agree(mean, mean_expl) and _agree(var, var_expl)):
        raise ContractViolationError(
            "closed-form readout moments disagree with explicit projection: "
            f"mean {mean!r} vs {mean_expl!r}, variance {var!r} vs {var_expl!r}"
        )
    return mean, var


def simultaneous_product(w_plus: float, c: float) -> float:
    """Normalized variance product of the two readouts at the proper phase.

    For ``0 < c < 1`` returns
    ``(c**2 / (4 (1 - c**2)) + w+ w-) * (1 / (4 c**2) - w+ w-)``, the product
    of both readout variances normalized by the squared outcome spreads, for
    the proper complementary phase ``varrho = theta``. At the endpoints the
    analytic limit is returned: ``math.inf`` where the product diverges, and
    1/16 in the two finite corner cases (``c -> 0`` on an eigenstate,
    ``c -> 1`` at equal populations).
    """
    w = float(w_plus)
    if math.isnan(w) or w < 0.0 or w > 1.0:
        raise ParameterError(f"w_plus = {w!r} violates the bound 0 <= w_plus <= 1")
    cc = float(c)
    if math.isnan(cc) or cc < 0.0 or cc > 1.0:
        raise ParameterError(f"c = {cc!r} violates the bound 0 <= c <= 1")
    k = w * (1.0 - w)
    if cc == 0.0:
        return 1.0 / 16.0 if k == 0.0 else math.inf
    if cc == 1.0:
        return 1.0 / 16.0 if k == 0.25 else math.inf
    c2 = cc * cc
    # Evaluated in the factored form
    #   (c^2 + 4K(1-c^2)) ((1-c^2) + c^2 P^2) / (16 c^2 (1-c^2)),
    # whose numerator terms are all nonnegative. The direct brackets lose all
    # precision near c = 1, where 1/(4c^2) - K cancels catastrophically.
    s = (1.0 - cc) * (1.0 + cc)
    p2 = (2.0 * w - 1.0) ** 2
    return (c2 + 4.0 * k * s) * (s + c2 * p2) / (16.0 * c2 * s)


def optimal_entanglement(w_plus: float) -> float:
    """Meter overlap minimizing the simultaneous variance product.

    Uses the regularized form ``c**2 = V / (P + V)`` with the predictability
    and visibility of the initial pure state, which stays finite at
    ``w+ w- = 1/8`` where the direct expression is 0/0. Returns 1 at
    ``w_plus = 1/2`` and 0 at the boundary ``w_plus in {0, 1}``; both are
    limits where the minimum value is 1/16 but the configuration itself is
    singular for one of the readouts.
    """
    w = float(w_plus)
    if math.isnan(w) or w < 0.0 or w > 1.0:
        raise ParameterError(f"w_plus = {w!r} violates the bound 0 <= w_plus <= 1")
    k = w * (1.0 - w)
    v = 2.0 * math.sqrt(k)
    p = math.sqrt(max(1.0 - 4.0 * k, 0.0))
    return math.sqrt(v / (p + v)) if v > 0.0 else 0.0


def _golden_minimize(f, lo: float, hi: float, xtol: float = 1e-10) -> tuple[float, float]:
    """Golden-section minimum of a unimodal scalar function on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = float(lo), float(hi)
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > xtol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = f(x2)
    x = 0.5 * (a + b)
    return x, f(x)


@dataclass(frozen=True)
class MinimumProductReport:
    """Minimum simultaneous variance product by every available route.

    ``value`` is the product evaluated at the regularized optimal overlap.
    ``long_form`` is the direct closed expression in the populations (NaN
    where that representation is 0/0 ill-conditioned), ``numeric_min`` a
    golden-section minimization of the product over ``c``. The two compact
    candidates ``(1 +- V P)**2 / 16`` are both evaluated; the match flags
    record which one the computed routes agree with at 1e-9.
    """

    w_plus: float
    value: float
    long_form: float
    at_optimal_c: float
    numeric_min: float
    c_opt: float
    c_numeric: float
    compact_plus: float
    compact_minus: float
    matches_plus: bool
    matches_minus: bool


def minimum_product_report(w_plus: float) -> MinimumProductReport:
    """Cross-checked minimum of the simultaneous product at fixed populations."""
    w = float(w_plus)
    k = w * (1.0 - w)
    c_opt = optimal_entanglement(w)
    at_optimal = simultaneous_product(w, c_opt)

    # Direct closed expression; its denominator vanishes at k = 1/8 (where
    # the form is 0/0 with a finite limit) and at k in {0, 1/4}, so it is
    # only evaluated where it is well-conditioned.
    root = math.sqrt(max(k * (1.0 - 4.0 * k), 0.0))
    den = 16.0 * (-4.0 * k * (1.0 - 4.0 * k) + root)
    if abs(den) >= 1e-6:
        num = -16.0 * k * k * (1.0 - 4.0 * k) ** 2 + (1.0 - 12.0 * k * (1.0 - 4.0 * k)) * root
        long_form = num / den
    else:
        long_form = math.nan

    if 0.0 < c_opt < 1.0:
        c_numeric, numeric_min = _golden_minimize(
            lambda c: simultaneous_product(w, c), 1e-9, 1.0 - 1e-9
        )
    else:
        # Boundary populations: the optimum sits at an endpoint of c where the
        # finite limit is known exactly, so the numeric route collapses to it.
        c_numeric, numeric_min = c_opt, at_optimal

    v = 2.0 * math.sqrt(k)
    p = math.sqrt(max(1.0 - 4.0 * k, 0.0))
    compact_plus = (1.0 + v * p) ** 2 / 16.0
    compact_minus = (1.0 - v * p) ** 2 / 16.0

    routes = [at_optimal, numeric_min]
    if not math.isnan(long_form):
        routes.append(long_form)
    spread = max(routes) - min(routes)
    if spread > ROUTE_AGREEMENT_TOL:
        raise ContractViolationError(
            f"independent minimum-product routes disagree by {spread!r} at w_plus = {w!r}"
        )

    return MinimumProductReport(
        w_plus=w,
        value=at_optimal,
        long_form=long_form,
        at_optimal_c=at_optimal,
        numeric_min=numeric_min,
        c_opt=c_opt,
        c_numeric=c_numeric,
        compact_plus=compact_plus,
        compact_minus=compact_minus,
        matches_plus=abs(at_optimal - compact_plus) <= ROUTE_AGREEMENT_TOL,
        matches_minus=abs(at_optimal - compact_minus) <= ROUTE_AGREEMENT_TOL,
    )


def minimum_simultaneous_product(w_plus: float) -> float:
    """Minimum over ``c`` of the simultaneous variance product.

    Evaluates every available route and returns the value at the regularized
    optimal overlap after verifying that all routes agree within 1e-9.
    Equals 1/16 at ``w_plus in {0, 1/2, 1}``.
    """
    return minimum_product_report(w_plus).value
