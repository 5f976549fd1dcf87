"""Variance-product uncertainty relations for two-outcome observables.

The strengthened lower bound kept here retains both the commutator and the
symmetrized covariance term::

    Var(A) Var(B) >= (<C>**2 + <F>**2) / 4,
    C = -i [A, B],   <F> = <AB + BA> - 2 <A> <B>

On a two-level system every pure state saturates it, so the interesting
structure is the families of pure states whose eigen-equation parameter
``lambda`` is purely real or purely imaginary. Those families trace the
boundary of the reachable region of the normalized uncertainty product at
fixed populations.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolationError, ParameterError
from .states import DensityMatrix, Observable, pure_state

EQUALITY_TOL = 1e-10
INEQUALITY_SLACK = 1e-12

IS_FAMILIES = ("IS1", "IS2a", "IS2b")

__all__ = [
    "EQUALITY_TOL",
    "INEQUALITY_SLACK",
    "IS_FAMILIES",
    "mean_var",
    "RobertsonReport",
    "robertson",
    "normalized_product_bounds",
    "IntelligentState",
    "intelligent_state",
    "is_residual",
]


def _real_trace(rho_m: np.ndarray, op: np.ndarray) -> float:
    value = np.trace(rho_m @ op)
    return float(value.real)


def mean_var(rho: DensityMatrix, obs: Observable) -> tuple[float, float]:
    """Mean and variance of an observable, from explicit traces.

    The variance is clipped to 0 when rounding drives it within 1e-12 below
    zero; a larger negative value raises, since it signals corrupted inputs.
    """
    rho_m = rho.matrix
    m = obs.matrix
    mean = _real_trace(rho_m, m)
    var = _real_trace(rho_m, m @ m) - mean * mean
    if var < -INEQUALITY_SLACK:
        raise ContractViolationError(f"variance evaluated to {var!r} < 0 beyond tolerance")
    return mean, max(var, 0.0)


@dataclass(frozen=True)
class RobertsonReport:
    """Both sides of the strengthened uncertainty bound for one state and pair.

    ``lhs = var_a * var_b`` and ``rhs = (c_mean**2 + f_mean**2) / 4``, where
    ``c_mean`` is the mean of ``-i [A, B]`` and ``f_mean`` the symmetrized
    covariance. The slack ``lhs - rhs`` is nonnegative for every valid state
    and vanishes on pure states.
    """

    var_a: float
    var_b: float
    c_mean: float
    f_mean: float

    def __post_init__(self) -> None:
        if self.slack < -INEQUALITY_SLACK:
            raise ContractViolationError(
                f"uncertainty bound violated: lhs - rhs = {self.slack!r}; "
                "this indicates corrupted operator or state input"
            )

    @property
    def lhs(self) -> float:
        return self.var_a * self.var_b

    @property
    def rhs(self) -> float:
        return 0.25 * (self.c_mean ** 2 + self.f_mean ** 2)

    @property
    def slack(self) -> float:
        return self.lhs - self.rhs


def robertson(rho: DensityMatrix, a_obs: Observable, b_obs: Observable) -> RobertsonReport:
    """Evaluate the strengthened uncertainty bound by explicit matrix algebra."""
    rho_m = rho.matrix
    a_m = a_obs.matrix
    b_m = b_obs.matrix
    mean_a = _real_trace(rho_m, a_m)
    mean_b = _real_trace(rho_m, b_m)
    var_a = _real_trace(rho_m, a_m @ a_m) - mean_a ** 2
    var_b = _real_trace(rho_m, b_m @ b_m) - mean_b ** 2
    commutator = a_m @ b_m - b_m @ a_m
    c_mean = _real_trace(rho_m, -1j * commutator)
    f_mean = _real_trace(rho_m, a_m @ b_m + b_m @ a_m) - 2.0 * mean_a * mean_b
    return RobertsonReport(
        var_a=max(var_a, 0.0), var_b=max(var_b, 0.0), c_mean=c_mean, f_mean=f_mean
    )


def normalized_product_bounds(w_plus: float) -> tuple[float, float]:
    """Range of ``Var(A) Var(B) / ((a+ - a-)**2 (b+ - b-)**2)`` at fixed populations.

    Over all states with populations ``(w_plus, 1 - w_plus)`` and over all
    complementary family members, the normalized product lies between
    ``w+ w- (1 - 4 w+ w-) / 4`` (pure state, proper member, equal to
    ``P**2 V**2 / 16``) and ``w+ w- / 4`` (coherence invisible to the member,
    by erasure phase or by a fully dephased state).
    """
    w = float(w_plus)
    if math.isnan(w) or w < 0.0 or w > 1.0:
        raise ParameterError(f"w_plus = {w!r} violates the bound 0 <= w_plus <= 1")
    k = w * (1.0 - w)
    return k * (1.0 - 4.0 * k) / 4.0, k / 4.0


@dataclass(frozen=True)
class IntelligentState:
    """A pure state solving ``(A + i lambda B) |psi> = (<A> + i lambda <B>) |psi>``.

    ``lam`` satisfies ``|lam|**2 = Var(A) / Var(B)``; it is purely imaginary
    for the IS1 family and purely real for IS2a and IS2b. At the family
    boundaries where the state becomes an eigenvector of the complementary
    observable (IS1 at ``w_plus = 1/2``, IS2a at ``beta = 0``) the variance
    ratio diverges and ``lam`` is returned with infinite magnitude.
    """

    family: str
    state: DensityMatrix
    lam: complex
    branch: int
    varrho: float


def intelligent_state(
    family: str,
    param: float,
    varrho: float,
    branch: int = 1,
    a_value: float = 0.5,
    b_value: float = 0.5,
) -> IntelligentState:
    """Construct a member of one of the three intelligent-state families.

    ``family`` selects the parameterization:

    - ``"IS1"``: ``param = w_plus`` in [0, 1]; amplitudes
      ``sqrt(w+) |plus> +- exp(i varrho) sqrt(w-) |minus>``; imaginary ``lam``.
      These run along the lower boundary of the normalized product.
    - ``"IS2a"``: ``param = beta`` in [0, pi/2]; equal populations with phase
      ``varrho + branch * beta``; real ``lam = branch * a / (b sin beta)``.
    - ``"IS2b"``: ``param = w_plus`` in [0, 1]; amplitudes
      ``sqrt(w+) |plus> +- i exp(i varrho) sqrt(w-) |minus>``; real
      ``lam = branch * 2 sqrt(w+ w-) a / b``. These run along the upper
      boundary of the normalized product.

    ``branch`` (+1 or -1) picks the sign branch of the family; ``a_value``
    and ``b_value`` set the outcome gauge ``a+- = +-a_value``,
    ``b+- = +-b_value`` that ``lam`` refers to.
    """
    if family not in IS_FAMILIES:
        raise ParameterError(f"family must be one of {IS_FAMILIES}, got {family!r}")
    if branch not in (1, -1):
        raise ParameterError(f"branch must be +1 or -1, got {branch!r}")
    a = float(a_value)
    b = float(b_value)
    if a <= 0.0 or b <= 0.0:
        raise ParameterError(f"gauge values must be positive, got a = {a!r}, b = {b!r}")

    if family == "IS2a":
        beta = float(param)
        if math.isnan(beta) or beta < 0.0 or beta > math.pi / 2.0 + 1e-15:
            raise ParameterError(f"beta = {beta!r} violates the bound 0 <= beta <= pi/2")
        state = pure_state(0.5, varrho + branch * beta)
        if beta == 0.0:
            lam = complex(branch * math.inf, 0.0)
        else:
            lam = complex(branch * a / (b * math.sin(beta)), 0.0)
        return IntelligentState(family, state, lam, branch, float(varrho))

    w = float(param)
    if math.isnan(w) or w < 0.0 or w > 1.0:
        raise ParameterError(f"w_plus = {w!r} violates the bound 0 <= w_plus <= 1")
    root = math.sqrt(w * (1.0 - w))
    if family == "IS1":
        state = pure_state(w, varrho if branch == 1 else varrho + math.pi)
        if w == 0.5:
            # Eigenvector of the complementary member: Var(B) = 0 and the
            # eigen-equation only holds in the infinite-lam limit. The sign
            # flips across w_plus = 1/2 so only the magnitude is meaningful.
            lam = complex(0.0, math.inf)
        else:
            lam = complex(0.0, -branch * 2.0 * a * root / (b * (2.0 * w - 1.0)))
        return IntelligentState(family, state, lam, branch, float(varrho))

    state = pure_state(w, varrho + branch * math.pi / 2.0)
    lam = complex(branch * 2.0 * a * root / b, 0.0)
    return IntelligentState(family, state, lam, branch, float(varrho))


def is_residual(state: DensityMatrix, lam: complex, a_obs: Observable, b_obs: Observable) -> float:
    """Euclidean norm of the eigen-equation defect for a pure state.

    Evaluates ``(A + i lam B) |psi> - (<A> + i lam <B>) |psi>`` and returns
    its norm. Zero (within round-off) exactly on intelligent states with
    their own ``lam``.
    """
    if not cmath.isfinite(complex(lam)):
        raise ParameterError(
            "lam must be finite; an infinite lam marks an eigenvector of the "
            "complementary observable, where the eigen-equation degenerates"
        )
    psi = state.state_vector()
    mean_a, _ = mean_var(state, a_obs)
    mean_b, _ = mean_var(state, b_obs)
    lam = complex(lam)
    op = a_obs.matrix + 1j * lam * b_obs.matrix
    defect = op @ psi - (mean_a + 1j * lam * mean_b) * psi
    return float(np.linalg.norm(defect))
