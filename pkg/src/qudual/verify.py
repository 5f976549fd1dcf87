"""Deterministic self-check suites over every closed form in the package.

Each suite draws its inputs from a seeded counter-based generator, so a run
is reproducible byte for byte given the seed and level. ``fast`` keeps every
suite below a second; ``full`` runs the sizes used for sign-off, including a
million-shot sampling pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import montecarlo
from .duality import (
    duality_report,
    predictability,
    predictability_of_b,
    visibility,
    visibility_of_b,
    visibility_oracle,
)
from .errors import ContractViolationError, ParameterError
from .linalg import hermitian_eig, kron, trace_norm
from .simultaneous import (
    distinguishability,
    entangle,
    entangled_visibility,
    estimate_a,
    estimate_b,
    minimum_product_report,
    minimum_simultaneous_product,
    optimal_entanglement,
)
from .states import (
    ComplementaryFamily,
    DensityMatrix,
    complementary_observable,
    complementary_triplet,
    pure_state,
    symmetric_observable,
)
from .uncertainty import (
    intelligent_state,
    is_residual,
    mean_var,
    normalized_product_bounds,
    robertson,
)

__all__ = ["SuiteResult", "run_suites", "render_report", "SUITE_NAMES"]

_TWO_PI = 2.0 * math.pi

# Sweep sizes per level. fast keeps each suite under a second; full uses the
# sign-off sizes.
_SIZES = {
    "fast": {
        "duality": 2000,
        "robertson": 2000,
        "fringe_states": 4,
        "fringe_grid": 256,
        "fringe_tol": 2e-3,
        "extremality_w": 9,
        "mc_n": 20000,
    },
    "full": {
        "duality": 10000,
        "robertson": 10000,
        "fringe_states": 20,
        "fringe_grid": 512,
        "fringe_tol": 1e-3,
        "extremality_w": 21,
        "mc_n": 1000000,
    },
}


@dataclass(frozen=True)
class SuiteResult:
    """Outcome of one suite: counts plus at most a few failure notes."""

    name: str
    checks: int
    failures: int
    notes: tuple[str, ...] = ()


class _Tally:
    """Accumulates check outcomes for one suite."""

    _MAX_NOTES = 6

    def __init__(self, name: str) -> None:
        self.name = name
        self.checks = 0
        self.failures = 0
        self.notes: list[str] = []

    def check(self, ok: bool, label: str) -> None:
        self.checks += 1
        if not ok:
            self.failures += 1
            if len(self.notes) < self._MAX_NOTES:
                self.notes.append(label)

    def close(self, value: float, target: float, tol: float, label: str) -> None:
        self.check(abs(value - target) <= tol, f"{label}: {value!r} vs {target!r}")

    def raises(self, exc: type, fn, label: str) -> None:
        try:
            fn()
        except exc:
            self.check(True, label)
        except Exception:
            self.check(False, f"{label}: wrong exception type")
        else:
            self.check(False, f"{label}: no exception")

    def result(self) -> SuiteResult:
        return SuiteResult(self.name, self.checks, self.failures, tuple(self.notes))


def _random_mixed(rng: np.random.Generator) -> DensityMatrix:
    """Clearly mixed state: coherence and populations bounded away from purity."""
    w = rng.uniform(0.05, 0.95)
    u = rng.uniform(0.0, 0.99)
    return DensityMatrix(w, u * math.sqrt(w * (1.0 - w)), rng.uniform(0.0, _TWO_PI))


def _random_pure(rng: np.random.Generator) -> DensityMatrix:
    w = rng.uniform(0.0, 1.0)
    return DensityMatrix(w, math.sqrt(w * (1.0 - w)), rng.uniform(0.0, _TWO_PI))


def _random_state(rng: np.random.Generator, i: int) -> DensityMatrix:
    return _random_pure(rng) if i % 2 else _random_mixed(rng)


def _suite_linalg_core(t: _Tally, size: dict, rng: np.random.Generator, corrupt: bool) -> None:
    w, v = hermitian_eig(np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex))
    t.close(w[0], 1.0, 1e-14, "sigma_x top eigenvalue")
    t.close(w[1], -1.0, 1e-14, "sigma_x bottom eigenvalue")
    overlap = abs(np.vdot(v[:, 0], np.array([1.0, 1.0]) / math.sqrt(2.0)))
    t.close(overlap, 1.0, 1e-12, "sigma_x eigenvector alignment")
    t.close(trace_norm(np.diag([0.5, -0.5]).astype(complex)), 1.0, 1e-14, "trace norm diag")

    psi0 = np.array([1.0, 0.0], dtype=complex)
    psi1 = np.array([0.6, 0.8], dtype=complex)
    diff = np.outer(psi0, psi0.conj()) - np.outer(psi1, psi1.conj())
    t.close(trace_norm(diff), 1.6, 1e-12, "trace norm of projector difference")

    for i in range(200):
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        m = m + m.conj().T
        w, v = hermitian_eig(m)
        scale = max(1.0, float(np.abs(m).max()))
        recon = v @ np.diag(w) @ v.conj().T
        t.check(float(np.abs(recon - m).max()) <= 1e-10 * scale, f"eig reconstruction #{i}")
        t.check(w[0] >= w[1], f"eig ordering #{i}")
        gram = v.conj().T @ v
        t.check(float(np.abs(gram - np.eye(2)).max()) <= 1e-12, f"eig orthonormality #{i}")
        ref = np.linalg.eigvalsh(m)[::-1]
        t.check(float(np.abs(w - ref).max()) <= 1e-10 * scale, f"eig against lapack #{i}")
        sv = float(np.linalg.svd(m, compute_uv=False).sum())
        t.close(trace_norm(m), sv, 1e-10 * scale, f"trace norm against svd #{i}")

    for i in range(50):
        mats = rng.normal(size=(4, 2, 2)) + 1j * rng.normal(size=(4, 2, 2))
        a, b, c, d = mats
        lhs = kron(a, b) @ kron(c, d)
        rhs = kron(a @ c, b @ d)
        t.check(float(np.abs(lhs - rhs).max()) <= 1e-12 * max(1.0, float(np.abs(rhs).max())), f"kron mixed product #{i}")


def _suite_state_round_trip(t: _Tally, size: dict, rng: np.random.Generator, corrupt: bool) -> None:
    for i in range(500):
        rho = _random_state(rng, i)
        back = DensityMatrix.from_matrix(rho.matrix)
        t.close(back.w_plus, rho.w_plus, 1e-12, f"round trip w_plus #{i}")
        t.close(back.rho12, rho.rho12, 1e-12, f"round trip rho12 #{i}")
        if rho.rho12 > 1e-9:
            phase_gap = abs(np.exp(1j * back.theta) - np.exp(1j * rho.theta))
            t.check(phase_gap <= 1e-9, f"round trip theta #{i}")
        m = rho.matrix
        t.close(float(np.trace(m @ m).real), rho.purity, 1e-12, f"purity trace identity #{i}")
    t.raises(ParameterError, lambda: DensityMatrix(1.2, 0.0), "w_plus above 1 rejected")
    t.raises(ParameterError, lambda: DensityMatrix(0.5, 0.6), "coherence above bound rejected")
    t.raises(
        ContractViolationError,
        lambda: DensityMatrix.from_matrix(np.array([[0.5, 0.1j], [0.1j, 0.5]])),
        "non-hermitian matrix rejected",
    )


def _suite_duality(t: _Tally, size: dict, rng: np.random.Generator, corrupt: bool) -> None:
    # The corrupt switch flips the upper bound to an impossible one; it exists
    # so the harness can confirm failures are actually reported.
    limit = -1.0 if corrupt else 1.0 + 1e-12
    for i in range(size["duality"]):
        rho = _random_state(rng, i)
        try:
            rep = duality_report(rho)
        except ContractViolationError as exc:
            t.check(False, f"duality report contract #{i}: {exc}")
            continue
        t.check(rep.sum_sq <= limit, f"sum of squares bound #{i}: {rep.sum_sq!r}")
        t.check(0.0 <= rep.p <= 1.0 and 0.0 <= rep.v <= 1.0, f"P,V range #{i}")
        if rho.purity >= 1.0 - 1e-12:
            t.check(abs(rep.sum_sq - 1.0) <= 1e-10, f"pure saturation #{i}: {rep.sum_sq!r}")
        else:
            t.check(rep.sum_sq < 1.0 - 1e-10, f"mixed strict inequality #{i}: {rep.sum_sq!r}")


def _suite_complementary_family(t: _Tally, size: dict, rng: np.random.Generator, corrupt: bool) -> None:
    for i in range(1000):
        rho = _random_state(rng, i)
        varrho = rng.uniform(0.0, _TWO_PI)
        base = predictability(rho) ** 2 + visibility(rho) ** 2
        rotated = predictability_of_b(rho, varrho) ** 2 + visibility_of_b(rho, varrho) ** 2
        t.close(rotated, base, 1e-12, f"family invariance #{i}")
        t.close(predictability_of_b(rho, rho.theta), visibility(rho), 1e-12, f"proper choice swaps V into P_B #{i}")
        t.close(visibility_of_b(rho, rho.theta), predictability(rho), 1e-12, f"proper choice swaps P into V_B #{i}")
        t.close(predictability_of_b(rho, rho.theta + math.pi / 2.0), 0.0, 1e-12, f"erasure kills P_B #{i}")
        t.close(visibility_of_b(rho, rho.theta + math.pi / 2.0) ** 2, base, 1e-12, f"erasure moves everything into V_B #{i}")

    for i in range(50):
        varrho = rng.uniform(0.0, _TWO_PI)
        fam = ComplementaryFamily(symmetric_observable(), varrho)
        vp, vm = fam.member_vectors()
        t.check(float(np.abs(np.abs(vp) - math.sqrt(0.5)).max()) <= 1e-12, f"unbiased member magnitudes #{i}")
        t.close(abs(np.vdot(vp, vm)), 0.0, 1e-12, f"member orthogonality #{i}")
        for handedness in (1, -1):
            a_obs, b_obs, c_obs = complementary_triplet(symmetric_observable(), varrho, handedness)
            comm = a_obs.matrix @ b_obs.matrix - b_obs.matrix @ a_obs.matrix
            target = 1j * handedness * c_obs.matrix
            t.check(
                float(np.abs(comm - target).max()) <= 1e-12,
                f"triplet commutator handedness={handedness} #{i}",
            )


def _suite_fringe_oracle(t: _Tally, size: dict, rng: np.random.Generator, corrupt: bool) -> None:
    grid = size["fringe_grid"]
    tol = size["fringe_tol"]
    step = _TWO_PI / grid
    states = [pure_state(0.9), pure_state(0.5), DensityMatrix(0.7, 0.0)]
    states += [_random_state(rng, i) for i in range(size["fringe_states"])]
    frozen = {0: 0.6, 1: 1.0, 2: 0.0}
    for i, rho in enumerate(states):
        v_hat, xi_hat = visibility_oracle(rho, grid_n=grid)
        target = frozen.get(i, visibility(rho))
        t.close(v_hat, target, tol, f"oracle contrast state #{i}")
        if visibility(rho) > 1e-3:
            t.check(
                abs(xi_hat - math.pi / 4.0) <= step + 1e-9,
                f"oracle coupling angle state #{i}: {xi_hat!r}",
            )


def _suite_robertson(t: _Tally, size: dict, rng: np.random.Generator, corrupt: bool) -> None:
    a_obs = symmetric_observable()
    for i in range(size["robertson"]):
        rho = _random_state(rng, i)
        varrho = rng.uniform(0.0, _TWO_PI)
        b_obs = complementary_observable(ComplementaryFamily(a_obs, varrho))
        rep = robertson(rho, a_obs, b_obs)
        t.check(rep.slack >= -1e-12, f"robertson bound #{i}: {rep.slack!r}")
        # Slack has a closed form of its own for this pair: the coherence
        # deficit (w+ w- - rho12^2) / 4 at unit eigenvalue gaps.
        deficit = rho.w_plus * rho.w_minus - rho.rho12 * rho.rho12
        t.close(rep.slack, deficit / 4.0, 1e-12, f"robertson slack identity #{i}")
        if rho.purity >= 1.0 - 1e-12:
            t.check(abs(rep.slack) <= 1e-10, f"pure state saturation #{i}: {rep.slack!r}")


def _suite_intelligent_states(t: _Tally, size: dict, rng: np.random.Generator, corrupt: bool) -> None:
    varrho = 0.9
    a_obs = symmetric_observable()
    b_obs = complementary_observable(ComplementaryFamily(a_obs, varrho))

    def common_checks(tag: str, st) -> None:
        rep = robertson(st.state, a_obs, b_obs)
        t.check(abs(rep.slack) <= 1e-10, f"{tag} saturates the bound: {rep.slack!r}")
        lam = st.lam
        if math.isinf(abs(lam)):
            t.check(True, f"{tag} infinite stretch accepted at singular point")
            return
        res = is_residual(st.state, lam, a_obs, b_obs)
        t.check(res <= 1e-10, f"{tag} eigen-equation residual: {res!r}")
        _, va_v = mean_var(st.state, a_obs)
        _, vb_v = mean_var(st.state, b_obs)
        lam_sq = abs(lam) ** 2
        t.check(
            abs(lam_sq * vb_v - va_v) <= 1e-10 * max(1.0, lam_sq),
            f"{tag} stretch matches variance ratio",
        )

    for branch in (1, -1):
        for w in np.linspace(0.0, 1.0, 21):
            st = intelligent_state("IS1", float(w), varrho, branch)
            if float(w) == 0.5:
                t.check(math.isinf(abs(st.lam)), "IS1 central point has infinite stretch")
            t.check(st.lam.real == 0.0, "IS1 stretch is imaginary")
            common_checks(f"IS1 w={w:.2f} br={branch}", st)
            _, va_v = mean_var(st.state, a_obs)
            _, vb_v = mean_var(st.state, b_obs)
            lo, hi = normalized_product_bounds(float(w))
            t.close(va_v * vb_v, lo, 1e-12, f"IS1 product sits on the floor w={w:.2f}")

        for beta in np.linspace(0.0, math.pi / 2.0, 21):
            st = intelligent_state("IS2a", float(beta), varrho, branch)
            if float(beta) == 0.0:
                t.check(math.isinf(abs(st.lam)), "IS2a zero offset has infinite stretch")
            t.check(st.lam.imag == 0.0, "IS2a stretch is real")
            common_checks(f"IS2a beta={beta:.2f} br={branch}", st)

        for w in np.linspace(0.0, 1.0, 21):
            st = intelligent_state("IS2b", float(w), varrho, branch)
            t.check(st.lam.imag == 0.0, "IS2b stretch is real")
            common_checks(f"IS2b w={w:.2f} br={branch}", st)
            _, va_v = mean_var(st.state, a_obs)
            _, vb_v = mean_var(st.state, b_obs)
            lo, hi = normalized_product_bounds(float(w))
            t.close(va_v * vb_v, hi, 1e-12, f"IS2b product sits on the ceiling w={w:.2f}")


def _suite_product_bounds(t: _Tally, size: dict, rng: np.random.Generator, corrupt: bool) -> None:
    a_obs = symmetric_observable()
    for alpha in np.linspace(0.0, math.pi / 2.0, 201):
        w = math.sin(float(alpha)) ** 2
        k = w * (1.0 - w)
        lo, hi = normalized_product_bounds(w)
        p = abs(2.0 * w - 1.0)
        v = 2.0 * math.sqrt(k)
        t.close(lo, p * p * v * v / 16.0, 1e-12, f"floor matches P^2 V^2 / 16 at w={w:.4f}")
        t.close(hi, k / 4.0, 1e-12, f"ceiling matches K/4 at w={w:.4f}")

    for w in np.linspace(0.08, 0.92, size["extremality_w"]):
        rho = pure_state(float(w), theta=0.6)
        lo, hi = normalized_product_bounds(float(w))
        for delta in np.linspace(0.0, math.pi / 2.0, 33):
            b_obs = complementary_observable(ComplementaryFamily(a_obs, 0.6 - float(delta)))
            _, va = mean_var(rho, a_obs)
            _, vb = mean_var(rho, b_obs)
            prod = va * vb
            t.check(lo - 1e-12 <= prod <= hi + 1e-12, f"product within bounds w={w:.3f} d={delta:.3f}")
            if float(delta) == 0.0:
                t.close(prod, lo, 1e-12, f"proper choice reaches the floor w={w:.3f}")
        b_obs = complementary_observable(ComplementaryFamily(a_obs, 0.6 - math.pi / 2.0))
        _, vb = mean_var(rho, b_obs)
        _, va = mean_var(rho, a_obs)
        t.close(va * vb, hi, 1e-12, f"erasure choice reaches the ceiling w={w:.3f}")


def _suite_entangled_duality(t: _Tally, size: dict, rng: np.random.Generator, corrupt: bool) -> None:
    theta = 0.7
    for w in np.linspace(0.0, 1.0, 51):
        for c in np.linspace(0.0, 1.0, 51):
            psi = entangle(float(w), theta, float(c))
            d = distinguishability(psi)
            ve = entangled_visibility(psi)
            t.close(d * d + ve * ve, 1.0, 1e-12, f"erasure-free duality w={w:.2f} c={c:.2f}")
            t.check(abs(2.0 * w - 1.0) <= d + 1e-12, f"predictability below distinguishability w={w:.2f} c={c:.2f}")
            marg = psi.marginal_system()
            t.close(marg.w_plus, float(w), 1e-12, f"marginal populations w={w:.2f} c={c:.2f}")
            t.close(marg.rho12, float(c) * math.sqrt(w * (1.0 - w)), 1e-12, f"marginal coherence w={w:.2f} c={c:.2f}")


def _suite_unbiasedness(t: _Tally, size: dict, rng: np.random.Generator, corrupt: bool) -> None:
    varrho = math.pi / 5.0
    a_obs = symmetric_observable()
    b_obs = complementary_observable(ComplementaryFamily(a_obs, varrho))
    for w in (k / 10.0 for k in range(1, 10)):
        sharp_a = 0.5 * (2.0 * w - 1.0)
        for j in range(8):
            theta = _TWO_PI * j / 8.0
            sharp_b, _ = mean_var(pure_state(w, theta), b_obs)
            for c in (k / 10.0 for k in range(1, 10)):
                psi = entangle(w, theta, c)
                try:
                    mean_a, _ = estimate_a(psi)
                    mean_b, _ = estimate_b(psi, varrho)
                except ContractViolationError as exc:
                    t.check(False, f"estimator cross-check w={w} theta={theta:.2f} c={c}: {exc}")
                    continue
                t.close(mean_a, sharp_a, 1e-12, f"meter readout unbiased w={w} theta={theta:.2f} c={c}")
                t.close(mean_b, sharp_b, 1e-12, f"system readout unbiased w={w} theta={theta:.2f} c={c}")


def _suite_minimum_product(t: _Tally, size: dict, rng: np.random.Generator, corrupt: bool) -> None:
    for k in range(1, 52):
        w = k / 53.0
        try:
            rep = minimum_product_report(w)
        except ContractViolationError as exc:
            t.check(False, f"route disagreement at w={w:.4f}: {exc}")
            continue
        t.check(rep.matches_plus, f"compact plus form matches at w={w:.4f}")
        vp = abs(2.0 * w - 1.0) * 2.0 * math.sqrt(w * (1.0 - w))
        if vp > 1e-3:
            t.check(not rep.matches_minus, f"compact minus form rejected at w={w:.4f}")
        if math.isfinite(rep.long_form):
            t.check(
                abs(rep.long_form - rep.value) <= 1e-9 * max(1.0, abs(rep.value)),
                f"long route agrees at w={w:.4f}",
            )
    for w in (0.0, 0.5, 1.0):
        t.check(
            minimum_simultaneous_product(w) == 0.0625,
            f"limit value is exactly 1/16 at w={w}",
        )
    t.close(optimal_entanglement(0.9), math.sqrt(3.0 / 7.0), 1e-12, "optimal overlap at w=0.9")


def _suite_monte_carlo(t: _Tally, size: dict, rng: np.random.Generator, corrupt: bool, seed: int) -> None:
    n = size["mc_n"]
    theta = 0.3
    a_obs = symmetric_observable()
    b_obs = complementary_observable(ComplementaryFamily(a_obs, theta))
    rho = pure_state(0.9, theta)

    rep = montecarlo.sample_sharp(rho, a_obs, n, seed + 1)
    t.check(not rep.flagged and not rep.degenerate, f"sharp reference readout z=({rep.z_mean:.2f},{rep.z_variance:.2f})")
    rep = montecarlo.sample_sharp(rho, b_obs, n, seed + 2)
    t.check(not rep.flagged and not rep.degenerate, f"sharp complementary readout z=({rep.z_mean:.2f},{rep.z_variance:.2f})")

    psi = entangle(0.9, theta, math.sqrt(3.0 / 7.0))
    rep_a, rep_b = montecarlo.sample_simultaneous(psi, theta, n, seed + 3)
    t.check(not rep_a.flagged and not rep_a.degenerate, f"meter readout z=({rep_a.z_mean:.2f},{rep_a.z_variance:.2f})")
    t.check(not rep_b.flagged and not rep_b.degenerate, f"system readout z=({rep_b.z_mean:.2f},{rep_b.z_variance:.2f})")

    phi_grid = np.linspace(0.0, _TWO_PI, 16, endpoint=False)
    v_hat, _ = montecarlo.sample_fringe(pure_state(0.5), phi_grid, math.pi / 4.0, max(n // 20, 100), seed + 4)
    t.check(v_hat == 1.0, f"balanced pure state shows full contrast: {v_hat!r}")
    v_hat, _ = montecarlo.sample_fringe(pure_state(0.9, 0.7), phi_grid, math.pi / 4.0, max(n // 20, 100), seed + 5)
    tol = 0.1 if n < 100000 else 0.02
    t.close(v_hat, 0.6, tol, "sampled contrast tracks the coherence")

    rep = montecarlo.sample_sharp(DensityMatrix(1.0, 0.0), a_obs, 5, seed + 6)
    t.check(rep.degenerate and rep.empirical_variance == 0.0, "eigenstate sampling is degenerate")


_SUITES = [
    ("linalg_core", _suite_linalg_core),
    ("state_round_trip", _suite_state_round_trip),
    ("duality", _suite_duality),
    ("complementary_family", _suite_complementary_family),
    ("fringe_oracle", _suite_fringe_oracle),
    ("robertson", _suite_robertson),
    ("intelligent_states", _suite_intelligent_states),
    ("product_bounds", _suite_product_bounds),
    ("entangled_duality", _suite_entangled_duality),
    ("unbiasedness", _suite_unbiasedness),
    ("minimum_product", _suite_minimum_product),
    ("monte_carlo", _suite_monte_carlo),
]

SUITE_NAMES = tuple(name for name, _ in _SUITES)


def run_suites(level: str = "fast", seed: int = 42, corrupt: bool = False) -> list[SuiteResult]:
    """Run every suite at the given level; deterministic for a given seed."""
    if level not in _SIZES:
        raise ParameterError(f"level must be one of {sorted(_SIZES)}, got {level!r}")
    size = _SIZES[level]
    results = []
    for index, (name, fn) in enumerate(_SUITES):
        tally = _Tally(name)
        rng = montecarlo._generator(seed, stream=1000 + index)
        if name == "monte_carlo":
            fn(tally, size, rng, corrupt, seed)
        else:
            fn(tally, size, rng, corrupt)
        results.append(tally.result())
    return results


def render_report(results: list[SuiteResult], level: str, seed: int) -> str:
    """Fixed-layout text report; byte-identical across runs with one seed."""
    lines = [f"self-check level={level} seed={seed}"]
    width = max(len(r.name) for r in results)
    for r in results:
        lines.append(f"  {r.name:<{width}}  checks={r.checks:<6d} failures={r.failures}")
        for note in r.notes:
            lines.append(f"    note: {note}")
    total_checks = sum(r.checks for r in results)
    total_failures = sum(r.failures for r in results)
    verdict = "PASS" if total_failures == 0 else "FAIL"
    lines.append(f"result: {verdict} checks={total_checks} failures={total_failures}")
    return "\n".join(lines) + "\n"
