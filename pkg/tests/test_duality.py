import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from qudual import (
    DensityMatrix,
    ParameterError,
    density_from_params,
    duality_report,
    fringe_probability,
    predictability,
    predictability_of_b,
    pure_state,
    visibility,
    visibility_of_b,
    visibility_oracle,
)

w_values = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
fractions = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
angles = st.floats(min_value=0.0, max_value=2.0 * math.pi, allow_nan=False)


def draw_state(w, u, theta):
    return density_from_params(w, u * math.sqrt(w * (1.0 - w)), theta)


def test_frozen_duality_values():
    rho = pure_state(0.9)
    assert predictability(rho) == pytest.approx(0.8, abs=1e-15)
    assert visibility(rho) == pytest.approx(0.6, abs=1e-15)
    rep = duality_report(rho)
    assert rep.sum_sq == pytest.approx(1.0, abs=1e-15)


def test_fringe_probability_frozen_points():
    # without the mixing stage the + detector sees the + population
    rho = DensityMatrix(0.7, 0.2, 0.4)
    assert fringe_probability(rho, 1.3, 0.0) == pytest.approx(0.7, abs=1e-15)
    # balanced pure state nulls completely at the balanced mixer
    assert fringe_probability(pure_state(0.5), math.pi / 2.0, math.pi / 4.0) == pytest.approx(0.0, abs=1e-15)
    assert fringe_probability(pure_state(0.5), 3.0 * math.pi / 2.0, math.pi / 4.0) == pytest.approx(1.0, abs=1e-15)


def test_fringe_probability_broadcasts():
    rho = pure_state(0.8, 0.2)
    phi = np.linspace(0.0, 2.0 * math.pi, 7)
    xi = np.linspace(0.0, math.pi, 5)
    p = fringe_probability(rho, phi[None, :], xi[:, None])
    assert p.shape == (5, 7)
    assert np.all(p >= -1e-15) and np.all(p <= 1.0 + 1e-15)


@given(w=w_values, u=fractions, theta=angles, phi=angles, xi=angles)
def test_fringe_probability_matches_closed_form(w, u, theta, phi, xi):
    rho = draw_state(w, u, theta)
    direct = (
        rho.w_plus * math.cos(xi) ** 2
        + rho.w_minus * math.sin(xi) ** 2
        - rho.rho12 * math.sin(2.0 * xi) * math.sin(rho.theta + phi)
    )
    assert fringe_probability(rho, phi, xi) == pytest.approx(direct, abs=1e-12)


@given(w=w_values, theta=angles, phi=angles, xi=angles)
def test_diagonal_states_show_no_fringes(w, theta, phi, xi):
    rho = DensityMatrix(w, 0.0, theta)
    assert fringe_probability(rho, phi, xi) == pytest.approx(fringe_probability(rho, 0.0, xi), abs=1e-12)


def test_oracle_frozen_cases():
    v_hat, xi_hat = visibility_oracle(pure_state(0.9), grid_n=512)
    assert v_hat == pytest.approx(0.6, abs=1e-3)
    assert xi_hat == pytest.approx(math.pi / 4.0, abs=2.0 * math.pi / 512 + 1e-9)
    v_hat, _ = visibility_oracle(pure_state(0.5), grid_n=512)
    assert v_hat == pytest.approx(1.0, abs=1e-3)
    # diagonal state: the scan sees only float noise, far below any fringe
    v_hat, _ = visibility_oracle(DensityMatrix(0.7, 0.0), grid_n=64)
    assert v_hat == pytest.approx(0.0, abs=1e-12)


def test_oracle_rejects_tiny_grid():
    with pytest.raises(ParameterError, match="grid_n"):
        visibility_oracle(pure_state(0.5), grid_n=4)


@given(w=w_values, u=fractions, theta=angles)
def test_oracle_tracks_coherence(w, u, theta):
    rho = draw_state(w, u, theta)
    # below ~1e-9 the fringe signal drowns in float noise of the grid scan
    assume(rho.rho12 == 0.0 or rho.rho12 > 1e-9)
    v_hat, _ = visibility_oracle(rho, grid_n=96)
    assert v_hat == pytest.approx(visibility(rho), abs=5e-3)


def test_family_frozen_values():
    rho = pure_state(0.9, 0.3)
    # proper phase choice swaps the roles of P and V
    assert predictability_of_b(rho, 0.3) == pytest.approx(0.6, abs=1e-15)
    assert visibility_of_b(rho, 0.3) == pytest.approx(0.8, abs=1e-15)
    # erasure choice erases all predictability of the member outcome
    assert predictability_of_b(rho, 0.3 + math.pi / 2.0) == pytest.approx(0.0, abs=1e-15)
    assert visibility_of_b(rho, 0.3 + math.pi / 2.0) == pytest.approx(1.0, abs=1e-15)


@given(w=w_values, u=fractions, theta=angles, varrho=angles)
def test_family_rotation_preserves_the_sum(w, u, theta, varrho):
    rho = draw_state(w, u, theta)
    base = predictability(rho) ** 2 + visibility(rho) ** 2
    rotated = predictability_of_b(rho, varrho) ** 2 + visibility_of_b(rho, varrho) ** 2
    assert rotated == pytest.approx(base, abs=1e-12)


@given(w=w_values, u=fractions, theta=angles)
def test_report_bounds_and_purity_link(w, u, theta):
    rho = draw_state(w, u, theta)
    rep = duality_report(rho)
    assert rep.sum_sq <= 1.0 + 1e-12
    assert rep.sum_sq == pytest.approx(2.0 * rho.purity - 1.0, abs=1e-12)


def test_equality_exactly_for_pure_states():
    rng = np.random.default_rng(11)
    for _ in range(200):
        w = rng.uniform()
        rho = pure_state(w, rng.uniform(0.0, 2.0 * math.pi))
        assert abs(duality_report(rho).sum_sq - 1.0) <= 1e-10
    for _ in range(200):
        w = rng.uniform(0.05, 0.95)
        rho = density_from_params(w, rng.uniform(0.0, 0.99) * math.sqrt(w * (1.0 - w)), 0.0)
        assert duality_report(rho).sum_sq < 1.0 - 1e-10
