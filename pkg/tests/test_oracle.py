import numpy as np
import pytest

from valve.criticals import T_PLUS, conversion_point, critical_point
from valve.errors import ValidationError
from valve.oracle import (
    build_system,
    evanescent_decay,
    fit_decay_exponent,
    isotropy_check,
    lattice_residuals,
    q_profile,
    solve_numeric,
)
from valve.scattering import ScatterParams, flux_residual, s_matrix

GENERIC = ScatterParams(g=0.69, lam=0.1, epsilon=0.4, a=0.6, b=1.1)
OMEGAS = [-1.9, -1.2, 0.3, 1.5]
GRID_G = (0.3, 0.5, 0.69, 0.75, 0.9)
GRID_LAM = (0.025, 0.1, 1.0 / 3.0, 1.0)
MIRROR = {"S11": "S22", "S21": "S12", "S31": "S42", "S41": "S32"}


def test_oracle_matches_closed_form_over_grid(rng):
    worst = 0.0
    count = 0
    for g in GRID_G:
        for lam in GRID_LAM:
            for omega in np.linspace(-1.99, 1.99, 100):
                params = ScatterParams(g=g, lam=lam, epsilon=float(rng.uniform(0.0, 2.0 * np.pi)))
                s = s_matrix(float(omega), params)
                closed = {**s.column(1), **s.column(3)}
                for j in (1, 3):
                    for key, value in solve_numeric(float(omega), params, j).amplitudes.items():
                        worst = max(worst, abs(value - closed[key]))
                count += 1
    assert count >= 2000
    assert worst < 1e-8


def test_isotropy_at_random_points(random_params, rng):
    for _ in range(100):
        params = random_params(alpha=float(rng.uniform(-np.pi / 4, np.pi / 4)))
        omega = float(rng.uniform(-1.95, 1.95))
        assert isotropy_check(omega, params) < 1e-9


@pytest.mark.parametrize("omega", OMEGAS)
def test_oracle_matches_closed_form(omega):
    s = s_matrix(omega, GENERIC)
    closed = {**s.column(1), **s.column(3)}
    for j in (1, 3):
        sol = solve_numeric(omega, GENERIC, j)
        for key, value in sol.amplitudes.items():
            assert abs(value - closed[key]) < 1e-8, key


@pytest.mark.parametrize("omega", [-1.5, 0.7])
def test_isotropy_of_numeric_amplitudes(omega):
    assert isotropy_check(omega, GENERIC) < 1e-9


def test_isotropy_without_spin_orbit():
    params = ScatterParams(g=0.8, lam=0.6, epsilon=1.0, a=0.9, b=0.3, alpha=0.0)
    assert isotropy_check(-0.8, params) < 1e-9


def test_mirrored_incidence_with_reversed_coupling():
    forward = solve_numeric(-0.7, ScatterParams(g=0.75, lam=0.3, epsilon=1.2, a=0.8, b=0.5, alpha=np.pi / 20), 1)
    mirrored = solve_numeric(-0.7, ScatterParams(g=0.75, lam=0.3, epsilon=1.2, a=0.8, b=0.5, alpha=-np.pi / 20), 2)
    for key, image in MIRROR.items():
        assert abs(forward.amplitudes[key] - mirrored.amplitudes[image]) < 1e-9, key


def test_oracle_flux_is_conserved():
    sol = solve_numeric(-1.2, GENERIC, 1)
    total = sum(abs(v) ** 2 for v in sol.amplitudes.values())
    assert total == pytest.approx(1.0, abs=1e-10)


def test_oracle_at_transparency_point(transparency_params):
    point = critical_point(T_PLUS, 0.9, 0.025)
    sol = solve_numeric(point.omega, transparency_params, 1)
    assert abs(sol.amplitude(1)) == pytest.approx(1.0, abs=1e-8)


def test_oracle_at_conversion_point():
    point = conversion_point(0.5, 1.0)[0]
    params = ScatterParams(g=0.5, lam=1.0, epsilon=point.epsilon, a=np.pi / 4, b=np.pi / 2)
    sol = solve_numeric(point.omega, params, 1)
    assert abs(sol.amplitude(3)) == pytest.approx(0.5, abs=1e-6)
    assert flux_residual(s_matrix(point.omega, params)) < 1e-10


@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_solution_satisfies_lattice_equations(j):
    assert lattice_residuals(-1.2, GENERIC, j) < 1e-9


def test_q_profile_decays_with_chi():
    omega = -1.2
    sol = solve_numeric(omega, GENERIC, 1)
    profile = q_profile(omega, GENERIC, 1)
    assert fit_decay_exponent(profile) == pytest.approx(np.log(sol.chi), abs=1e-6)
    core = profile.loc[profile["n"] == 0, "q_norm"].iloc[0]
    assert core == pytest.approx(np.linalg.norm(sol.q0), rel=1e-8)


def test_evanescent_decay():
    chi = evanescent_decay(-3.0)
    assert 0.0 < chi < 1.0
    assert chi + 1.0 / chi == pytest.approx(3.0)


def test_system_shape_and_band_edge():
    system = build_system(0.1, GENERIC, 2)
    assert system.matrix.shape == (12, 12)
    assert system.rhs.shape == (12,)
    with pytest.raises(ValidationError):
        build_system(2.0, GENERIC, 1)
    with pytest.raises(ValidationError):
        solve_numeric(-2.5, GENERIC, 1)
