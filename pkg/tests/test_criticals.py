import dataclasses
import logging

import numpy as np
import pandas as pd
import pytest

import valve.criticals as criticals
from valve.criticals import (
    B_MINUS,
    B_PLUS,
    CONVERSION,
    ISOLATION,
    SPLITTER,
    T_MINUS,
    T_PLUS,
    check_operating_point,
    conversion_point,
    conversion_residual,
    critical_mu,
    critical_point,
    feasibility_map,
    isolation_point,
    mu_to_omega,
    resolve_kind,
    splitter_point,
)
from valve.errors import InfeasiblePointError, ValidationError
from valve.scattering import ScatterParams, c_y, s_matrix


def test_transparency_reference_point():
    point = critical_point(T_PLUS, 0.9, 0.025)
    assert point.mu == pytest.approx(1.5375)
    assert point.omega == pytest.approx(-1.972971, abs=1e-6)
    assert point.feasible


def test_isolation_reference_energy():
    omega, feasible = mu_to_omega(2.0, 0.7788, 1.0 / 3.0)
    assert omega == pytest.approx(-1.972, abs=5e-4)
    assert feasible
    point = isolation_point(0.7788)
    assert point.omega == pytest.approx(omega)
    checks = check_operating_point(point)
    assert checks["abs_s11"] == pytest.approx(1.0, abs=1e-8)
    assert checks["abs_s33"] < 1e-8


def test_blockade_reference_point():
    point = critical_point(B_PLUS, 0.75, 0.1)
    assert point.mu == pytest.approx(2.2)
    assert point.omega == pytest.approx(-1.7342, abs=1e-3)
    assert check_operating_point(point)["abs_s11"] < 1e-12


def test_splitter_reference_points():
    w_t = critical_point(T_PLUS, 0.69, 0.1).omega
    w_b = critical_point(B_PLUS, 0.69, 0.1).omega
    assert w_t == pytest.approx(-1.97702, abs=1e-4)
    assert w_b == pytest.approx(-1.76752, abs=1e-4)
    point = splitter_point(0.69, 0.1)
    assert point.kind == SPLITTER
    assert w_t < point.omega < w_b
    assert check_operating_point(point)["abs_s11"] ** 2 == pytest.approx(0.5, abs=1e-9)


def test_critical_mu_closed_forms():
    lam = 0.4
    assert critical_mu(T_PLUS, lam) == pytest.approx(2.1)
    assert critical_mu(T_MINUS, lam) == pytest.approx(-0.5 * (lam - 3.0) * (lam + 1.0))
    assert critical_mu(B_PLUS, lam) == pytest.approx(2.8)
    assert critical_mu(B_MINUS, lam) == 2.0
    with pytest.raises(ValidationError):
        critical_mu(ISOLATION, lam)


@pytest.mark.parametrize("kind,branch", [(T_PLUS, "abs_s11"), (T_MINUS, "abs_s33")])
def test_transparency_points_are_transparent(kind, branch):
    point = critical_point(kind, 0.9, 0.025)
    assert point.feasible
    assert check_operating_point(point)[branch] == pytest.approx(1.0, abs=1e-8)


def test_infeasible_points():
    assert not critical_point(B_MINUS, 0.05, 1.0).feasible
    assert not critical_point(T_MINUS, 3.0, 0.1).feasible
    assert not isolation_point(10.0).feasible


def test_isolation_needs_lam_one_third():
    with pytest.raises(ValidationError):
        isolation_point(0.7, lam=0.5)


def test_conversion_reference_root():
    points = conversion_point(0.5, 1.0)
    assert points
    inside = [p for p in points if -2.0 < p.omega < -1.6437]
    assert inside
    point = inside[0]
    assert point.omega == pytest.approx(-1.940, abs=5e-3)
    assert point.epsilon == pytest.approx(np.pi / 4)
    assert conversion_residual(point.omega, 0.5, 1.0) == pytest.approx(0.0, abs=1e-8)
    checks = check_operating_point(point)
    assert checks["abs_s31"] == pytest.approx(0.5, abs=1e-6)
    assert checks["abs_s11"] == pytest.approx(checks["abs_s33"], abs=1e-12)


def _conversion_root():
    point = [p for p in conversion_point(0.5, 1.0) if -2.0 < p.omega < -1.6437][0]
    params = ScatterParams(g=0.5, lam=1.0, epsilon=point.epsilon, a=np.pi / 4, b=np.pi / 2)
    return point, params


def test_conversion_amplitudes_are_exactly_one_half():
    point, params = _conversion_root()
    s = s_matrix(point.omega, params)
    assert abs(s.s11 - 0.5) < 1e-12
    assert abs(s.s33 - 0.5) < 1e-12
    assert abs(abs(s.s31) - 0.5) < 1e-12
    assert abs(abs(s.s13) - 0.5) < 1e-12


def test_conversion_root_is_a_local_maximum():
    point, params = _conversion_root()
    omegas = np.linspace(point.omega - 1e-3, point.omega + 1e-3, 201)
    s31 = np.array([abs(s_matrix(float(w), params).s31) for w in omegas])
    assert abs(int(np.argmax(s31)) - 100) <= 1
    assert s31[0] < s31[100] and s31[-1] < s31[100]


def test_conversion_follows_the_spin_orientation():
    point = critical_point(CONVERSION, 0.5, 1.0, a=np.pi / 3)
    assert point.feasible
    assert point.epsilon == pytest.approx(np.pi / 3)
    assert c_y(np.pi / 3, np.pi / 2, point.epsilon) == pytest.approx(0.0, abs=1e-14)
    checks = check_operating_point(point, a=np.pi / 3)
    for key in ("abs_s11", "abs_s33", "abs_s31"):
        assert checks[key] == pytest.approx(0.5, abs=1e-10)


def test_conversion_root_failing_verification_is_dropped(monkeypatch, caplog):
    exact = s_matrix

    def skewed(omega, params):
        s = exact(omega, params)
        return dataclasses.replace(s, s31=0.9 * s.s31)

    monkeypatch.setattr(criticals, "s_matrix", skewed)
    with caplog.at_level(logging.WARNING, logger="valve.criticals"):
        assert conversion_point(0.5, 1.0) == []
    assert "dropping conversion root" in caplog.text
    assert not critical_point(CONVERSION, 0.5, 1.0).feasible


def test_conversion_without_root_is_infeasible():
    point = critical_point(CONVERSION, 5.0, 0.1)
    assert not point.feasible
    assert point.mu is None


def test_splitter_needs_both_points_in_band():
    with pytest.raises(InfeasiblePointError):
        splitter_point(5.0, 0.1)


def test_feasibility_map_layout():
    g_grid = np.linspace(0.1, 2.0, 5)
    lam_grid = np.linspace(0.1, 1.0, 4)
    df = feasibility_map(T_PLUS, g_grid, lam_grid)
    assert list(df.columns) == ["g", "lam", "kind", "mu", "omega", "feasible"]
    assert len(df) == 20
    assert df["feasible"].dtype == bool
    # weak localization keeps the transparency point in the band
    assert df[df["g"] == df["g"].min()]["feasible"].all()


def test_feasibility_map_worker_pool_keeps_order():
    g_grid = np.linspace(0.2, 1.5, 4)
    lam_grid = [0.025, 0.5]
    serial = feasibility_map(B_PLUS, g_grid, lam_grid)
    pooled = feasibility_map(B_PLUS, g_grid, lam_grid, jobs=2)
    pd.testing.assert_frame_equal(serial, pooled)


def test_isolation_map_is_a_curve():
    df = feasibility_map(ISOLATION, [0.3, 0.7788, 10.0], [0.1, 0.5, 0.9])
    assert len(df) == 3
    assert (df["lam"] == 1.0 / 3.0).all()
    assert df["feasible"].tolist() == [True, True, False]


def test_resolve_kind_aliases():
    assert resolve_kind("T1") == T_PLUS
    assert resolve_kind("B2") == B_MINUS
    with pytest.raises(ValidationError):
        resolve_kind("T3")
