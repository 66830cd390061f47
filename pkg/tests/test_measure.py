import numpy as np
import pytest
from scipy.integrate import trapezoid

from simulation.lattice import WavepacketSpec, init_state
from simulation.measure import (
    CHANNELS,
    condensate_fidelity,
    measure_populations,
    packet_averaged_prediction,
    packet_spectrum,
)
from simulation.planning import default_n_cut, plan_run
from simulation.runner import operating_params
from valve.criticals import B_MINUS, CONVERSION, T_PLUS
from valve.errors import InfeasiblePointError
from valve.params import SystemParams
from valve.scattering import c_y, s_matrix


@pytest.fixture
def transparency():
    params, omega = operating_params(T_PLUS, 0.9, 0.025, 0.002, np.pi / 4, np.pi / 20)
    s0 = 0.01 * np.sqrt(params.g / params.gamma)
    packet = WavepacketSpec.at_energy(omega, s0=s0, s_p=5e-4, n0=-200)
    return params, packet


def test_spectrum_is_normalised(transparency):
    _, packet = transparency
    spectrum = packet_spectrum(packet)
    assert trapezoid(spectrum["weight"], spectrum["phi"]) == pytest.approx(1.0)
    assert spectrum["phi"].min() > 0.0
    np.testing.assert_allclose(spectrum["omega"], -2.0 * np.cos(spectrum["phi"]))


def test_prediction_sums_to_one(transparency):
    params, packet = transparency
    prediction = packet_averaged_prediction(params, packet)
    assert sum(prediction[k] for k in CHANNELS) == pytest.approx(1.0, abs=1e-6)
    assert prediction["T_plus_centre"] == pytest.approx(1.0, abs=1e-8)


def test_narrow_packet_keeps_transparency(transparency):
    params, packet = transparency
    assert packet_averaged_prediction(params, packet)["T_plus"] >= 0.95


def test_default_core_cutoff(transparency):
    params, packet = transparency
    assert default_n_cut(params, packet.s0) == 26
    assert default_n_cut(params.with_(gamma=0.0), packet.s0) == 0


def test_plan_covers_the_run(transparency):
    params, packet = transparency
    plan = plan_run(params, packet)
    n_min, n_max = plan.window
    assert n_min < packet.n0 < 0 < n_max
    assert n_max >= 400
    # the packet centre must clear the core region before the run ends
    assert plan.t_final * 2.0 * np.sin(packet.phi) > abs(packet.n0) + plan.n_cut
    fixed = plan_run(params, packet, window=(-500, 500), t_final=100.0, n_cut=5)
    assert (fixed.window, fixed.t_final, fixed.n_cut) == ((-500, 500), 100.0, 5)


def test_initial_populations_are_all_incident(transparency):
    params, packet = transparency
    state = init_state(params, packet, (-600, 600))
    split = measure_populations(state, params, n_cut=26, j=1)
    assert split.R_plus == pytest.approx(1.0, abs=1e-6)
    assert split.T_plus < 1e-12
    assert split.R_minus < 1e-12
    assert split.core < 1e-6
    assert split.fidelity == pytest.approx(1.0, abs=1e-12)
    assert split.total == pytest.approx(1.0, abs=1e-5)


def test_fidelity_on_free_lattice():
    params = SystemParams(g=0.9, lam=0.025, gamma=0.0)
    state = init_state(params, WavepacketSpec(s0=1.0, s_p=0.01, n0=-50), (-100, 100))
    assert condensate_fidelity(state, 10) == 1.0


def test_out_of_band_point_cannot_be_simulated():
    with pytest.raises(InfeasiblePointError):
        operating_params(B_MINUS, 0.05, 1.0, 0.002, np.pi / 4, np.pi / 20)


def test_conversion_run_uses_the_configured_spin_orientation():
    a = np.pi / 3
    params, omega = operating_params(CONVERSION, 0.5, 1.0, 0.002, a, np.pi / 20)
    assert params.a == pytest.approx(a)
    assert c_y(params.a, params.b, params.epsilon) == pytest.approx(0.0, abs=1e-14)
    s = s_matrix(omega, params.scatter())
    for amplitude in (s.s11, s.s33, s.s31):
        assert abs(amplitude) == pytest.approx(0.5, abs=1e-10)
