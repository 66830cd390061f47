import numpy as np
import pytest

from simulation.lattice import WavepacketSpec, gpe_rhs, init_state, make_sites, total_energy
from valve.errors import ValidationError
from valve.params import SystemParams


@pytest.fixture
def system():
    return SystemParams(g=0.9, lam=0.025, gamma=0.002, epsilon=np.pi / 4)


def test_condensate_is_fixed_point_in_rotating_frame(system):
    state = init_state(system, None, (-100, 100))
    rhs = gpe_rhs(state.psi, state.core_index, system, state.frame)
    assert np.max(np.abs(rhs)) < 1e-9 * np.max(np.abs(state.psi))


def test_condensate_rotates_at_omega_in_lab_frame(system):
    state = init_state(system, None, (-100, 100), rotating=False)
    assert state.frame == 0.0
    rhs = gpe_rhs(state.psi, state.core_index, system, 0.0)
    expected = -1j * system.energy * state.psi
    np.testing.assert_allclose(rhs, expected, atol=1e-9 * np.max(np.abs(state.psi)))


def test_atom_number_of_initial_condensate(system):
    state = init_state(system, None, (-200, 200))
    assert state.norm() == pytest.approx(system.atom_number, rel=1e-10)
    assert state.packet_norm == 0.0


def test_packet_norm_matches_gaussian_sum():
    params = SystemParams(g=0.9, lam=0.025, gamma=0.0)
    packet = WavepacketSpec(s0=0.3, s_p=0.01, n0=-100)
    state = init_state(params, packet, (-300, 300))
    expected = 2.0 * 0.3 ** 2 * np.sqrt(np.pi / (2.0 * 0.01))
    assert state.packet_norm == pytest.approx(expected, rel=1e-6)
    assert state.norm() == pytest.approx(state.packet_norm)
    assert state.mode is None


def test_right_incident_packet_lives_on_right_half():
    params = SystemParams(g=0.9, lam=0.025, gamma=0.0)
    packet = WavepacketSpec(s0=1.0, s_p=0.01, n0=50, j=2)
    state = init_state(params, packet, (-100, 100))
    dens = np.sum(np.abs(state.psi) ** 2, axis=1)
    assert np.all(dens[state.sites < 0] == 0.0)
    assert dens[state.sites == 50][0] == pytest.approx(2.0)


def test_free_spin_up_stays_up_without_soc():
    params = SystemParams(g=0.9, lam=0.025, gamma=0.0, alpha=0.0)
    sites = make_sites((-5, 5))
    psi = np.zeros((sites.size, 2), dtype=complex)
    psi[:, 0] = np.exp(1j * 0.4 * sites)
    rhs = gpe_rhs(psi, 5, params)
    assert np.all(rhs[:, 1] == 0.0)


def test_zero_amplitude_packet():
    params = SystemParams(g=0.9, lam=0.025, gamma=0.002)
    state = init_state(params, WavepacketSpec(s0=0.0, s_p=0.01, n0=-50), (-100, 100))
    assert state.packet_norm == 0.0


def test_packet_must_be_weak(system):
    with pytest.raises(ValidationError):
        init_state(system, WavepacketSpec(s0=2.0, s_p=0.01, n0=-50), (-100, 100))


def test_packet_must_start_inside_window(system):
    with pytest.raises(ValidationError):
        init_state(system, WavepacketSpec(s0=0.1, s_p=0.01, n0=-150), (-100, 100))


def test_packet_overlapping_core_warns(system, caplog):
    with caplog.at_level("WARNING"):
        init_state(system, WavepacketSpec(s0=0.1, s_p=0.01, n0=-5), (-100, 100))
    assert "packet tail" in caplog.text


@pytest.mark.parametrize(
    "kwargs",
    [
        {"s0": 0.1, "s_p": 0.01, "n0": 20, "j": 1},
        {"s0": 0.1, "s_p": 0.01, "n0": -20, "j": 4},
        {"s0": 0.1, "s_p": 0.01, "n0": -20, "phi": 0.0},
        {"s0": -0.1, "s_p": 0.01, "n0": -20},
        {"s0": 0.1, "s_p": 0.0, "n0": -20},
    ],
)
def test_wavepacket_validation(kwargs):
    with pytest.raises(ValidationError):
        WavepacketSpec(**kwargs)


def test_window_must_contain_core():
    with pytest.raises(ValidationError):
        make_sites((1, 100))


def test_wavepacket_at_energy():
    packet = WavepacketSpec.at_energy(0.0, s0=0.1, s_p=0.01, n0=-50)
    assert packet.phi == pytest.approx(np.pi / 2)
    assert packet.omega == pytest.approx(0.0, abs=1e-15)
    assert packet.width == pytest.approx(5.0)


def test_energy_is_real_and_negative_for_condensate(system):
    state = init_state(system, None, (-100, 100))
    energy = total_energy(state, system)
    assert np.isfinite(energy)
    assert energy < 0.0
