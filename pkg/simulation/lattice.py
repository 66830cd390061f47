"""
Lattice state of the spinor Gross-Pitaevskii chain: condensate + incident packet.

The field is stored in a frame rotating at `frame` (psi_lab = e^{-i frame t} chi);
with frame = Omega the stationary condensate is an exact fixed point.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from config import PACKET_AMPLITUDE_LIMIT
from valve.errors import ValidationError
from valve.modes import LocalizedMode, check_branch, phi_of_omega, transmission_mode
from valve.params import SystemParams
from valve.spinor_core import rotation_matrix
from valve.utils_core import require_finite, require_positive, require_range

logger = logging.getLogger(__name__)

LEFT_INCIDENT = (1, 3)


@dataclass(frozen=True)
class WavepacketSpec:
    """Gaussian packet s0 exp[-s_p (n - n0)^2] L_n^(j) on the incident half-line."""

    s0: float
    s_p: float
    n0: int
    j: int = 1
    phi: float = np.pi / 2

    def __post_init__(self) -> None:
        s0 = require_finite("s0", self.s0)
        if s0 < 0.0:
            raise ValidationError(f"s0 must be >= 0, got {s0}")
        object.__setattr__(self, "s0", s0)
        object.__setattr__(self, "s_p", require_positive("s_p", self.s_p))
        object.__setattr__(self, "n0", int(self.n0))
        object.__setattr__(self, "j", check_branch(self.j))
        phi = require_range("phi", self.phi, 0.0, np.pi)
        if phi in (0.0, np.pi):
            raise ValidationError("packet carrier must lie strictly inside the band (0 < phi < pi)")
        object.__setattr__(self, "phi", phi)
        if self.left_incident and self.n0 >= 0:
            raise ValidationError(f"branch {self.j} comes in from the left; n0 must be < 0, got {self.n0}")
        if not self.left_incident and self.n0 <= 0:
            raise ValidationError(f"branch {self.j} comes in from the right; n0 must be > 0, got {self.n0}")

    @classmethod
    def at_energy(cls, omega: float, s0: float, s_p: float, n0: int, j: int = 1) -> "WavepacketSpec":
        return cls(s0=s0, s_p=s_p, n0=n0, j=j, phi=phi_of_omega(omega))

    @property
    def omega(self) -> float:
        return float(-2.0 * np.cos(self.phi))

    @property
    def left_incident(self) -> bool:
        return self.j in LEFT_INCIDENT

    @property
    def width(self) -> float:
        """Spatial standard deviation of |phi_n|^2 in sites."""
        return float(1.0 / (2.0 * np.sqrt(self.s_p)))

    def profile(self, sites: np.ndarray, params: SystemParams) -> np.ndarray:
        sites = np.asarray(sites)
        envelope = self.s0 * np.exp(-self.s_p * (sites - self.n0) ** 2)
        support = sites <= -1 if self.left_incident else sites >= 0
        mode = transmission_mode(self.j, self.phi, params.a, params.b, params.alpha, sites)
        return (envelope * support)[:, None] * mode


@dataclass
class LatticeState:
    sites: np.ndarray
    psi: np.ndarray
    t: float = 0.0
    frame: float = 0.0
    packet_norm: float = 0.0
    mode: Optional[LocalizedMode] = field(default=None, repr=False)

    @property
    def window(self) -> Tuple[int, int]:
        return int(self.sites[0]), int(self.sites[-1])

    @property
    def core_index(self) -> int:
        return int(-self.sites[0])

    def lab_field(self) -> np.ndarray:
        return np.exp(-1j * self.frame * self.t) * self.psi

    def norm(self) -> float:
        return float(np.sum(np.abs(self.psi) ** 2))

    def copy(self) -> "LatticeState":
        return LatticeState(self.sites.copy(), self.psi.copy(), self.t, self.frame, self.packet_norm, self.mode)


def make_sites(window: Tuple[int, int]) -> np.ndarray:
    n_min, n_max = int(window[0]), int(window[1])
    if not n_min < 0 < n_max:
        raise ValidationError(f"window must contain the core site 0 strictly inside, got {window}")
    return np.arange(n_min, n_max + 1)


def gpe_rhs(psi: np.ndarray, core: int, params: SystemParams, frame: float = 0.0) -> np.ndarray:
    """
    d chi/dt = i[R chi_{n-1} + R^+ chi_{n+1} + delta_{n0} gamma(|chi_s|^2 + lam|chi_-s|^2) chi_s + frame chi].

    Hard walls: sites beyond the window are zero.
    """
    r = rotation_matrix(params.alpha, 1)
    out = frame * psi
    out[1:] += psi[:-1] @ r.T
    out[:-1] += psi[1:] @ r.conj()
    if params.gamma > 0.0:
        dens = np.abs(psi[core]) ** 2
        out[core] += params.gamma * (dens + params.lam * dens[::-1]) * psi[core]
    return 1j * out


def total_energy(state: LatticeState, params: SystemParams) -> float:
    """H = -sum_n 2 Re(psi_n^+ R psi_{n-1}) - gamma/2 (|u0|^4 + |d0|^4 + 2 lam |u0|^2 |d0|^2)."""
    psi = state.psi
    r = rotation_matrix(params.alpha, 1)
    hop = -2.0 * np.sum(np.real(np.conj(psi[1:]) * (psi[:-1] @ r.T)))
    dens = np.abs(psi[state.core_index]) ** 2
    contact = -0.5 * params.gamma * (dens[0] ** 2 + dens[1] ** 2 + 2.0 * params.lam * dens[0] * dens[1])
    return float(hop + contact)


def init_state(
    params: SystemParams,
    packet: Optional[WavepacketSpec],
    window: Tuple[int, int],
    rotating: bool = True,
) -> LatticeState:
    """psi_n(0) = d_n + packet; gamma = 0 gives the free lattice (no condensate)."""
    sites = make_sites(window)
    psi = np.zeros((sites.size, 2), dtype=complex)
    mode = None
    frame = 0.0
    if params.gamma > 0.0:
        mode = params.mode()
        psi += mode.d(sites)
        frame = mode.energy if rotating else 0.0

    packet_norm = 0.0
    if packet is not None:
        if not sites[0] < packet.n0 < sites[-1]:
            raise ValidationError(f"packet centre n0={packet.n0} lies outside the window {window}")
        if params.gamma > 0.0 and packet.s0 / np.sqrt(params.g / params.gamma) > PACKET_AMPLITUDE_LIMIT:
            raise ValidationError(
                f"s0={packet.s0} is not small against the condensate amplitude sqrt(g/gamma)="
                f"{np.sqrt(params.g / params.gamma):.4g} (limit ratio {PACKET_AMPLITUDE_LIMIT})"
            )
        tail = packet.s0 * np.exp(-packet.s_p * packet.n0 ** 2)
        if packet.s0 > 0.0 and tail > 1e-3 * packet.s0:
            logger.warning(f"packet tail at the core is {tail / packet.s0:.3g} of s0; start further out or narrow the packet")
        phi_0 = packet.profile(sites, params)
        packet_norm = float(np.sum(np.abs(phi_0) ** 2))
        psi += phi_0
    return LatticeState(sites=sites, psi=psi, t=0.0, frame=frame, packet_norm=packet_norm, mode=mode)
