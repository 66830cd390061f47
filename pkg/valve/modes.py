"""
Free transmission modes of the spin-orbit lattice and the strong localized condensate.

Branch table for the transmission states (n is the site index):
    j=1: e^{+in phi} R^n l_+   (right moving)
    j=2: e^{-in phi} R^n l_+   (left moving)
    j=3: e^{+in phi} R^n l_-   (right moving)
    j=4: e^{-in phi} R^n l_-   (left moving)
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from config import LOG_DOMAIN_SITES, WEAK_INTERACTION_LIMIT
from valve.errors import ValidationError
from valve.spinor_core import (
    IntLike,
    Spinor,
    SpinVector,
    rotate_spinors,
    rotation_matrix,
)
from valve.utils_core import require_finite, require_positive, require_range, wrap_angle

logger = logging.getLogger(__name__)

U_PLUS = np.array([1.0, 1.0j], dtype=complex)
U_MINUS = np.array([1.0, -1.0j], dtype=complex)

# j -> (direction of e^{i dir n phi}, spin sign of l_+/l_-)
BRANCHES: Dict[int, Tuple[int, int]] = {
    1: (+1, +1),
    2: (-1, +1),
    3: (+1, -1),
    4: (-1, -1),
}


def check_branch(j: int) -> int:
    if j not in BRANCHES:
        raise ValidationError(f"branch j must be one of 1, 2, 3, 4, got {j!r}")
    return int(j)


def validate_spin_angles(a: float, b: float) -> Tuple[float, float]:
    return require_range("a", a, 0.0, np.pi), require_range("b", b, 0.0, np.pi)


def spin_basis(a: float, b: float) -> Tuple[Spinor, Spinor]:
    """Orthogonal pair l_+, l_- built on the sigma_y eigenstates u_+ and u_-; each has norm^2 = 2."""
    a, b = validate_spin_angles(a, b)
    c, s = np.cos(a / 2.0), np.sin(a / 2.0)
    l_plus = c * U_PLUS + np.exp(1j * b) * s * U_MINUS
    l_minus = -np.exp(-1j * b) * s * U_PLUS + c * U_MINUS
    return l_plus, l_minus


def omega_of_phi(phi):
    return -2.0 * np.cos(phi)


def phi_of_omega(omega: float) -> float:
    """Principal quasimomentum in [0, pi] for a band energy."""
    omega = require_range("omega", omega, -2.0, 2.0)
    return float(np.arccos(-omega / 2.0))


def group_velocity(j: int, phi: float) -> float:
    direction, _ = BRANCHES[check_branch(j)]
    return direction * 2.0 * float(np.sin(phi))


def transmission_mode(j: int, phi: float, a: float, b: float, alpha: float, n: IntLike) -> Spinor:
    """Site amplitude of branch j; n may be an integer or an integer array."""
    direction, sign = BRANCHES[check_branch(j)]
    phi = require_range("phi", phi, 0.0, np.pi)
    l_plus, l_minus = spin_basis(a, b)
    spin = l_plus if sign > 0 else l_minus
    n_arr = np.asarray(n)
    phase = np.exp(1j * direction * n_arr * phi)
    out = rotate_spinors(alpha, n_arr, np.broadcast_to(spin, n_arr.shape + (2,)))
    return np.asarray(phase)[..., None] * out


@dataclass(frozen=True)
class TransmissionMode:
    j: int
    phi: float
    a: float
    b: float
    alpha: float

    @property
    def omega(self) -> float:
        return float(omega_of_phi(self.phi))

    @property
    def velocity(self) -> float:
        return group_velocity(self.j, self.phi)

    def at(self, n: IntLike) -> Spinor:
        return transmission_mode(self.j, self.phi, self.a, self.b, self.alpha, n)


def transmission_spin_texture(sign: int, n: IntLike, a: float, b: float, alpha: float) -> SpinVector:
    """s_{+-,n} = +-2 [sin a sin(b+2n alpha), cos a, sin a cos(b+2n alpha)]."""
    if sign not in (1, -1):
        raise ValidationError(f"texture sign must be +1 or -1, got {sign!r}")
    a, b = validate_spin_angles(a, b)
    turn = b + 2.0 * np.asarray(n, dtype=float) * alpha
    s = np.stack(
        [np.sin(a) * np.sin(turn), np.full_like(turn, np.cos(a)), np.sin(a) * np.cos(turn)],
        axis=-1,
    )
    return 2.0 * sign * s


@dataclass(frozen=True)
class LocalizedMode:
    """
    Stationary condensate d_n = sqrt(g/gamma) kappa^{|n|} R^n (e^{i eps}, 1)^T.

    energy is the eigenenergy Omega (< -2), kappa the decay factor in (0, 1).
    """

    g: float
    lam: float
    gamma: float
    epsilon: float
    alpha: float
    energy: float
    kappa: float

    @property
    def amplitude(self) -> float:
        return float(np.sqrt(self.g / self.gamma))

    @property
    def atom_number(self) -> float:
        return -2.0 * self.energy / ((1.0 + self.lam) * self.gamma)

    @property
    def core_spinor(self) -> Spinor:
        return np.array([np.exp(1j * self.epsilon), 1.0], dtype=complex)

    def decay(self, n: IntLike) -> np.ndarray:
        abs_n = np.abs(np.asarray(n, dtype=float))
        return np.where(
            abs_n > LOG_DOMAIN_SITES,
            np.exp(abs_n * np.log(self.kappa)),
            self.kappa ** abs_n,
        )

    def d(self, n: IntLike) -> Spinor:
        n_arr = np.asarray(n)
        base = np.broadcast_to(self.core_spinor, n_arr.shape + (2,))
        out = rotate_spinors(self.alpha, n_arr, base)
        return np.asarray(self.amplitude * self.decay(n_arr))[..., None] * out

    def texture(self, n: IntLike) -> SpinVector:
        return localized_spin_texture(n, self)


def condensate_energy(g: float, lam: float) -> float:
    return float(-np.sqrt((1.0 + lam) ** 2 * g ** 2 + 4.0))


def decay_factor(energy: float) -> float:
    """Root of kappa + 1/kappa = -Omega inside (0, 1)."""
    return float((-energy - np.sqrt(energy ** 2 - 4.0)) / 2.0)


def localized_mode(g: float, lam: float, gamma: float, epsilon: float, alpha: float) -> LocalizedMode:
    g = require_positive("g", g)
    lam = require_positive("lam", lam)
    gamma = require_positive("gamma", gamma)
    alpha = require_finite("alpha", alpha)
    epsilon = wrap_angle(require_finite("epsilon", epsilon))
    if gamma * (1.0 + lam) >= WEAK_INTERACTION_LIMIT:
        logger.warning(f"gamma*(1+lam)={gamma * (1.0 + lam):.3g} is not small; the weak-interaction picture may not hold")
    energy = condensate_energy(g, lam)
    return LocalizedMode(g, lam, gamma, epsilon, alpha, energy, decay_factor(energy))


def localized_mode_from_omega(
    energy: float, g: float, gamma: float, epsilon: float, alpha: float
) -> LocalizedMode:
    """
    Texture-only constructor taking Omega and g independently.

    lam is back-filled from sqrt(Omega^2 - 4)/g - 1 and may be <= 0; the
    returned mode is not a stationary state unless Omega = Omega(g, lam).
    """
    energy = require_finite("Omega", energy)
    if energy >= -2.0:
        raise ValidationError(f"Omega must lie below the band (< -2), got {energy}")
    g = require_positive("g", g)
    gamma = require_positive("gamma", gamma)
    lam = float(np.sqrt(energy ** 2 - 4.0) / g - 1.0)
    return LocalizedMode(
        g, lam, gamma, wrap_angle(epsilon), require_finite("alpha", alpha), energy, decay_factor(energy)
    )


def localized_spin_texture(n: IntLike, mode: LocalizedMode) -> SpinVector:
    """s_{eps,n} = 2 (g/gamma) kappa^{2|n|} [cos eps cos 2n alpha, -sin eps, -cos eps sin 2n alpha]."""
    n_arr = np.asarray(n, dtype=float)
    turn = 2.0 * n_arr * mode.alpha
    scale = 2.0 * (mode.g / mode.gamma) * mode.decay(n_arr) ** 2
    ce, se = np.cos(mode.epsilon), np.sin(mode.epsilon)
    s = np.stack([ce * np.cos(turn), np.full_like(turn, -se), -ce * np.sin(turn)], axis=-1)
    return np.asarray(scale)[..., None] * s


def stationarity_residual(mode: LocalizedMode, n: int) -> float:
    """Norm of Omega d_n + R d_{n-1} + R^+ d_{n+1} + delta_{n0} gamma (...) d_0."""
    r = rotation_matrix(mode.alpha, 1)
    d_prev, d_here, d_next = mode.d(n - 1), mode.d(n), mode.d(n + 1)
    res = mode.energy * d_here + r @ d_prev + r.conj().T @ d_next
    if n == 0:
        dens = np.abs(d_here) ** 2
        res = res + mode.gamma * (dens + mode.lam * dens[::-1]) * d_here
    return float(np.linalg.norm(res))
