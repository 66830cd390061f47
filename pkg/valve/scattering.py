"""
Closed-form scattering of a weak spinor wave off the localized condensate.

In the condensate spin basis E = (e^{i eps}, 1), E_perp = (e^{i eps}, -1) the
effective on-site potential of the linearized problem is diagonal with
eigenvalues X+Y (aligned) and X-Y (anti-aligned), so each channel transmits
t = i phi~ / (i phi~ + eigenvalue). The eight left-incidence amplitudes are
assembled from the two channel transmissions and the spin geometry factors
C_Y and M; poles of X+Y / X-Y just close the matching channel.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from config import POLE_GUARD
from valve.errors import PoleError, ValidationError
from valve.modes import condensate_energy, phi_of_omega, validate_spin_angles
from valve.utils_core import require_finite, require_positive, require_range, wrap_angle

logger = logging.getLogger(__name__)

POLE_PLUS = "mu=2+2lam"
POLE_MINUS = "mu=2"


@dataclass(frozen=True)
class ScatterParams:
    g: float
    lam: float
    epsilon: float = 0.0
    a: float = np.pi / 4
    b: float = np.pi / 2
    alpha: float = np.pi / 20

    def __post_init__(self) -> None:
        object.__setattr__(self, "g", require_positive("g", self.g))
        object.__setattr__(self, "lam", require_positive("lam", self.lam))
        object.__setattr__(self, "epsilon", wrap_angle(require_finite("epsilon", self.epsilon)))
        object.__setattr__(self, "alpha", require_finite("alpha", self.alpha))
        a, b = validate_spin_angles(self.a, self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def energy(self) -> float:
        return condensate_energy(self.g, self.lam)


def mu_of_omega(omega: float, energy: float, g: float) -> float:
    """mu = sqrt((2 Omega - omega)^2 - 4) / g for a band energy omega."""
    omega = require_range("omega", omega, -2.0, 2.0)
    g = require_positive("g", g)
    if energy >= -2.0:
        raise ValidationError(f"condensate energy must lie below the band, got Omega={energy}")
    nu = 2.0 * energy - omega
    return float(np.sqrt(nu * nu - 4.0) / g)


def omega_of_mu(mu: float, energy: float, g: float) -> float:
    return float(2.0 * energy + np.sqrt(mu * mu * g * g + 4.0))


@dataclass(frozen=True)
class XYIntermediates:
    mu: float
    lam: float
    x: float
    y: float
    x_plus_y: float
    x_minus_y: float
    pole_plus: bool = False
    pole_minus: bool = False


def pole_flags(mu: float, lam: float) -> Tuple[bool, bool]:
    """(at mu = 2+2lam, at mu = 2); the mu = 2 pole is removable when lam = 1."""
    at_plus = abs(mu - 2.0 - 2.0 * lam) < POLE_GUARD
    at_minus = abs(mu - 2.0) < POLE_GUARD and (1.0 - lam) ** 2 > 1e-15
    return at_plus, at_minus


def channel_potentials(mu: float, lam: float) -> Tuple[float, float]:
    """(X+Y, X-Y) in partial-fraction form; +inf at a pole."""
    at_plus, at_minus = pole_flags(mu, lam)
    p = np.inf if at_plus else 2.0 * (1.0 + lam) + (1.0 + lam) ** 2 / (mu - 2.0 - 2.0 * lam)
    if at_minus:
        q = np.inf
    elif (1.0 - lam) ** 2 <= 1e-15:
        q = 2.0
    else:
        q = 2.0 + (1.0 - lam) ** 2 / (mu - 2.0)
    return float(p), float(q)


def xy(mu: float, lam: float) -> XYIntermediates:
    mu = require_positive("mu", mu)
    lam = require_positive("lam", lam)
    at_plus, at_minus = pole_flags(mu, lam)
    if at_plus:
        raise PoleError(POLE_PLUS, mu)
    if at_minus:
        raise PoleError(POLE_MINUS, mu)

    p, q = channel_potentials(mu, lam)
    x, y = 0.5 * (p + q), 0.5 * (p - q)

    den = (mu - 2.0) * (mu - 2.0 - 2.0 * lam)
    if den != 0.0:
        x_raw = (2.0 + lam) + ((lam ** 2 + 1.0) * mu - lam ** 3 - lam - 2.0) / den
        y_raw = lam * (1.0 + (2.0 * mu + lam ** 2 - 2.0 * lam - 3.0) / den)
        dist = min(abs(mu - 2.0), abs(mu - 2.0 - 2.0 * lam), 1.0)
        tol = 1e-10 * max(1.0, abs(x), abs(y)) / dist
        if abs(x_raw - x) > tol or abs(y_raw - y) > tol:
            logger.warning(f"X/Y forms disagree at mu={mu:.12g} lam={lam:.6g}: dX={x_raw - x:.3e} dY={y_raw - y:.3e}")
    return XYIntermediates(mu=mu, lam=lam, x=x, y=y, x_plus_y=p, x_minus_y=q)


def c_y(a: float, b: float, epsilon: float) -> float:
    return float(np.sin(epsilon) * np.cos(a) - np.cos(epsilon) * np.sin(a) * np.sin(b))


def c_eps(a: float, b: float) -> complex:
    return complex(np.cos(a / 2.0) ** 2 + np.exp(2j * b) * np.sin(a / 2.0) ** 2)


def m_factor(a: float, b: float, epsilon: float) -> complex:
    return complex(1j * np.exp(1j * b) * np.sin(a) * np.sin(epsilon) - c_eps(a, b) * np.cos(epsilon))


def reciprocal_epsilon(a: float, b: float, shifted: bool = False) -> float:
    """Principal solution of tan(eps) = tan(a) sin(b), i.e. C_Y = 0; shifted adds pi."""
    theta = float(np.arctan2(np.sin(a) * np.sin(b), np.cos(a)))
    if theta > np.pi / 2:
        theta -= np.pi
    return theta + np.pi if shifted else theta


@dataclass(frozen=True)
class SMatrix:
    omega: float
    phi: float
    phi_tilde: float
    mu: float
    x: float
    y: float
    c_y: float
    c_eps: complex
    m: complex
    t_plus: complex
    t_minus: complex
    s11: complex
    s21: complex
    s31: complex
    s41: complex
    s13: complex
    s23: complex
    s33: complex
    s43: complex
    pole: Optional[str] = None

    def column(self, j: int) -> Dict[str, complex]:
        """Amplitudes S_{j'j} keyed 'S<j'><j>'; right incidence via the isotropy aliases."""
        cols = {
            1: {"S11": self.s11, "S21": self.s21, "S31": self.s31, "S41": self.s41},
            3: {"S13": self.s13, "S23": self.s23, "S33": self.s33, "S43": self.s43},
            2: {"S12": self.s21, "S22": self.s11, "S32": self.s41, "S42": self.s31},
            4: {"S14": self.s23, "S24": self.s13, "S34": self.s43, "S44": self.s33},
        }
        if j not in cols:
            raise ValidationError(f"branch j must be one of 1, 2, 3, 4, got {j!r}")
        return cols[j]

    def full(self) -> np.ndarray:
        """4x4 array S[j'-1, j-1]."""
        out = np.zeros((4, 4), dtype=complex)
        for j in (1, 2, 3, 4):
            for key, value in self.column(j).items():
                out[int(key[1]) - 1, j - 1] = value
        return out


def _channel_transmission(phi_tilde: float, potential: float) -> complex:
    if not np.isfinite(potential) or phi_tilde == 0.0:
        return 0j
    return complex(1j * phi_tilde / (1j * phi_tilde + potential))


def s_matrix(omega: float, params: ScatterParams) -> SMatrix:
    omega = require_range("omega", omega, -2.0, 2.0)
    phi = phi_of_omega(omega)
    phi_tilde = 2.0 * float(np.sin(phi)) / params.g
    if abs(omega) >= 2.0:
        phi_tilde = 0.0
        logger.warning(f"omega={omega} sits on the band edge; amplitudes are the degenerate limit")

    mu = mu_of_omega(omega, params.energy, params.g)
    at_plus, at_minus = pole_flags(mu, params.lam)
    pole = POLE_PLUS if at_plus else (POLE_MINUS if at_minus else None)
    p, q = channel_potentials(mu, params.lam)
    if pole is None:
        x, y = 0.5 * (p + q), 0.5 * (p - q)
    else:
        x = y = float("nan")

    t_p = _channel_transmission(phi_tilde, p)
    t_q = _channel_transmission(phi_tilde, q)
    cy = c_y(params.a, params.b, params.epsilon)
    m = m_factor(params.a, params.b, params.epsilon)

    s11 = 0.5 * (1.0 - cy) * t_p + 0.5 * (1.0 + cy) * t_q
    s33 = 0.5 * (1.0 + cy) * t_p + 0.5 * (1.0 - cy) * t_q
    s31 = 0.5j * m * (t_q - t_p)
    s13 = -0.5j * np.conj(m) * (t_q - t_p)
    return SMatrix(
        omega=omega,
        phi=phi,
        phi_tilde=phi_tilde,
        mu=mu,
        x=x,
        y=y,
        c_y=cy,
        c_eps=c_eps(params.a, params.b),
        m=m,
        t_plus=t_p,
        t_minus=t_q,
        s11=s11,
        s21=s11 - 1.0,
        s31=s31,
        s41=s31,
        s13=s13,
        s23=s13,
        s33=s33,
        s43=s33 - 1.0,
        pole=pole,
    )


def flux_residual(s: SMatrix, column: int = 1) -> float:
    """| sum_j' |S_j'j|^2 - 1 | for the j=1 (default) or j=3 column."""
    if column == 1:
        amps = (s.s11, s.s21, s.s31, s.s41)
    elif column == 3:
        amps = (s.s13, s.s23, s.s33, s.s43)
    else:
        raise ValidationError(f"flux column must be 1 or 3, got {column!r}")
    return float(abs(sum(abs(v) ** 2 for v in amps) - 1.0))


def channel_transmissions(omega: float, params: ScatterParams) -> Tuple[complex, complex]:
    """(t_P, t_Q): transmissions of the condensate-aligned and anti-aligned spin channels."""
    s = s_matrix(omega, params)
    return s.t_plus, s.t_minus


def full_s_matrix(omega: float, params: ScatterParams) -> np.ndarray:
    return s_matrix(omega, params).full()


def transmission_scan(phis: Sequence[float], params: ScatterParams) -> Dict[str, np.ndarray]:
    """
    Vectorised |S11|, |S33|, |S31|, |S13| over a phi grid strictly inside (0, pi).

    Samples landing on a pole take the closed-channel limit.
    """
    phis = np.asarray(phis, dtype=float)
    if np.any((phis <= 0.0) | (phis >= np.pi)):
        raise ValidationError("transmission_scan needs phi strictly inside (0, pi)")
    omega = -2.0 * np.cos(phis)
    nu = 2.0 * params.energy - omega
    mu = np.sqrt(nu * nu - 4.0) / params.g
    lam = params.lam
    phi_tilde = 2.0 * np.sin(phis) / params.g
    near_plus = np.abs(mu - 2.0 - 2.0 * lam) < POLE_GUARD
    near_minus = (np.abs(mu - 2.0) < POLE_GUARD) & ((1.0 - lam) ** 2 > 1e-15)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = 2.0 * (1.0 + lam) + (1.0 + lam) ** 2 / (mu - 2.0 - 2.0 * lam)
        q = 2.0 + (1.0 - lam) ** 2 / (mu - 2.0) if (1.0 - lam) ** 2 > 1e-15 else np.full_like(mu, 2.0)
        t_p = np.where(near_plus, 0j, 1j * phi_tilde / (1j * phi_tilde + p))
        t_q = np.where(near_minus, 0j, 1j * phi_tilde / (1j * phi_tilde + q))
    cy = c_y(params.a, params.b, params.epsilon)
    m = m_factor(params.a, params.b, params.epsilon)
    s11 = 0.5 * (1.0 - cy) * t_p + 0.5 * (1.0 + cy) * t_q
    s33 = 0.5 * (1.0 + cy) * t_p + 0.5 * (1.0 - cy) * t_q
    s31 = 0.5j * m * (t_q - t_p)
    s13 = -0.5j * np.conj(m) * (t_q - t_p)
    return {
        "phi": phis,
        "omega": omega,
        "mu": mu,
        "abs_s11": np.abs(s11),
        "abs_s33": np.abs(s33),
        "abs_s31": np.abs(s31),
        "abs_s13": np.abs(s13),
        "near_pole": near_plus | near_minus,
    }
