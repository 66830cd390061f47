"""
Operating points of the spin valve: transparency, blockade, isolation,
maximal conversion and the beam-splitting point, plus (g, lam) feasibility maps.

Operating points are named by their defining equations:
    T_plus  : X + Y = 0          mu = 3/2 (lam + 1)
    T_minus : X - Y = 0          mu = -1/2 (lam - 3)(lam + 1)
    B_plus  : pole of X + Y      mu = 2 lam + 2
    B_minus : pole of X - Y      mu = 2
Under the C_Y = -1 convention (b = pi/2, eps = a - pi/2) branch 1 sees the
X+Y channel only and branch 3 the X-Y channel only.
"""
from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.optimize import bisect

from config import CONVERSION_CHECK_TOL, ROOT_XTOL
from valve.errors import InfeasiblePointError, ValidationError
from valve.modes import condensate_energy
from valve.scattering import (
    ScatterParams,
    channel_potentials,
    mu_of_omega,
    omega_of_mu,
    reciprocal_epsilon,
    s_matrix,
)
from valve.utils_core import parallel_map, require_positive, require_range

logger = logging.getLogger(__name__)

T_PLUS = "T_plus"
T_MINUS = "T_minus"
B_PLUS = "B_plus"
B_MINUS = "B_minus"
ISOLATION = "isolation"
CONVERSION = "conversion"
SPLITTER = "splitter"

MU_KINDS = (T_PLUS, T_MINUS, B_PLUS, B_MINUS)
MAP_KINDS = MU_KINDS + (ISOLATION, CONVERSION)

# Labels used in the main-text discussion of the operating points
MAIN_TEXT_LABELS: Dict[str, str] = {
    "T1": T_PLUS,
    "B1": B_PLUS,
    "T2": T_MINUS,
    "B2": B_MINUS,
}

ISOLATION_LAMBDA = 1.0 / 3.0

# kind -> (branch it acts on under C_Y = -1, expected |S_jj|)
OPERATING_BRANCH: Dict[str, Tuple[int, float]] = {
    T_PLUS: (1, 1.0),
    T_MINUS: (3, 1.0),
    B_PLUS: (1, 0.0),
    B_MINUS: (3, 0.0),
}

SPIN_REQUIREMENT: Dict[str, str] = {
    T_PLUS: "C_Y=-1 (b=pi/2, eps=a-pi/2): branch 1 transparent",
    T_MINUS: "C_Y=-1 (b=pi/2, eps=a-pi/2): branch 3 transparent",
    B_PLUS: "C_Y=-1 (b=pi/2, eps=a-pi/2): branch 1 blocked",
    B_MINUS: "C_Y=-1 (b=pi/2, eps=a-pi/2): branch 3 blocked",
    ISOLATION: "C_Y=-1 (b=pi/2, eps=a-pi/2): branch 1 transmitted, branch 3 reflected",
    CONVERSION: "tan(eps)=tan(a)sin(b), C_Y=0",
    SPLITTER: "C_Y=-1 (b=pi/2, eps=a-pi/2): branch 1 split",
}


@dataclass(frozen=True)
class CriticalPoint:
    kind: str
    g: float
    lam: float
    mu: Optional[float]
    omega: float
    feasible: bool
    requirement: str
    epsilon: Optional[float] = None

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


def resolve_kind(kind: str) -> str:
    kind = MAIN_TEXT_LABELS.get(kind, kind)
    if kind not in MAP_KINDS + (SPLITTER,):
        raise ValidationError(f"unknown operating point {kind!r}; expected one of {', '.join(MAP_KINDS)}")
    return kind


def operating_epsilon(a: float, aligned: bool = True) -> float:
    """eps = a - pi/2 (C_Y = -1 with b = pi/2) or a + pi/2 (C_Y = +1)."""
    return a - np.pi / 2 if aligned else a + np.pi / 2


def critical_mu(kind: str, lam: float) -> float:
    kind = resolve_kind(kind)
    lam = require_positive("lam", lam)
    if kind == T_PLUS:
        return 1.5 * (lam + 1.0)
    if kind == T_MINUS:
        return -0.5 * (lam - 3.0) * (lam + 1.0)
    if kind == B_PLUS:
        return 2.0 * lam + 2.0
    if kind == B_MINUS:
        return 2.0
    raise ValidationError(f"{kind} has no closed-form mu; use isolation_point / conversion_point")


def mu_to_omega(mu: float, g: float, lam: float) -> Tuple[float, bool]:
    g = require_positive("g", g)
    lam = require_positive("lam", lam)
    omega = omega_of_mu(mu, condensate_energy(g, lam), g)
    feasible = bool(mu > 0.0 and -2.0 <= omega <= 2.0)
    return omega, feasible


def critical_point(kind: str, g: float, lam: float, a: float = np.pi / 4) -> CriticalPoint:
    """Operating point of `kind`; `a` fixes the spin orientation for conversion and splitting."""
    kind = resolve_kind(kind)
    if kind == ISOLATION:
        return isolation_point(g)
    if kind == CONVERSION:
        roots = conversion_point(g, lam, a, np.pi / 2)
        if roots:
            return roots[0]
        return CriticalPoint(CONVERSION, g, lam, None, float("nan"), False, SPIN_REQUIREMENT[CONVERSION])
    if kind == SPLITTER:
        return splitter_point(g, lam, a=a)
    mu = critical_mu(kind, lam)
    omega, feasible = mu_to_omega(mu, g, lam)
    return CriticalPoint(kind, g, lam, mu, omega, feasible, SPIN_REQUIREMENT[kind])


def isolation_point(g: float, lam: float = ISOLATION_LAMBDA) -> CriticalPoint:
    """T_plus meets B_minus: lam = 1/3, mu = 2."""
    g = require_positive("g", g)
    if abs(lam - ISOLATION_LAMBDA) > 1e-12:
        # T_minus meets B_plus only at lam = -1 (attractive interspecies sign), which is not modelled.
        raise ValidationError(f"perfect isolation is only supported at lam=1/3, got lam={lam}")
    omega, feasible = mu_to_omega(2.0, g, ISOLATION_LAMBDA)
    if not feasible:
        logger.info(f"isolation point for g={g:.6g} lies outside the band (omega={omega:.6g})")
    return CriticalPoint(ISOLATION, g, ISOLATION_LAMBDA, 2.0, omega, feasible, SPIN_REQUIREMENT[ISOLATION])


def conversion_residual(omega: float, g: float, lam: float) -> float:
    """F(omega) = 4 - omega^2 - g^2 (Y^2 - X^2), written as g^2 (phi~^2 + (X+Y)(X-Y))."""
    mu = mu_of_omega(omega, condensate_energy(g, lam), g)
    p, q = channel_potentials(mu, lam)
    return float(4.0 - omega * omega + g * g * p * q)


def _residual_grid(omegas: np.ndarray, g: float, lam: float) -> np.ndarray:
    """Vectorised conversion_residual on a pole-free grid."""
    nu = 2.0 * condensate_energy(g, lam) - omegas
    mu = np.sqrt(nu * nu - 4.0) / g
    p = 2.0 * (1.0 + lam) + (1.0 + lam) ** 2 / (mu - 2.0 - 2.0 * lam)
    q = 2.0 + (1.0 - lam) ** 2 / (mu - 2.0) if (1.0 - lam) ** 2 > 1e-15 else np.full_like(mu, 2.0)
    return 4.0 - omegas * omegas + g * g * p * q


def _pole_energies(g: float, lam: float) -> List[float]:
    energy = condensate_energy(g, lam)
    poles = [omega_of_mu(2.0 + 2.0 * lam, energy, g)]
    if (1.0 - lam) ** 2 > 1e-15:
        poles.append(omega_of_mu(2.0, energy, g))
    return sorted(w for w in poles if -2.0 < w < 2.0)


def conversion_point(
    g: float,
    lam: float,
    a: float = np.pi / 4,
    b: float = np.pi / 2,
    samples: int = 2000,
) -> List[CriticalPoint]:
    """All band energies with 4 - omega^2 = g^2 (Y^2 - X^2), each verified to give |S31| = 1/2."""
    g = require_positive("g", g)
    lam = require_positive("lam", lam)
    eps_star = reciprocal_epsilon(a, b)
    params = ScatterParams(g=g, lam=lam, epsilon=eps_star, a=a, b=b)

    edges = [-2.0] + _pole_energies(g, lam) + [2.0]
    roots: List[float] = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        pad = 1e-9 * max(1.0, hi - lo)
        grid = np.linspace(lo + pad, hi - pad, samples)
        vals = _residual_grid(grid, g, lam)
        for i in np.flatnonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0):
            roots.append(bisect(conversion_residual, grid[i], grid[i + 1], args=(g, lam), xtol=ROOT_XTOL))
        roots.extend(float(grid[i]) for i in np.flatnonzero(vals == 0.0))

    if not roots:
        logger.info(f"no conversion root for g={g:.6g} lam={lam:.6g} (Y^2 <= X^2 throughout the band)")
        return []

    points = []
    for w in sorted(roots):
        s = s_matrix(w, params)
        if abs(abs(s.s31) - 0.5) > CONVERSION_CHECK_TOL:
            logger.warning(f"dropping conversion root omega={w:.12g}: |S31|={abs(s.s31):.12g} is not 1/2")
            continue
        points.append(
            CriticalPoint(CONVERSION, g, lam, s.mu, w, True, SPIN_REQUIREMENT[CONVERSION], epsilon=eps_star)
        )
    return points


def splitter_point(
    g: float,
    lam: float,
    transmittance: float = 0.5,
    a: float = np.pi / 4,
) -> CriticalPoint:
    """Energy between the T_plus and B_plus points where branch 1 transmits the requested fraction."""
    transmittance = require_range("transmittance", transmittance, 0.0, 1.0)
    w_t, ok_t = mu_to_omega(critical_mu(T_PLUS, lam), g, lam)
    w_b, ok_b = mu_to_omega(critical_mu(B_PLUS, lam), g, lam)
    if not (ok_t and ok_b):
        raise InfeasiblePointError(
            f"beam splitting needs both T_plus and B_plus inside the band (g={g}, lam={lam}: "
            f"omega_T={w_t:.6g}, omega_B={w_b:.6g})"
        )
    eps = operating_epsilon(a)
    params = ScatterParams(g=g, lam=lam, epsilon=eps, a=a, b=np.pi / 2)

    def excess(w: float) -> float:
        return abs(s_matrix(w, params).s11) ** 2 - transmittance

    lo, hi = sorted((w_t, w_b))
    if excess(lo) * excess(hi) > 0:
        raise InfeasiblePointError(f"|S11|^2={transmittance} is not bracketed between T_plus and B_plus")
    w = bisect(excess, lo, hi, xtol=ROOT_XTOL)
    mu = mu_of_omega(w, condensate_energy(g, lam), g)
    return CriticalPoint(SPLITTER, g, lam, mu, w, True, SPIN_REQUIREMENT[SPLITTER], epsilon=eps)


def _map_row(task: Tuple[str, float, Tuple[float, ...]]) -> List[Dict[str, object]]:
    kind, g, lams = task
    rows = []
    for lam in lams:
        point = critical_point(kind, g, lam)
        rows.append(
            {
                "g": g,
                "lam": point.lam,
                "kind": kind,
                "mu": point.mu if point.mu is not None else float("nan"),
                "omega": point.omega,
                "feasible": point.feasible,
            }
        )
    return rows


def feasibility_map(
    kind: str,
    g_grid: Sequence[float],
    lam_grid: Sequence[float],
    jobs: int = 1,
) -> pd.DataFrame:
    """Long-form table (g, lam, kind, mu, omega, feasible); the isolation map is a curve in g."""
    kind = resolve_kind(kind)
    lams = (ISOLATION_LAMBDA,) if kind == ISOLATION else tuple(float(v) for v in lam_grid)
    tasks = [(kind, float(g), lams) for g in g_grid]
    rows = [row for chunk in parallel_map(_map_row, tasks, jobs) for row in chunk]
    return pd.DataFrame(rows, columns=["g", "lam", "kind", "mu", "omega", "feasible"])


def check_operating_point(point: CriticalPoint, a: float = np.pi / 4, b: float = np.pi / 2) -> Dict[str, float]:
    """Amplitude moduli at a point under its spin requirement (b only matters for conversion)."""
    if point.kind == CONVERSION:
        params = ScatterParams(g=point.g, lam=point.lam, epsilon=point.epsilon or 0.0, a=a, b=b)
    else:
        params = ScatterParams(g=point.g, lam=point.lam, epsilon=operating_epsilon(a), a=a, b=np.pi / 2)
    s = s_matrix(point.omega, params)
    return {"abs_s11": abs(s.s11), "abs_s33": abs(s.s33), "abs_s31": abs(s.s31), "abs_s13": abs(s.s13)}

