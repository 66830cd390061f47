"""
Run planning: window, duration and core cut-off from the packet kinematics.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from config import CONDENSATE_TAIL_FLOOR
from simulation.lattice import WavepacketSpec
from valve.params import SystemParams

logger = logging.getLogger(__name__)

# fastest group velocity on the lattice
MAX_VELOCITY = 2.0


@dataclass(frozen=True)
class RunPlan:
    window: Tuple[int, int]
    t_final: float
    n_cut: int


def default_n_cut(params: SystemParams, s0: float) -> int:
    """Smallest n with (g/gamma) kappa^{2n} < floor * s0^2."""
    if params.gamma <= 0.0 or s0 <= 0.0:
        return 0
    ratio = CONDENSATE_TAIL_FLOOR * s0 * s0 * params.gamma / params.g
    if ratio >= 1.0:
        return 0
    return int(math.ceil(math.log(ratio) / (2.0 * math.log(params.kappa))))


def plan_run(
    params: SystemParams,
    packet: WavepacketSpec,
    window: Optional[Tuple[int, int]] = None,
    t_final: Optional[float] = None,
    n_cut: Optional[int] = None,
    min_half_width: int = 400,
) -> RunPlan:
    """
    Duration: the slow edge of the packet (phi0 - 2 sigma_k) must clear the
    core region by 15 %. Window: wide enough for the fast edge of the packet
    and for weak radiation leaving the core at the maximal lattice velocity.
    """
    if n_cut is None:
        n_cut = default_n_cut(params, packet.s0)
    sigma_k = math.sqrt(packet.s_p)
    sigma_x = packet.width
    start = abs(packet.n0)
    phi0 = packet.phi

    if t_final is None:
        v_slow = 2.0 * min(
            math.sin(max(phi0 - 2.0 * sigma_k, phi0 / 2.0)),
            math.sin(min(phi0 + 2.0 * sigma_k, (np.pi + phi0) / 2.0)),
        )
        t_final = 1.15 * (start + n_cut + 4.0 * sigma_x) / v_slow + 50.0

    if window is None:
        v_fast = 2.0 * math.sin(min(phi0 + 5.0 * sigma_k, np.pi / 2.0))
        t_arrive = max((start - 4.0 * sigma_x) / v_fast, 0.0)
        half = max(
            float(min_half_width),
            start + 6.0 * sigma_x + 20.0,
            v_fast * t_final - start + 6.0 * sigma_x + 20.0,
            MAX_VELOCITY * (t_final - t_arrive) + 20.0,
        )
        half_width = int(math.ceil(half))
        window = (-half_width, half_width)

    logger.debug(f"run plan: window={window} t_final={t_final:.1f} n_cut={n_cut}")
    return RunPlan(window=(int(window[0]), int(window[1])), t_final=float(t_final), n_cut=int(n_cut))
