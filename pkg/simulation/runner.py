"""
One-call simulation of a scattering experiment: operating point -> plan -> evolve -> compare.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from config import SIM_DEFAULTS
from simulation.integrator import SimResult, run_evolution
from simulation.lattice import WavepacketSpec, init_state
from simulation.measure import packet_averaged_prediction
from simulation.planning import RunPlan, plan_run
from valve.criticals import CONVERSION, critical_point, operating_epsilon, resolve_kind
from valve.errors import InfeasiblePointError
from valve.params import SystemParams

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimOptions:
    dt: float = SIM_DEFAULTS["dt"]
    t_final: Optional[float] = None
    window: Optional[Tuple[int, int]] = None
    n_cut: Optional[int] = None
    record_every: float = SIM_DEFAULTS["record_every"]


def run_simulation(params: SystemParams, packet: WavepacketSpec, options: SimOptions = SimOptions()) -> SimResult:
    plan: RunPlan = plan_run(params, packet, options.window, options.t_final, options.n_cut)
    logger.info(
        f"simulating g={params.g:.4g} lam={params.lam:.4g} j={packet.j} omega={packet.omega:.6f} "
        f"on window {plan.window} until t={plan.t_final:.1f}"
    )
    state = init_state(params, packet, plan.window)
    result = run_evolution(state, params, options.dt, plan.t_final, plan.n_cut, packet.j, options.record_every)
    result.prediction = packet_averaged_prediction(params, packet)
    result.params.update(
        {
            "j": packet.j,
            "phi": packet.phi,
            "omega": packet.omega,
            "s0": packet.s0,
            "s_p": packet.s_p,
            "n0": packet.n0,
            "dt": options.dt,
            "t_final": plan.t_final,
            "window": list(plan.window),
            "n_cut": plan.n_cut,
        }
    )
    return result


def operating_params(kind: str, g: float, lam: float, gamma: float, a: float, alpha: float) -> Tuple[SystemParams, float]:
    """SystemParams tuned to an operating point and its band energy; refuses points outside the band."""
    kind = resolve_kind(kind)
    point = critical_point(kind, g, lam, a)
    if not point.feasible:
        raise InfeasiblePointError(
            f"{kind} at g={g}, lam={lam} is outside the band (omega={point.omega:.6g}); nothing to simulate"
        )
    if kind == CONVERSION:
        params = SystemParams(g=g, lam=lam, gamma=gamma, epsilon=point.epsilon, alpha=alpha, a=a, b=np.pi / 2)
    else:
        params = SystemParams(g=g, lam=lam, gamma=gamma, epsilon=operating_epsilon(a), alpha=alpha, a=a, b=np.pi / 2)
    return params, point.omega


def simulate_point(
    kind: str,
    g: float,
    lam: float,
    j: int = 1,
    gamma: float = 0.002,
    a: float = np.pi / 4,
    alpha: float = np.pi / 20,
    s0_ratio: float = SIM_DEFAULTS["s0_ratio"],
    s_p: float = SIM_DEFAULTS["s_p"],
    n0: int = SIM_DEFAULTS["n0"],
    options: SimOptions = SimOptions(),
) -> SimResult:
    params, omega = operating_params(kind, g, lam, gamma, a, alpha)
    n0 = -abs(n0) if j in (1, 3) else abs(n0)
    packet = WavepacketSpec.at_energy(omega, s0=s0_ratio * np.sqrt(g / gamma), s_p=s_p, n0=n0, j=j)
    result = run_simulation(params, packet, options)
    result.params["kind"] = kind
    return result
