"""
Fixed-step RK4 evolution with a periodic recorder and edge-contact guard.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np
import pandas as pd

from config import EDGE_GUARD_SITES, EDGE_TOLERANCE, FIDELITY_FLOOR, MAX_TIME_STEP
from simulation.lattice import LatticeState, gpe_rhs, total_energy
from simulation.measure import CHANNELS, PopulationSplit, measure_populations
from valve.errors import EdgeContactError, ValidationError
from valve.params import SystemParams
from valve.utils_core import require_positive

logger = logging.getLogger(__name__)

SERIES_COLUMNS = ["t", "T_plus", "T_minus", "R_plus", "R_minus", "core", "fidelity", "norm", "energy"]

Recorder = Callable[[LatticeState], Dict[str, float]]


def rk4_step(psi: np.ndarray, dt: float, core: int, params: SystemParams, frame: float) -> np.ndarray:
    k1 = gpe_rhs(psi, core, params, frame)
    k2 = gpe_rhs(psi + 0.5 * dt * k1, core, params, frame)
    k3 = gpe_rhs(psi + 0.5 * dt * k2, core, params, frame)
    k4 = gpe_rhs(psi + dt * k3, core, params, frame)
    return psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


@dataclass
class SimResult:
    series: pd.DataFrame
    final: Dict[str, float]
    norm_drift: float
    energy_drift: float
    reliable: bool
    params: Dict[str, Any]
    prediction: Dict[str, float] = field(default_factory=dict)
    state: Optional[LatticeState] = field(default=None, repr=False)

    @property
    def total(self) -> float:
        return float(sum(self.final[k] for k in CHANNELS) + self.final["core"])

    def summary(self) -> Dict[str, Any]:
        return {
            "params": self.params,
            "final": self.final,
            "prediction": self.prediction,
            "norm_drift": self.norm_drift,
            "energy_drift": self.energy_drift,
            "reliable": self.reliable,
        }


def population_recorder(params: SystemParams, n_cut: int, j: int) -> Recorder:
    def record(state: LatticeState) -> Dict[str, float]:
        split: PopulationSplit = measure_populations(state, params, n_cut, j)
        row = split.to_dict()
        row["norm"] = state.norm()
        row["energy"] = total_energy(state, params)
        return row

    return record


def check_edges(state: LatticeState, guard: int = EDGE_GUARD_SITES, tolerance: float = EDGE_TOLERANCE) -> None:
    """Abort when the population within `guard` sites of a wall exceeds tolerance * packet norm."""
    reference = state.packet_norm if state.packet_norm > 0.0 else state.norm()
    dens = np.sum(np.abs(state.psi) ** 2, axis=1)
    left, right = float(np.sum(dens[:guard])), float(np.sum(dens[-guard:]))
    if max(left, right) > tolerance * reference:
        n_min, n_max = state.window
        raise EdgeContactError(
            f"wave reached the window edge at t={state.t:.2f} (window [{n_min}, {n_max}], "
            f"edge population left={left:.3e} right={right:.3e}); widen the window or shorten the run"
        )


def evolve(
    state: LatticeState,
    params: SystemParams,
    dt: float,
    t_final: float,
    recorder: Optional[Recorder] = None,
    record_every: float = 2.0,
    check_edge: bool = True,
) -> pd.DataFrame:
    """
    Advance `state` in place to t_final with classic RK4.

    Returns the recorded time series (one row per record_every, plus t=0 and t_final).
    """
    dt = require_positive("dt", dt)
    if dt > MAX_TIME_STEP:
        raise ValidationError(f"dt={dt} exceeds the RK4 stability limit {MAX_TIME_STEP}")
    t_final = require_positive("t_final", t_final)
    n_steps = int(math.ceil(t_final / dt - 1e-9))
    dt = t_final / n_steps
    record_stride = max(1, int(round(record_every / dt)))
    core = state.core_index

    rows: List[Dict[str, float]] = []
    if recorder is not None:
        rows.append(recorder(state))
    t0 = state.t
    for step in range(1, n_steps + 1):
        state.psi = rk4_step(state.psi, dt, core, params, state.frame)
        state.t = t0 + step * dt
        if step % record_stride == 0 or step == n_steps:
            if check_edge:
                check_edges(state)
            if recorder is not None:
                rows.append(recorder(state))
    logger.debug(f"evolved {n_steps} RK4 steps of dt={dt:.4g} to t={state.t:.2f}")
    return pd.DataFrame(rows)


def run_evolution(
    state: LatticeState,
    params: SystemParams,
    dt: float,
    t_final: float,
    n_cut: int,
    j: int,
    record_every: float = 2.0,
) -> SimResult:
    """Evolve with the population recorder and reduce the series to a SimResult."""
    recorder = population_recorder(params, n_cut, j)
    series = evolve(state, params, dt, t_final, recorder=recorder, record_every=record_every)
    series = series[SERIES_COLUMNS]

    norm0, norm1 = series["norm"].iloc[0], series["norm"].iloc[-1]
    e0, e1 = series["energy"].iloc[0], series["energy"].iloc[-1]
    norm_drift = float(abs(norm1 - norm0) / norm0)
    energy_drift = float(abs(e1 - e0) / max(abs(e0), 1e-300))
    last = series.iloc[-1]
    final = {key: float(last[key]) for key in CHANNELS + ("core", "fidelity")}
    reliable = bool(series["fidelity"].min() >= FIDELITY_FLOOR)
    if not reliable:
        logger.warning(f"condensate fidelity fell to {series['fidelity'].min():.4f}; the measurement is unreliable")
    total = sum(final[k] for k in CHANNELS) + final["core"]
    if abs(total - 1.0) > 0.02:
        logger.warning(f"final fractions sum to {total:.4f} (expected 1 +- 0.02)")
    return SimResult(
        series=series.reset_index(drop=True),
        final=final,
        norm_drift=norm_drift,
        energy_drift=energy_drift,
        reliable=reliable,
        params=params.to_dict(),
        state=state,
    )
