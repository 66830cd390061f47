"""
simulate command and the time-domain panel reproduction.
"""
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from builder.simulation_tables import SimulationTableBuilder
from cli.models import RunConfig
from cli.presets import SIMULATION_PRESETS, resolve_preset
from simulation.integrator import SimResult
from simulation.lattice import WavepacketSpec
from simulation.runner import SimOptions, run_simulation, simulate_point
from valve.errors import ValidationError
from valve.params import SystemParams
from valve.utils_core import parallel_map
from utils.table_io import write_json, write_table

logger = logging.getLogger(__name__)


def preset_config(cfg: RunConfig, name: str) -> RunConfig:
    """Config with a simulation preset folded in, so the echo alone reproduces the run."""
    key = resolve_preset(name)
    if key not in SIMULATION_PRESETS:
        raise ValidationError(f"unknown preset {name!r}; available: {', '.join(sorted(SIMULATION_PRESETS))}")
    p = SIMULATION_PRESETS[key]
    return cfg.merged(
        {
            "system": {"g": p["g"], "lam": p["lam"]},
            "sim": {"kind": p["kind"], "j": p["j"], "s_p": p["s_p"], "n0": p["n0"], "dt": p["dt"]},
        }
    )


def _options(cfg: RunConfig) -> SimOptions:
    sim = cfg.sim
    return SimOptions(
        dt=sim.dt,
        t_final=sim.t_final,
        window=sim.window,
        n_cut=sim.n_cut,
        record_every=sim.record_every,
    )


def run_from_config(cfg: RunConfig) -> SimResult:
    """Operating point when sim.kind is set, otherwise the configured system at sim.omega."""
    system, spin, sim = cfg.system, cfg.spin, cfg.sim
    if sim.kind:
        return simulate_point(
            sim.kind,
            system.g,
            system.lam,
            j=sim.j,
            gamma=system.gamma,
            a=spin.a,
            alpha=system.alpha,
            s0_ratio=sim.s0_ratio,
            s_p=sim.s_p,
            n0=sim.n0,
            options=_options(cfg),
        )
    if sim.omega is None:
        raise ValidationError("simulate needs either sim.kind (an operating point) or sim.omega")
    if system.gamma <= 0:
        raise ValidationError("simulate needs gamma > 0 (a condensate to scatter from)")
    params = SystemParams(
        g=system.g,
        lam=system.lam,
        gamma=system.gamma,
        epsilon=system.epsilon,
        alpha=system.alpha,
        a=spin.a,
        b=spin.b,
    )
    s0 = sim.s0_ratio * float(np.sqrt(system.g / system.gamma))
    n0 = -abs(sim.n0) if sim.j in (1, 3) else abs(sim.n0)
    packet = WavepacketSpec.at_energy(sim.omega, s0=s0, s_p=sim.s_p, n0=n0, j=sim.j)
    return run_simulation(params, packet, _options(cfg))


def write_result(result: SimResult, cfg: RunConfig, out_dir: Path, name: str, fmt: str) -> List[Path]:
    builder = SimulationTableBuilder(out_dir)
    echo = cfg.echo()
    files = [
        write_table(builder.path_for(f"{name}_series"), builder.build_series(result), echo, fmt),
        write_table(builder.path_for(f"{name}_comparison"), builder.build_comparison(result), echo, fmt),
    ]
    summary = {"config": echo, **result.summary()}
    files.append(write_json(builder.path_for(f"{name}_summary", ".json"), summary))
    return files


def cmd_simulate(
    cfg: RunConfig, out_dir: Path, fmt: str = "csv", jobs: int = 1, preset: Optional[str] = None
) -> List[Path]:
    name = "simulation"
    if preset:
        cfg = preset_config(cfg, preset)
        name = resolve_preset(preset)
    result = run_from_config(cfg)
    if not result.reliable:
        logger.warning(f"{name}: condensate fidelity fell below the floor; fractions are indicative only")
    return write_result(result, cfg, out_dir, name, fmt)


def _run_preset(task: Tuple[Dict[str, Any], str]) -> Tuple[str, SimResult]:
    data, name = task
    cfg = preset_config(RunConfig.model_validate(data), name)
    result = run_from_config(cfg)
    result.state = None
    return name, result


def reproduce_panels(cfg: RunConfig, out_dir: Path, fmt: str = "csv", jobs: int = 1) -> List[Path]:
    """Every time-domain preset, run concurrently when jobs > 1."""
    tasks = [(cfg.model_dump(), name) for name in SIMULATION_PRESETS]
    files: List[Path] = []
    for name, result in parallel_map(_run_preset, tasks, jobs):
        files.extend(write_result(result, preset_config(cfg, name), out_dir, name, fmt))
    return files
