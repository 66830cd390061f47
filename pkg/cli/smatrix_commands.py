"""
smatrix command and the S-matrix scan reproductions.
"""
import logging
from pathlib import Path
from typing import List

from builder.smatrix_tables import SMatrixTableBuilder
from cli.models import RunConfig
from cli.presets import SMATRIX_PRESETS
from valve.scattering import ScatterParams, reciprocal_epsilon
from utils.table_io import write_table

logger = logging.getLogger(__name__)


def scatter_params(cfg: RunConfig) -> ScatterParams:
    s = cfg.system
    return ScatterParams(g=s.g, lam=s.lam, epsilon=s.epsilon, a=cfg.spin.a, b=cfg.spin.b, alpha=s.alpha)


def _scan(cfg: RunConfig, builder: SMatrixTableBuilder, name: str, fmt: str) -> Path:
    params = scatter_params(cfg)
    scan = cfg.scan
    df = builder.build_scan(params, scan.phi_min, scan.phi_max, scan.phi_steps)
    logger.info(f"{name}: C_Y={df['c_y'].iloc[0]:.4f}, max flux residual {df['flux_residual'].max():.2e}")
    return write_table(builder.path_for(name), df, cfg.echo(), fmt)


def cmd_smatrix(cfg: RunConfig, out_dir: Path, fmt: str = "csv", jobs: int = 1) -> List[Path]:
    return [_scan(cfg, SMatrixTableBuilder(out_dir), "smatrix", fmt)]


def preset_config(cfg: RunConfig, name: str) -> RunConfig:
    preset = SMATRIX_PRESETS[name]
    eps = reciprocal_epsilon(preset["a"], preset["b"]) + preset["epsilon_shift"]
    return cfg.merged(
        {
            "system": {"g": preset["g"], "lam": preset["lam"], "epsilon": eps},
            "spin": {"a": preset["a"], "b": preset["b"]},
        }
    )


def reproduce_scans(cfg: RunConfig, out_dir: Path, fmt: str = "csv", jobs: int = 1) -> List[Path]:
    builder = SMatrixTableBuilder(out_dir)
    return [_scan(preset_config(cfg, name), builder, f"smatrix_{name}", fmt) for name in SMATRIX_PRESETS]
