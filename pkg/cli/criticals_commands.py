"""
criticals / map / isolate / convert commands and the heatmap reproduction.
"""
import logging
from pathlib import Path
from typing import List, Optional

import numpy as np

from builder.criticals_tables import CriticalsTableBuilder
from cli.models import RunConfig
from cli.presets import CRITICAL_LISTING
from valve.criticals import MAP_KINDS, conversion_point, critical_point, isolation_point, resolve_kind
from valve.errors import InfeasiblePointError
from utils.table_io import write_table

logger = logging.getLogger(__name__)


def _grids(cfg: RunConfig):
    scan = cfg.scan
    return (
        np.linspace(scan.g_min, scan.g_max, scan.g_steps),
        np.linspace(scan.lam_min, scan.lam_max, scan.lam_steps),
    )


def cmd_criticals(cfg: RunConfig, out_dir: Path, fmt: str = "csv", jobs: int = 1) -> List[Path]:
    """Every requested operating point at the configured (g, lam)."""
    builder = CriticalsTableBuilder(out_dir)
    g, lam = cfg.system.g, cfg.system.lam
    points = [critical_point(resolve_kind(kind), g, lam, cfg.spin.a) for kind in cfg.scan.kinds]
    df = builder.build_points(points, cfg.spin.a)
    return [write_table(builder.path_for("critical_points"), df, cfg.echo(), fmt)]


def cmd_map(
    cfg: RunConfig, out_dir: Path, fmt: str = "csv", jobs: int = 1, kind: Optional[str] = None
) -> List[Path]:
    builder = CriticalsTableBuilder(out_dir)
    g_grid, lam_grid = _grids(cfg)
    kinds = [resolve_kind(kind)] if kind else [resolve_kind(k) for k in cfg.scan.kinds]
    files = []
    for k in kinds:
        df = builder.build_feasibility(k, g_grid, lam_grid, jobs)
        files.append(write_table(builder.path_for(f"map_{k}"), df, cfg.echo(), fmt))
    return files


def cmd_isolate(cfg: RunConfig, out_dir: Path, fmt: str = "csv", jobs: int = 1) -> List[Path]:
    builder = CriticalsTableBuilder(out_dir)
    point = isolation_point(cfg.system.g)
    path = write_table(builder.path_for("isolation"), builder.build_points([point], cfg.spin.a), cfg.echo(), fmt)
    if not point.feasible:
        raise InfeasiblePointError(
            f"isolation at g={point.g} needs omega={point.omega:.6g}, outside the band [-2, 2]"
        )
    return [path]


def cmd_convert(cfg: RunConfig, out_dir: Path, fmt: str = "csv", jobs: int = 1) -> List[Path]:
    builder = CriticalsTableBuilder(out_dir)
    g, lam = cfg.system.g, cfg.system.lam
    points = conversion_point(g, lam, cfg.spin.a, cfg.spin.b)
    if not points:
        raise InfeasiblePointError(f"no maximal-conversion energy in the band for g={g}, lam={lam}")
    df = builder.build_points(points, cfg.spin.a, cfg.spin.b)
    return [write_table(builder.path_for("conversion"), df, cfg.echo(), fmt)]


def reproduce_maps(cfg: RunConfig, out_dir: Path, fmt: str = "csv", jobs: int = 1) -> List[Path]:
    """All feasibility maps plus the operating-point listing."""
    builder = CriticalsTableBuilder(out_dir)
    files = []
    g_grid, lam_grid = _grids(cfg)
    for kind in MAP_KINDS:
        df = builder.build_feasibility(kind, g_grid, lam_grid, jobs)
        files.append(write_table(builder.path_for(f"map_{kind}"), df, cfg.echo(), fmt))
    points = [critical_point(kind, g, lam) for kind, g, lam in CRITICAL_LISTING]
    listing = builder.build_points(points, cfg.spin.a)
    files.append(write_table(builder.path_for("critical_points"), listing, cfg.echo(), fmt))
    return files
