"""
modes / texture commands and the texture-figure reproduction.
"""
import logging
from pathlib import Path
from typing import List

import numpy as np

from builder.modes_tables import ModesTableBuilder
from cli.models import RunConfig
from cli.presets import TEXTURE_ALPHAS, TEXTURE_LOCALIZED
from valve.modes import localized_mode, localized_mode_from_omega
from utils.table_io import write_table

logger = logging.getLogger(__name__)


def cmd_modes(cfg: RunConfig, out_dir: Path, fmt: str = "csv", jobs: int = 1) -> List[Path]:
    builder = ModesTableBuilder(out_dir)
    scan = cfg.scan
    g_grid = np.linspace(scan.g_min, scan.g_max, scan.g_steps)
    dispersion = builder.build_dispersion(scan.phi_steps)
    energies = builder.build_condensate_energy(g_grid, scan.lam_set)
    echo = cfg.echo()
    return [
        write_table(builder.path_for("dispersion"), dispersion, echo, fmt),
        write_table(builder.path_for("condensate_energy"), energies, echo, fmt),
    ]


def cmd_texture(cfg: RunConfig, out_dir: Path, fmt: str = "csv", jobs: int = 1) -> List[Path]:
    builder = ModesTableBuilder(out_dir)
    system, spin, scan = cfg.system, cfg.spin, cfg.scan
    mode = None
    if system.gamma > 0:
        mode = localized_mode(system.g, system.lam, system.gamma, system.epsilon, system.alpha)
    else:
        logger.info("gamma = 0: writing the transmission textures only")
    df = builder.build_texture(scan.n_min, scan.n_max, spin.a, spin.b, system.alpha, mode)
    return [write_table(builder.path_for("texture"), df, cfg.echo(), fmt)]


def reproduce_textures(cfg: RunConfig, out_dir: Path, fmt: str = "csv", jobs: int = 1) -> List[Path]:
    """Dispersion, Omega(g) curves and textures with rotation periods 20 and 10."""
    files = cmd_modes(cfg, out_dir, fmt, jobs)
    builder = ModesTableBuilder(out_dir)
    spin, scan = cfg.spin, cfg.scan
    for alpha in TEXTURE_ALPHAS:
        mode = localized_mode_from_omega(
            TEXTURE_LOCALIZED["Omega"],
            TEXTURE_LOCALIZED["g"],
            TEXTURE_LOCALIZED["gamma"],
            TEXTURE_LOCALIZED["epsilon"],
            alpha,
        )
        df = builder.build_texture(scan.n_min, scan.n_max, spin.a, spin.b, alpha, mode)
        period = int(round(np.pi / alpha))
        echo = cfg.echo()
        echo["texture"] = {"alpha": alpha, **TEXTURE_LOCALIZED}
        files.append(write_table(builder.path_for(f"texture_period{period}"), df, echo, fmt))
    return files
