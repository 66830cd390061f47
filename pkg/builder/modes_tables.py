"""
Modes Table Builder
Dispersion, condensate energy curves and spin textures along the chain.
"""

import logging
from typing import Iterable, Optional, Sequence

import numpy as np
import pandas as pd

from builder.base_builder import BaseBuilder
from valve.modes import (
    LocalizedMode,
    condensate_energy,
    decay_factor,
    group_velocity,
    localized_spin_texture,
    omega_of_phi,
    transmission_spin_texture,
)

logger = logging.getLogger(__name__)


class ModesTableBuilder(BaseBuilder):
    """Build the free-band and localized-mode tables"""

    def build_dispersion(self, phi_steps: int = 201) -> pd.DataFrame:
        logger.info("Building dispersion table...")
        phis = np.linspace(0.0, np.pi, phi_steps)
        df = pd.DataFrame(
            {
                "phi": phis,
                "phi_over_pi": phis / np.pi,
                "omega": omega_of_phi(phis),
                "velocity": [group_velocity(1, p) for p in phis],
            }
        )
        return self.finalize("dispersion", df)

    def build_condensate_energy(self, g_grid: Sequence[float], lam_set: Iterable[float]) -> pd.DataFrame:
        """One Omega(g) curve per lam."""
        logger.info("Building condensate energy curves...")
        frames = []
        for lam in lam_set:
            energies = [condensate_energy(g, lam) for g in g_grid]
            frames.append(
                pd.DataFrame(
                    {
                        "lam": float(lam),
                        "g": np.asarray(g_grid, dtype=float),
                        "Omega": energies,
                        "kappa": [decay_factor(e) for e in energies],
                    }
                )
            )
        return self.finalize("condensate_energy", pd.concat(frames, ignore_index=True))

    def build_texture(
        self,
        n_min: int,
        n_max: int,
        a: float,
        b: float,
        alpha: float,
        mode: Optional[LocalizedMode] = None,
    ) -> pd.DataFrame:
        """s_+, s_- of the transmission states and, when given, the localized texture."""
        logger.info(f"Building spin texture for alpha={alpha:.6g}...")
        n = np.arange(n_min, n_max + 1)
        parts = [("transmission_plus", transmission_spin_texture(1, n, a, b, alpha))]
        parts.append(("transmission_minus", transmission_spin_texture(-1, n, a, b, alpha)))
        if mode is not None:
            parts.append(("localized", localized_spin_texture(n, mode)))
        frames = [
            pd.DataFrame({"mode": name, "alpha": alpha, "n": n, "sx": s[:, 0], "sy": s[:, 1], "sz": s[:, 2]})
            for name, s in parts
        ]
        return self.finalize("texture", pd.concat(frames, ignore_index=True))
