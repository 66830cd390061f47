"""
S-matrix Table Builder
Amplitude moduli against phi, flux residual and pole annotation.
"""

import logging

import numpy as np
import pandas as pd

from builder.base_builder import BaseBuilder
from valve.scattering import ScatterParams, flux_residual, s_matrix

logger = logging.getLogger(__name__)


class SMatrixTableBuilder(BaseBuilder):
    """Build |S11|, |S33|, |S31|, |S13| scans over the band"""

    def build_scan(self, params: ScatterParams, phi_min: float, phi_max: float, phi_steps: int) -> pd.DataFrame:
        """phi_min / phi_max are in units of pi and must stay inside (0, 1)."""
        logger.info(
            f"Building S-matrix scan g={params.g:.4g} lam={params.lam:.4g} eps={params.epsilon:.6g} ({phi_steps} samples)..."
        )
        phis = np.pi * np.linspace(phi_min, phi_max, phi_steps)
        rows = []
        for phi in phis:
            s = s_matrix(float(-2.0 * np.cos(phi)), params)
            rows.append(
                {
                    "phi": phi,
                    "phi_over_pi": phi / np.pi,
                    "omega": s.omega,
                    "mu": s.mu,
                    "abs_s11": abs(s.s11),
                    "abs_s33": abs(s.s33),
                    "abs_s31": abs(s.s31),
                    "abs_s13": abs(s.s13),
                    "flux_residual": max(flux_residual(s, 1), flux_residual(s, 3)),
                    "c_y": s.c_y,
                    "near_pole": s.pole is not None,
                }
            )
        df = pd.DataFrame(rows)
        poles = int(df["near_pole"].sum())
        if poles:
            logger.info(f"{poles} samples sit on a pole (closed-channel limit)")
        return self.finalize("smatrix", df)
