"""
Operating Point Table Builder
Feasibility maps over (g, lam) and single operating points with their amplitudes.
"""

import logging
from typing import Iterable, Sequence

import numpy as np
import pandas as pd

from builder.base_builder import BaseBuilder
from valve.criticals import CriticalPoint, check_operating_point, feasibility_map

logger = logging.getLogger(__name__)


class CriticalsTableBuilder(BaseBuilder):
    """Build heatmap tables and operating point listings"""

    def build_feasibility(
        self, kind: str, g_grid: Sequence[float], lam_grid: Sequence[float], jobs: int = 1
    ) -> pd.DataFrame:
        logger.info(f"Building {kind} map on {len(g_grid)} x {len(lam_grid)} grid...")
        df = feasibility_map(kind, g_grid, lam_grid, jobs=jobs)
        logger.info(f"{kind}: {int(df['feasible'].sum())} of {len(df)} cells inside the band")
        return self.finalize("feasibility", df)

    def build_points(
        self, points: Iterable[CriticalPoint], a: float = np.pi / 4, b: float = np.pi / 2
    ) -> pd.DataFrame:
        rows = []
        for point in points:
            row = {
                "kind": point.kind,
                "g": point.g,
                "lam": point.lam,
                "mu": point.mu if point.mu is not None else float("nan"),
                "omega": point.omega,
                "feasible": point.feasible,
                "epsilon": point.epsilon if point.epsilon is not None else float("nan"),
            }
            if point.feasible:
                row.update(check_operating_point(point, a, b))
            else:
                row.update({k: float("nan") for k in ("abs_s11", "abs_s33", "abs_s31", "abs_s13")})
            rows.append(row)
        return self.finalize("critical_points", pd.DataFrame(rows))
