"""
Simulation Table Builder
Time series of a run and the simulated-vs-analytic comparison.
"""

import logging

import pandas as pd

from builder.base_builder import BaseBuilder
from simulation.integrator import SimResult
from simulation.measure import CHANNELS

logger = logging.getLogger(__name__)


class SimulationTableBuilder(BaseBuilder):
    def build_series(self, result: SimResult) -> pd.DataFrame:
        return self.finalize("sim_series", result.series)

    def build_comparison(self, result: SimResult) -> pd.DataFrame:
        rows = []
        for channel in CHANNELS:
            predicted = result.prediction.get(channel, float("nan"))
            rows.append(
                {
                    "channel": channel,
                    "simulated": result.final[channel],
                    "predicted": predicted,
                    "predicted_centre": result.prediction.get(f"{channel}_centre", float("nan")),
                    "difference": result.final[channel] - predicted,
                }
            )
        df = pd.DataFrame(rows)
        worst = df["difference"].abs().max()
        logger.info(f"largest simulated-vs-analytic gap: {worst:.4f}")
        return self.finalize("sim_comparison", df)
