from __future__ import annotations

import logging
from pathlib import Path
from typing import Callable, Dict, List, Optional

from cli.criticals_commands import reproduce_maps
from cli.models import RunConfig
from cli.modes_commands import reproduce_textures
from cli.simulate_commands import reproduce_panels
from cli.smatrix_commands import reproduce_scans
from pipelines.run_job import run_job
from utils.table_io import write_json

logger = logging.getLogger(__name__)

# reproduction target -> command writing its tables
FIGURES: Dict[str, Callable[..., List[Path]]] = {
    "fig2": reproduce_textures,
    "fig3": reproduce_maps,
    "fig4": reproduce_panels,
    "supp": reproduce_scans,
}


class ReproductionPipeline:
    def __init__(
        self,
        *,
        figure: str,
        out_dir: Path,
        config: Optional[RunConfig] = None,
        fmt: str = "csv",
        jobs: int = 1,
    ):
        if figure not in FIGURES and figure != "all":
            raise ValueError(f"unknown reproduction target {figure!r}")
        self.figure = figure
        self.out_dir = Path(out_dir)
        self.config = config or RunConfig()
        self.fmt = fmt
        self.jobs = jobs
        self.results: Dict[str, dict] = {}

    def targets(self) -> List[str]:
        return list(FIGURES) if self.figure == "all" else [self.figure]

    def _write_summary(self, target: str, folder: Path, result: dict) -> None:
        write_json(
            folder / "summary.json",
            {
                "target": target,
                "ok": result["ok"],
                "message": result["message"],
                "outputs": [Path(p).name for p in result["outputs"]],
                "config": self.config.echo(),
            },
        )

    def run(self) -> bool:
        logger.info(f"Starting reproduction target={self.figure} out={self.out_dir}")
        for target in self.targets():
            folder = self.out_dir / target if self.figure == "all" else self.out_dir
            result = run_job(target, FIGURES[target], self.config, folder, self.fmt, self.jobs)
            self.results[target] = result
            if not result["ok"]:
                logger.error(result["message"])
            self._write_summary(target, folder, result)
        ok = all(r["ok"] for r in self.results.values())
        logger.info(f"Reproduction finished ok={ok}")
        return ok

    def first_failure(self) -> Optional[dict]:
        return next((r for r in self.results.values() if not r["ok"]), None)
