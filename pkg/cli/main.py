"""
Command-line front end.

    python run_valve.py smatrix --config run.ini --out runs/scan
    python run_valve.py simulate --preset transparency --jobs 1
    python run_valve.py reproduce-all --out runs/all --jobs 4

Exit codes: 0 success, 1 output error, 2 validation error, 3 infeasible
operating point, 4 numerical failure.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from cli.criticals_commands import cmd_convert, cmd_criticals, cmd_isolate, cmd_map
from cli.models import RunConfig
from cli.modes_commands import cmd_modes, cmd_texture
from cli.presets import SIMULATION_PRESETS
from cli.run_config import apply_overrides, load_run_config, resolve_output_dir
from cli.simulate_commands import cmd_simulate
from cli.smatrix_commands import cmd_smatrix
from config import get_default_jobs, get_log_level
from pipelines.reproduction_pipeline import ReproductionPipeline
from pipelines.run_job import classify_error, exit_code, run_job
from valve.criticals import MAP_KINDS

logger = logging.getLogger(__name__)

COMMANDS: Dict[str, Callable[..., List[Path]]] = {
    "modes": cmd_modes,
    "texture": cmd_texture,
    "smatrix": cmd_smatrix,
    "criticals": cmd_criticals,
    "map": cmd_map,
    "isolate": cmd_isolate,
    "convert": cmd_convert,
    "simulate": cmd_simulate,
}

REPRODUCTIONS = {
    "reproduce-fig2": "fig2",
    "reproduce-fig3": "fig3",
    "reproduce-fig4": "fig4",
    "reproduce-supp": "supp",
    "reproduce-all": "all",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="INI or JSON run configuration")
    common.add_argument("--out", help="output directory (default: VALVE_OUTPUT_DIR or data/runs)")
    common.add_argument("--format", choices=("csv", "json"), help="table format")
    common.add_argument("--jobs", type=int, help="worker processes for independent jobs")
    common.add_argument("--seed", type=int, help="seed recorded in the config echo")
    common.add_argument("--log-level", choices=("DEBUG", "INFO", "WARNING", "ERROR"))

    parser = argparse.ArgumentParser(prog="valve", description="Spin-valve transport off a localized SOC condensate")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("modes", parents=[common], help="dispersion and Omega(g) curves")
    sub.add_parser("texture", parents=[common], help="spin textures along the chain")
    sub.add_parser("smatrix", parents=[common], help="|S| scan over the band")
    sub.add_parser("criticals", parents=[common], help="operating points at the configured (g, lam)")
    p_map = sub.add_parser("map", parents=[common], help="feasibility heatmap over (g, lam)")
    p_map.add_argument("--kind", choices=MAP_KINDS, help="single operating point kind")
    sub.add_parser("isolate", parents=[common], help="perfect spin isolation point")
    sub.add_parser("convert", parents=[common], help="maximal spin conversion energies")
    p_sim = sub.add_parser("simulate", parents=[common], help="time-domain scattering run")
    p_sim.add_argument("--preset", help=f"one of {', '.join(sorted(SIMULATION_PRESETS))}")
    for name in REPRODUCTIONS:
        sub.add_parser(name, parents=[common], help=f"reproduce the {REPRODUCTIONS[name]} dataset(s)")
    return parser


def configure_logging(level: Optional[str]) -> None:
    logging.basicConfig(
        level=getattr(logging, (level or get_log_level()).upper(), logging.INFO),
        format="%(asctime)s - %(levelname)s - %(message)s",
    )


def _load(args: argparse.Namespace) -> RunConfig:
    cfg = load_run_config(args.config)
    overrides: Dict[str, Dict[str, Any]] = {
        "output": {"format": args.format},
        "sim": {"seed": args.seed},
    }
    return apply_overrides(cfg, overrides)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)

    try:
        cfg = _load(args)
        out_dir = resolve_output_dir(cfg, args.out)
    except Exception as e:
        kind = classify_error(e)
        print(f"error: {e}", file=sys.stderr)
        return exit_code({"ok": False, "error_kind": kind})

    fmt = cfg.output.format
    jobs = args.jobs if args.jobs is not None else get_default_jobs()
    if jobs < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return 2

    if args.command in REPRODUCTIONS:
        try:
            pipeline = ReproductionPipeline(
                figure=REPRODUCTIONS[args.command], out_dir=out_dir, config=cfg, fmt=fmt, jobs=jobs
            )
            ok = pipeline.run()
        except OSError as e:
            print(f"error: cannot write {getattr(e, 'filename', None) or out_dir}: {e}", file=sys.stderr)
            return 1
        if ok:
            print(f"wrote reproduction to {out_dir}")
            return 0
        failure = pipeline.first_failure() or {}
        print(f"error: {failure.get('message', 'reproduction failed')}", file=sys.stderr)
        return exit_code(failure)

    extra: Dict[str, Any] = {}
    if args.command == "map":
        extra["kind"] = args.kind
    if args.command == "simulate":
        extra["preset"] = args.preset
    result = run_job(args.command, COMMANDS[args.command], cfg, out_dir, fmt, jobs, **extra)
    if result["ok"]:
        for path in result["outputs"]:
            print(path)
        return 0
    print(f"error: {result['message']}", file=sys.stderr)
    if result.get("traceback"):
        logger.debug(result["traceback"])
    return exit_code(result)


if __name__ == "__main__":
    sys.exit(main())
