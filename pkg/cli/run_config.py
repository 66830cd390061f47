"""
Loading of the run configuration (INI or JSON) and the environment overrides.

INI layout:

    [system]
    alpha = pi/20
    g = 0.9
    [spin]
    a = pi/4
    [sim]
    window = -400, 400
"""
import configparser
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import ValidationError as PydanticValidationError

from cli.models import RunConfig
from config import get_output_dir
from valve.errors import ValidationError

logger = logging.getLogger(__name__)

SECTIONS = ("system", "spin", "scan", "sim", "output")


def _read_ini(path: Path) -> Dict[str, Dict[str, Any]]:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        parser.read_string(path.read_text(encoding="utf-8"))
    except configparser.Error as exc:
        raise ValidationError(f"cannot parse config {path}: {exc}") from exc
    unknown = [s for s in parser.sections() if s not in SECTIONS]
    if unknown:
        raise ValidationError(f"unknown config section(s) in {path}: {', '.join(unknown)}")
    return {section: dict(parser.items(section)) for section in parser.sections()}


def _read_json(path: Path) -> Dict[str, Dict[str, Any]]:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValidationError(f"cannot parse config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ValidationError(f"config {path} must be a JSON object with sections {', '.join(SECTIONS)}")
    return data


def build_config(data: Optional[Dict[str, Any]] = None, source: str = "<defaults>") -> RunConfig:
    try:
        return RunConfig.model_validate(data or {})
    except PydanticValidationError as exc:
        lines = [f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in exc.errors()]
        raise ValidationError(f"invalid config {source}: " + "; ".join(lines)) from None


def load_run_config(path: Optional[Path] = None) -> RunConfig:
    """Defaults from config.py, overlaid with the file (INI unless the suffix is .json)."""
    if path is None:
        return build_config()
    path = Path(path)
    if not path.is_file():
        raise ValidationError(f"config file not found: {path}")
    data = _read_json(path) if path.suffix.lower() == ".json" else _read_ini(path)
    logger.debug(f"loaded config sections {sorted(data)} from {path}")
    return build_config(data, str(path))


def apply_overrides(cfg: RunConfig, overrides: Dict[str, Dict[str, Any]]) -> RunConfig:
    try:
        return cfg.merged(overrides)
    except PydanticValidationError as exc:
        lines = [f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in exc.errors()]
        raise ValidationError("invalid command-line value: " + "; ".join(lines)) from None


def resolve_output_dir(cfg: RunConfig, cli_out: Optional[str] = None) -> Path:
    """--out beats [output] dir, which beats VALVE_OUTPUT_DIR / data/runs."""
    if cli_out:
        return Path(cli_out).expanduser()
    if cfg.output.dir:
        return Path(cfg.output.dir).expanduser()
    return get_output_dir()
