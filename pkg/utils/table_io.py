"""
Writers for result tables and summaries.

Every CSV starts with one comment line echoing the run configuration:

    # config: {"system": {...}, ...}

so a table can be traced back to (and regenerated from) the config that produced it.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

import pandas as pd

logger = logging.getLogger(__name__)

CONFIG_PREFIX = "# config: "


def _ensure_parent(path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)


def _to_jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_jsonable(v) for v in value]
    if isinstance(value, Path):
        return str(value)
    if hasattr(value, "tolist"):
        return _to_jsonable(value.tolist())
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    return value


def write_csv(path: Path, df: pd.DataFrame, config: Optional[Dict[str, Any]] = None) -> Path:
    """Write df as CSV with a config-echo header line."""
    path = Path(path)
    _ensure_parent(path)
    echo = json.dumps(_to_jsonable(config or {}), ensure_ascii=False, sort_keys=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        fh.write(f"{CONFIG_PREFIX}{echo}\n")
        df.to_csv(fh, index=False, float_format="%.17g")
    logger.info(f"Wrote {path} ({len(df)} rows)")
    return path


def write_json(path: Path, data: Dict[str, Any]) -> Path:
    path = Path(path)
    _ensure_parent(path)
    path.write_text(json.dumps(_to_jsonable(data), ensure_ascii=False, indent=2), encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def write_table(path: Path, df: pd.DataFrame, config: Optional[Dict[str, Any]] = None, fmt: str = "csv") -> Path:
    """CSV with config echo, or JSON {"config": ..., "rows": [...]} when fmt == 'json'."""
    path = Path(path)
    if fmt == "json":
        rows = json.loads(df.to_json(orient="records", double_precision=15))
        return write_json(path.with_suffix(".json"), {"config": config or {}, "rows": rows})
    return write_csv(path.with_suffix(".csv"), df, config)


def read_config_echo(path: Path) -> Dict[str, Any]:
    with Path(path).open("r", encoding="utf-8") as fh:
        first = fh.readline()
    if not first.startswith(CONFIG_PREFIX):
        return {}
    return json.loads(first[len(CONFIG_PREFIX):])


def read_table(path: Path) -> pd.DataFrame:
    return pd.read_csv(path, comment="#")
