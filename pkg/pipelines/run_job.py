"""
Run one command in-process with its log captured.

The job never raises: the result dict carries ok / message / log / outputs
and, on failure, the error kind the CLI maps onto an exit code.
"""
import logging
import traceback
from io import StringIO
from pathlib import Path
from typing import Any, Callable, List

from valve.errors import InfeasiblePointError, NumericalError, ValidationError

EXIT_CODES = {
    "ok": 0,
    "io": 1,
    "validation": 2,
    "infeasible": 3,
    "numerical": 4,
}


def classify_error(exc: BaseException) -> str:
    if isinstance(exc, ValidationError):
        return "validation"
    if isinstance(exc, InfeasiblePointError):
        return "infeasible"
    if isinstance(exc, NumericalError):
        return "numerical"
    if isinstance(exc, OSError):
        return "io"
    return "error"


def run_job(name: str, func: Callable[..., List[Path]], *args: Any, **kwargs: Any) -> dict:
    log_buf = StringIO()
    handler = logging.StreamHandler(log_buf)
    handler.setFormatter(logging.Formatter("%(asctime)s - %(levelname)s - %(message)s"))
    root = logging.getLogger()
    root.addHandler(handler)

    out = {"ok": False, "message": "", "log": "", "outputs": [], "error_kind": None}
    try:
        outputs = func(*args, **kwargs) or []
        out["ok"] = True
        out["outputs"] = [str(p) for p in outputs]
        out["message"] = f"{name} finished ({len(outputs)} files)"
    except Exception as e:
        out["error_kind"] = classify_error(e)
        if isinstance(e, OSError) and getattr(e, "filename", None):
            out["message"] = f"{name} failed: cannot write {e.filename}: {e.strerror or e}"
        else:
            out["message"] = f"{name} failed: {e}"
        logging.getLogger(__name__).debug(traceback.format_exc())
        if out["error_kind"] == "error":
            out["traceback"] = traceback.format_exc()
    finally:
        out["log"] = log_buf.getvalue()
        root.removeHandler(handler)
        handler.close()
    return out


def exit_code(result: dict) -> int:
    if result.get("ok"):
        return 0
    return EXIT_CODES.get(result.get("error_kind") or "", 1)
