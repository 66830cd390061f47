"""
Core helpers used across the physics layer: parameter checks, angle wrapping, worker pool.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterable, List, Sequence, TypeVar

import numpy as np

from valve.errors import ValidationError

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

TWO_PI = 2.0 * np.pi


def require_finite(name: str, value: Any) -> float:
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise ValidationError(f"{name} must be a real number, got {value!r}") from None
    if not np.isfinite(v):
        raise ValidationError(f"{name} must be finite, got {value!r}")
    return v


def require_positive(name: str, value: Any) -> float:
    v = require_finite(name, value)
    if v <= 0.0:
        raise ValidationError(f"{name} must be > 0, got {v}")
    return v


def require_range(name: str, value: Any, lo: float, hi: float) -> float:
    """Closed-interval check with a few ulps of slack on the ends."""
    v = require_finite(name, value)
    slack = 1e-12 * max(1.0, abs(lo), abs(hi))
    if v < lo - slack or v > hi + slack:
        raise ValidationError(f"{name}={v} outside [{lo}, {hi}]")
    return min(max(v, lo), hi)


def wrap_angle(value: float) -> float:
    """Map an angle onto [0, 2*pi)."""
    w = float(np.mod(value, TWO_PI))
    return 0.0 if w >= TWO_PI else w


def parallel_map(func: Callable[[T], R], items: Sequence[T] | Iterable[T], jobs: int = 1) -> List[R]:
    """Order-preserving map; uses a process pool when jobs > 1."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    workers = min(jobs, len(items))
    logger.debug(f"running {len(items)} tasks on {workers} worker processes")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
