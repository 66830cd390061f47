import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from valve.criticals import operating_epsilon  # noqa: E402
from valve.scattering import ScatterParams  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def aligned():
    """Spin geometry with C_Y = -1 (b = pi/2, eps = a - pi/2)."""
    a = np.pi / 4
    return {"a": a, "b": np.pi / 2, "epsilon": operating_epsilon(a)}


@pytest.fixture
def transparency_params(aligned):
    return ScatterParams(g=0.9, lam=0.025, **aligned)


@pytest.fixture
def random_params(rng):
    """Factory of random valid scattering parameters."""

    def make(alpha=np.pi / 20):
        return ScatterParams(
            g=float(rng.uniform(0.2, 1.8)),
            lam=float(rng.uniform(0.05, 2.0)),
            epsilon=float(rng.uniform(0.0, 2.0 * np.pi)),
            a=float(rng.uniform(0.05, np.pi - 0.05)),
            b=float(rng.uniform(0.05, np.pi - 0.05)),
            alpha=alpha,
        )

    return make
