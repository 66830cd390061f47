import os
import sys
from math import pi
from pathlib import Path
from typing import Dict


def get_app_root() -> Path:
    """Project root: folder holding the executable when frozen, else the folder of config.py."""
    if getattr(sys, "frozen", False):
        return Path(sys.executable).resolve().parent
    return Path(__file__).resolve().parent


# data/runs (inside data)
_RUNS_DIR = get_app_root() / "data" / "runs"


def get_output_dir() -> Path:
    """Output root for run artifacts; VALVE_OUTPUT_DIR overrides data/runs."""
    env = os.getenv("VALVE_OUTPUT_DIR")
    return Path(env).expanduser().resolve() if env else _RUNS_DIR


def get_log_level() -> str:
    if os.getenv("DEBUG"):
        return "DEBUG"
    return os.getenv("VALVE_LOG_LEVEL", "INFO").upper()


def get_default_jobs() -> int:
    try:
        return max(1, int(os.getenv("VALVE_JOBS", "1")))
    except ValueError:
        return 1


# System defaults (texture set: alpha = pi/20, gamma = 0.002)
SYSTEM_DEFAULTS: Dict[str, float] = {
    "alpha": pi / 20,
    "gamma": 0.002,
    "lam": 0.025,
    "g": 0.9,
    # a - pi/2 with a = pi/4: condensate spin along s_+
    "epsilon": 7 * pi / 4,
}

SPIN_DEFAULTS: Dict[str, float] = {
    "a": pi / 4,
    "b": pi / 2,
}

# phi range in units of pi
SCAN_DEFAULTS = {
    "phi_min": 0.001,
    "phi_max": 0.999,
    "phi_steps": 500,
    "g_min": 0.02,
    "g_max": 2.0,
    "g_steps": 100,
    "lam_min": 0.02,
    "lam_max": 2.0,
    "lam_steps": 100,
    "n_min": -40,
    "n_max": 40,
    "lam_set": [0.5, 1.0, 1.5],
    "kinds": ["T_plus", "T_minus", "B_plus", "B_minus", "isolation", "conversion"],
}

SIM_DEFAULTS = {
    "s0_ratio": 0.01,
    "s_p": 0.002,
    "n0": -150,
    "j": 1,
    "window": (-400, 400),
    "dt": 0.01,
    "record_every": 2.0,
    "seed": 0,
}

OUTPUT_DEFAULTS = {
    "format": "csv",
}

# Numerical guards
WEAK_INTERACTION_LIMIT = 0.1
PACKET_AMPLITUDE_LIMIT = 0.05
POLE_GUARD = 1e-9
ROOT_XTOL = 1e-14
# |S31| must sit this close to 1/2 for a conversion root to be kept
CONVERSION_CHECK_TOL = 1e-8
MAX_TIME_STEP = 0.02
FIDELITY_FLOOR = 0.99
EDGE_GUARD_SITES = 10
EDGE_TOLERANCE = 1e-6
CONDENSATE_TAIL_FLOOR = 1e-6
LOG_DOMAIN_SITES = 500
