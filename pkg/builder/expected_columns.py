"""
Column sets of every table the builders produce, and the check run before writing.
"""

from typing import Dict, List

# ─── Modes and textures ────────────────────────────────────────────────────────
DISPERSION_COLUMNS = ["phi", "phi_over_pi", "omega", "velocity"]

CONDENSATE_ENERGY_COLUMNS = ["lam", "g", "Omega", "kappa"]

TEXTURE_COLUMNS = ["mode", "alpha", "n", "sx", "sy", "sz"]

# ─── Scattering ────────────────────────────────────────────────────────────────
SMATRIX_COLUMNS = [
    "phi",
    "phi_over_pi",
    "omega",
    "mu",
    "abs_s11",
    "abs_s33",
    "abs_s31",
    "abs_s13",
    "flux_residual",
    "c_y",
    "near_pole",
]

# ─── Operating points ──────────────────────────────────────────────────────────
FEASIBILITY_COLUMNS = ["g", "lam", "kind", "mu", "omega", "feasible"]

CRITICAL_POINT_COLUMNS = [
    "kind",
    "g",
    "lam",
    "mu",
    "omega",
    "feasible",
    "epsilon",
    "abs_s11",
    "abs_s33",
    "abs_s31",
    "abs_s13",
]

# ─── Simulation ────────────────────────────────────────────────────────────────
SIM_SERIES_COLUMNS = ["t", "T_plus", "T_minus", "R_plus", "R_minus", "core", "fidelity", "norm", "energy"]

SIM_COMPARISON_COLUMNS = ["channel", "simulated", "predicted", "predicted_centre", "difference"]

COLUMNS_BY_TABLE: Dict[str, List[str]] = {
    "dispersion": DISPERSION_COLUMNS,
    "condensate_energy": CONDENSATE_ENERGY_COLUMNS,
    "texture": TEXTURE_COLUMNS,
    "smatrix": SMATRIX_COLUMNS,
    "feasibility": FEASIBILITY_COLUMNS,
    "critical_points": CRITICAL_POINT_COLUMNS,
    "sim_series": SIM_SERIES_COLUMNS,
    "sim_comparison": SIM_COMPARISON_COLUMNS,
}


def validate_columns(table: str, columns: List[str]) -> List[str]:
    """
    Check a table's columns against its schema.
    Returns a list of error strings (empty when valid).
    """
    expected = COLUMNS_BY_TABLE.get(table)
    if expected is None:
        return [f"Unknown table: {table}"]
    errors: List[str] = []
    present = set(columns)
    for col in expected:
        if col not in present:
            errors.append(f"Missing column: {col}")
    extra = [c for c in columns if c not in expected]
    if extra:
        errors.append(f"Unexpected columns: {', '.join(extra)}")
    return errors


def get_columns_list(table: str) -> List[str]:
    return list(COLUMNS_BY_TABLE.get(table, []))
