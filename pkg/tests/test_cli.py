import json

import numpy as np
import pytest

from cli.main import main
from utils.table_io import read_config_echo, read_table

SMALL_SCAN = """
[scan]
phi_steps = 120
g_steps = 4
lam_steps = 3
"""


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / "small.ini"
    path.write_text(SMALL_SCAN, encoding="utf-8")
    return path


def _config(tmp_path, text, name="run.ini"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_smatrix_writes_table_with_echo(tmp_path, small_config):
    out = tmp_path / "out"
    assert main(["smatrix", "--config", str(small_config), "--out", str(out)]) == 0
    table = out / "smatrix.csv"
    assert table.read_text(encoding="utf-8").startswith("# config: ")
    df = read_table(table)
    assert len(df) == 120
    assert df["flux_residual"].max() < 1e-10
    assert read_config_echo(table)["scan"]["phi_steps"] == 120


def test_rerun_from_echo_is_byte_identical(tmp_path, small_config):
    first = tmp_path / "first"
    assert main(["smatrix", "--config", str(small_config), "--out", str(first)]) == 0
    echo = read_config_echo(first / "smatrix.csv")
    replay = _config(tmp_path, json.dumps(echo), name="echo.json")
    second = tmp_path / "second"
    assert main(["smatrix", "--config", replay, "--out", str(second)]) == 0
    assert (first / "smatrix.csv").read_bytes() == (second / "smatrix.csv").read_bytes()


def test_json_format(tmp_path, small_config):
    out = tmp_path / "out"
    assert main(["smatrix", "--config", str(small_config), "--out", str(out), "--format", "json"]) == 0
    data = json.loads((out / "smatrix.json").read_text(encoding="utf-8"))
    assert data["config"]["output"]["format"] == "json"
    assert len(data["rows"]) == 120


def test_isolation_outside_band_exits_3(tmp_path):
    cfg = _config(tmp_path, "[system]\ng = 10\n")
    assert main(["isolate", "--config", cfg, "--out", str(tmp_path / "out")]) == 3


def test_isolation_inside_band(tmp_path):
    cfg = _config(tmp_path, "[system]\ng = 0.7788\n")
    out = tmp_path / "out"
    assert main(["isolate", "--config", cfg, "--out", str(out)]) == 0
    df = read_table(out / "isolation.csv")
    assert df["omega"].iloc[0] == pytest.approx(-1.972, abs=5e-4)


def test_invalid_parameter_exits_2(tmp_path):
    cfg = _config(tmp_path, "[system]\ng = -1\n")
    assert main(["isolate", "--config", cfg, "--out", str(tmp_path / "out")]) == 2


def test_conversion_without_root_exits_3(tmp_path):
    cfg = _config(tmp_path, "[system]\ng = 5\nlam = 0.1\n[spin]\nb = pi/2\n")
    assert main(["convert", "--config", cfg, "--out", str(tmp_path / "out")]) == 3


def test_map_single_kind(tmp_path, small_config):
    out = tmp_path / "out"
    assert main(["map", "--kind", "T_plus", "--config", str(small_config), "--out", str(out)]) == 0
    df = read_table(out / "map_T_plus.csv")
    assert len(df) == 12
    assert set(df["kind"]) == {"T_plus"}


def test_criticals_listing(tmp_path):
    cfg = _config(tmp_path, "[system]\ng = 0.9\nlam = 0.025\n[scan]\nkinds = T_plus, B_plus\n")
    out = tmp_path / "out"
    assert main(["criticals", "--config", cfg, "--out", str(out)]) == 0
    df = read_table(out / "critical_points.csv")
    assert list(df["kind"]) == ["T_plus", "B_plus"]
    assert df["omega"].iloc[0] == pytest.approx(-1.972971, abs=1e-6)


def test_unknown_preset_exits_2(tmp_path):
    assert main(["simulate", "--preset", "nope", "--out", str(tmp_path / "out")]) == 2


def test_reproduce_supp_writes_summary(tmp_path, small_config):
    out = tmp_path / "supp"
    assert main(["reproduce-supp", "--config", str(small_config), "--out", str(out)]) == 0
    summary = json.loads((out / "summary.json").read_text(encoding="utf-8"))
    assert summary["ok"] is True
    assert sorted(summary["outputs"]) == ["smatrix_nonreciprocal.csv", "smatrix_reciprocal.csv"]
    reciprocal = read_table(out / "smatrix_reciprocal.csv")
    np.testing.assert_allclose(reciprocal["abs_s11"], reciprocal["abs_s33"], atol=1e-12)
    nonreciprocal = read_table(out / "smatrix_nonreciprocal.csv")
    assert nonreciprocal["c_y"].iloc[0] == pytest.approx(-0.612372, abs=1e-6)


def test_reproduce_textures_have_period_twenty(tmp_path, small_config):
    out = tmp_path / "fig"
    assert main(["reproduce-fig2", "--config", str(small_config), "--out", str(out)]) == 0
    df = read_table(out / "texture_period20.csv")
    plus = df[df["mode"] == "transmission_plus"].set_index("n")
    shifted = plus.loc[plus.index + 20 <= plus.index.max()]
    np.testing.assert_allclose(
        shifted[["sx", "sy", "sz"]].to_numpy(),
        plus.loc[shifted.index + 20, ["sx", "sy", "sz"]].to_numpy(),
        atol=1e-12,
    )
    assert (out / "texture_period10.csv").exists()
    assert set(df["mode"]) == {"transmission_plus", "transmission_minus", "localized"}


def test_short_simulation_writes_series_and_summary(tmp_path):
    cfg = _config(
        tmp_path,
        "[system]\ng = 0.9\nlam = 0.025\ngamma = 0.002\nepsilon = 7*pi/4\n"
        "[sim]\nomega = 0\nn0 = -80\ns_p = 0.01\nwindow = -150, 150\nt_final = 20\ndt = 0.02\nn_cut = 26\n",
    )
    out = tmp_path / "out"
    assert main(["simulate", "--config", cfg, "--out", str(out), "--seed", "11"]) == 0
    series = read_table(out / "simulation_series.csv")
    assert series["t"].iloc[-1] == pytest.approx(20.0)
    assert series["R_plus"].iloc[0] == pytest.approx(1.0, abs=1e-6)
    summary = json.loads((out / "simulation_summary.json").read_text(encoding="utf-8"))
    assert summary["config"]["sim"]["seed"] == 11
    assert summary["params"]["window"] == [-150, 150]
    comparison = read_table(out / "simulation_comparison.csv")
    assert list(comparison["channel"]) == ["T_plus", "T_minus", "R_plus", "R_minus"]
