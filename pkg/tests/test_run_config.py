import json
import math

import pytest

from cli.models import RunConfig, parse_list, parse_number
from cli.run_config import apply_overrides, load_run_config, resolve_output_dir
from valve.errors import ValidationError

INI = """
[system]
alpha = pi/20
g = 0.9
lam = 0.025   # interspecies ratio
epsilon = -pi/4

[spin]
a = π/4
b = pi/2

[sim]
window = -500, 500
n0 = -200

[output]
format = json
"""


def test_parse_number_expressions():
    assert parse_number("pi/20") == pytest.approx(math.pi / 20)
    assert parse_number("3*pi/4") == pytest.approx(3 * math.pi / 4)
    assert parse_number("-π/4") == pytest.approx(-math.pi / 4)
    assert parse_number(2) == 2.0
    for bad in ("__import__('os')", "pi**2", "1/0", True):
        with pytest.raises(ValueError):
            parse_number(bad)


def test_parse_list():
    assert parse_list("0.1, 0.5; 1") == ["0.1", "0.5", "1"]
    assert parse_list([1, 2]) == [1, 2]


def test_load_ini(tmp_path):
    path = tmp_path / "run.ini"
    path.write_text(INI, encoding="utf-8")
    cfg = load_run_config(path)
    assert cfg.system.alpha == pytest.approx(math.pi / 20)
    assert cfg.system.lam == pytest.approx(0.025)
    assert cfg.spin.a == pytest.approx(math.pi / 4)
    assert cfg.sim.window == (-500, 500)
    assert cfg.output.format == "json"
    # untouched sections keep their defaults
    assert cfg.scan == RunConfig().scan


def test_load_json(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"system": {"g": 0.69, "lam": "0.1"}, "scan": {"kinds": "T_plus, B_plus"}}))
    cfg = load_run_config(path)
    assert cfg.system.g == pytest.approx(0.69)
    assert cfg.scan.kinds == ["T_plus", "B_plus"]


@pytest.mark.parametrize(
    "text",
    [
        "[plot]\ncolor = red\n",
        "[system]\ng = -1\n",
        "[system]\nspeed = 3\n",
        "[scan]\nphi_min = 0.9\nphi_max = 0.1\n",
        "[output]\nformat = xlsx\n",
        "[sim]\nwindow = 1, 2, 3\n",
    ],
)
def test_invalid_configs(tmp_path, text):
    path = tmp_path / "bad.ini"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(ValidationError):
        load_run_config(path)


def test_missing_file(tmp_path):
    with pytest.raises(ValidationError):
        load_run_config(tmp_path / "nope.ini")


def test_echo_round_trip(tmp_path):
    path = tmp_path / "run.ini"
    path.write_text(INI, encoding="utf-8")
    cfg = load_run_config(path)
    echoed = tmp_path / "echo.json"
    echoed.write_text(json.dumps(cfg.echo()), encoding="utf-8")
    assert load_run_config(echoed) == cfg


def test_overrides_skip_none():
    cfg = apply_overrides(RunConfig(), {"output": {"format": None}, "sim": {"seed": 7}})
    assert cfg.output.format == RunConfig().output.format
    assert cfg.sim.seed == 7
    with pytest.raises(ValidationError):
        apply_overrides(RunConfig(), {"output": {"format": "xml"}})


def test_output_dir_precedence(tmp_path, monkeypatch):
    monkeypatch.setenv("VALVE_OUTPUT_DIR", str(tmp_path / "env"))
    cfg = RunConfig()
    assert resolve_output_dir(cfg) == (tmp_path / "env").resolve()
    cfg = apply_overrides(cfg, {"output": {"dir": str(tmp_path / "cfg")}})
    assert resolve_output_dir(cfg) == tmp_path / "cfg"
    assert resolve_output_dir(cfg, str(tmp_path / "cli")) == tmp_path / "cli"
