"""
Pydantic models for the run configuration.
"""
import ast
import math
import operator
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from config import OUTPUT_DEFAULTS, SCAN_DEFAULTS, SIM_DEFAULTS, SPIN_DEFAULTS, SYSTEM_DEFAULTS

_BIN_OPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
}


def _eval_node(node: ast.AST) -> float:
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return float(node.value)
    if isinstance(node, ast.Name) and node.id == "pi":
        return math.pi
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        value = _eval_node(node.operand)
        return -value if isinstance(node.op, ast.USub) else value
    if isinstance(node, ast.BinOp) and type(node.op) in _BIN_OPS:
        return _BIN_OPS[type(node.op)](_eval_node(node.left), _eval_node(node.right))
    raise ValueError("only numbers, pi and + - * / are allowed")


def parse_number(value: Any) -> float:
    """Number or simple pi expression such as 'pi/20', '3*pi/4', '-pi/4'."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if isinstance(value, str):
        text = value.strip().replace("π", "pi")
        try:
            return _eval_node(ast.parse(text, mode="eval").body)
        except (SyntaxError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot read {value!r} as a number: {exc}") from None
    raise ValueError(f"cannot read {value!r} as a number")


def parse_list(value: Any) -> List[Any]:
    if isinstance(value, str):
        return [v.strip() for v in value.replace(";", ",").split(",") if v.strip()]
    return list(value)


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class SystemSection(_Section):
    alpha: float = SYSTEM_DEFAULTS["alpha"]
    gamma: float = Field(SYSTEM_DEFAULTS["gamma"], ge=0.0)
    lam: float = Field(SYSTEM_DEFAULTS["lam"], gt=0.0)
    g: float = Field(SYSTEM_DEFAULTS["g"], gt=0.0)
    epsilon: float = SYSTEM_DEFAULTS["epsilon"]

    @field_validator("alpha", "gamma", "lam", "g", "epsilon", mode="before")
    @classmethod
    def _number(cls, v: Any) -> float:
        return parse_number(v)


class SpinSection(_Section):
    a: float = Field(SPIN_DEFAULTS["a"], ge=0.0, le=math.pi)
    b: float = Field(SPIN_DEFAULTS["b"], ge=0.0, le=math.pi)

    @field_validator("a", "b", mode="before")
    @classmethod
    def _number(cls, v: Any) -> float:
        return parse_number(v)


class ScanSection(_Section):
    phi_min: float = Field(SCAN_DEFAULTS["phi_min"], gt=0.0, lt=1.0)
    phi_max: float = Field(SCAN_DEFAULTS["phi_max"], gt=0.0, lt=1.0)
    phi_steps: int = Field(SCAN_DEFAULTS["phi_steps"], ge=2)
    g_min: float = Field(SCAN_DEFAULTS["g_min"], gt=0.0)
    g_max: float = Field(SCAN_DEFAULTS["g_max"], gt=0.0)
    g_steps: int = Field(SCAN_DEFAULTS["g_steps"], ge=1)
    lam_min: float = Field(SCAN_DEFAULTS["lam_min"], gt=0.0)
    lam_max: float = Field(SCAN_DEFAULTS["lam_max"], gt=0.0)
    lam_steps: int = Field(SCAN_DEFAULTS["lam_steps"], ge=1)
    n_min: int = SCAN_DEFAULTS["n_min"]
    n_max: int = SCAN_DEFAULTS["n_max"]
    lam_set: List[float] = Field(default_factory=lambda: list(SCAN_DEFAULTS["lam_set"]))
    kinds: List[str] = Field(default_factory=lambda: list(SCAN_DEFAULTS["kinds"]))

    @field_validator("phi_min", "phi_max", "g_min", "g_max", "lam_min", "lam_max", mode="before")
    @classmethod
    def _number(cls, v: Any) -> float:
        return parse_number(v)

    @field_validator("lam_set", mode="before")
    @classmethod
    def _numbers(cls, v: Any) -> List[float]:
        return [parse_number(x) for x in parse_list(v)]

    @field_validator("kinds", mode="before")
    @classmethod
    def _kinds(cls, v: Any) -> List[str]:
        return [str(x) for x in parse_list(v)]

    @model_validator(mode="after")
    def _ordered(self) -> "ScanSection":
        if self.phi_min >= self.phi_max:
            raise ValueError("scan.phi_min must be below scan.phi_max")
        if self.g_min > self.g_max or self.lam_min > self.lam_max:
            raise ValueError("scan ranges must have min <= max")
        if self.n_min > self.n_max:
            raise ValueError("scan.n_min must not exceed scan.n_max")
        return self


class SimSection(_Section):
    s0_ratio: float = Field(SIM_DEFAULTS["s0_ratio"], ge=0.0)
    s_p: float = Field(SIM_DEFAULTS["s_p"], gt=0.0)
    n0: int = SIM_DEFAULTS["n0"]
    j: int = Field(SIM_DEFAULTS["j"], ge=1, le=4)
    window: Optional[Tuple[int, int]] = None
    dt: float = Field(SIM_DEFAULTS["dt"], gt=0.0)
    t_final: Optional[float] = Field(None, gt=0.0)
    n_cut: Optional[int] = Field(None, ge=0)
    record_every: float = Field(SIM_DEFAULTS["record_every"], gt=0.0)
    kind: Optional[str] = None
    omega: Optional[float] = Field(None, ge=-2.0, le=2.0)
    seed: int = SIM_DEFAULTS["seed"]

    @field_validator("window", mode="before")
    @classmethod
    def _window(cls, v: Any) -> Optional[Tuple[int, int]]:
        if v is None or v == "":
            return None
        items = parse_list(v)
        if len(items) != 2:
            raise ValueError("sim.window needs two site indices n_min, n_max")
        return int(items[0]), int(items[1])

    @field_validator("omega", mode="before")
    @classmethod
    def _omega(cls, v: Any) -> Optional[float]:
        return None if v is None or v == "" else parse_number(v)


class OutputSection(_Section):
    dir: Optional[str] = None
    format: str = OUTPUT_DEFAULTS["format"]

    @field_validator("format")
    @classmethod
    def _format(cls, v: str) -> str:
        v = v.lower()
        if v not in ("csv", "json"):
            raise ValueError("output.format must be csv or json")
        return v


class RunConfig(_Section):
    system: SystemSection = Field(default_factory=SystemSection)
    spin: SpinSection = Field(default_factory=SpinSection)
    scan: ScanSection = Field(default_factory=ScanSection)
    sim: SimSection = Field(default_factory=SimSection)
    output: OutputSection = Field(default_factory=OutputSection)

    def echo(self) -> Dict[str, Any]:
        """JSON-ready copy written into every output header."""
        return self.model_dump(mode="json")

    def merged(self, overrides: Dict[str, Dict[str, Any]]) -> "RunConfig":
        """New config with section-wise overrides applied (None values skipped)."""
        data = self.model_dump()
        for section, values in overrides.items():
            for key, value in values.items():
                if value is not None:
                    data[section][key] = value
        return RunConfig.model_validate(data)
