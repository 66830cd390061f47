"""
SystemParams: every tunable of the lattice + condensate + incident-spin setup.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, replace
from typing import Any, Dict

import numpy as np

from valve.errors import ValidationError
from valve.modes import LocalizedMode, condensate_energy, decay_factor, localized_mode, validate_spin_angles
from valve.scattering import ScatterParams
from valve.utils_core import require_finite, require_positive, wrap_angle


@dataclass(frozen=True)
class SystemParams:
    """
    alpha: SOC angle, gamma: interaction strength (gamma = 0 gives a free lattice),
    lam: interspecies ratio, g: localization grade, epsilon: condensate spin angle,
    a, b: incident spin-basis angles.
    """

    g: float
    lam: float
    gamma: float = 0.002
    epsilon: float = 0.0
    alpha: float = np.pi / 20
    a: float = np.pi / 4
    b: float = np.pi / 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "g", require_positive("g", self.g))
        object.__setattr__(self, "lam", require_positive("lam", self.lam))
        gamma = require_finite("gamma", self.gamma)
        if gamma < 0.0:
            raise ValidationError(f"gamma must be >= 0 (repulsive sign not supported), got {gamma}")
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "alpha", require_finite("alpha", self.alpha))
        object.__setattr__(self, "epsilon", wrap_angle(require_finite("epsilon", self.epsilon)))
        a, b = validate_spin_angles(self.a, self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def energy(self) -> float:
        return condensate_energy(self.g, self.lam)

    @property
    def kappa(self) -> float:
        return decay_factor(self.energy)

    @property
    def atom_number(self) -> float:
        return -2.0 * self.energy / ((1.0 + self.lam) * self.gamma)

    def mode(self) -> LocalizedMode:
        return localized_mode(self.g, self.lam, self.gamma, self.epsilon, self.alpha)

    def scatter(self) -> ScatterParams:
        return ScatterParams(g=self.g, lam=self.lam, epsilon=self.epsilon, a=self.a, b=self.b, alpha=self.alpha)

    def with_(self, **changes: Any) -> "SystemParams":
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, float]:
        out = asdict(self)
        out["Omega"] = self.energy
        out["kappa"] = self.kappa
        if self.gamma > 0:
            out["atom_number"] = self.atom_number
        return out
