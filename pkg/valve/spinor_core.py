"""
Two-component spinor algebra on single lattice sites.

Spinors are complex numpy arrays of shape (2,) (or (N, 2) for a lattice slice),
2x2 operators are complex arrays of shape (2, 2) and spin vectors are real
arrays (sx, sy, sz) of shape (3,) (or (N, 3)).
"""
from __future__ import annotations

from typing import Union

import numpy as np

from valve.errors import ValidationError

Spinor = np.ndarray
Matrix2 = np.ndarray
SpinVector = np.ndarray
IntLike = Union[int, np.ndarray]

IDENTITY = np.eye(2, dtype=complex)

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli(axis: str) -> Matrix2:
    try:
        return _PAULI[axis].copy()
    except (KeyError, TypeError):
        raise ValidationError(f"unknown Pauli axis {axis!r}, expected one of x, y, z") from None


def rotation_matrix(alpha: float, n: int) -> Matrix2:
    """R^n = exp(-i sigma_y n alpha), evaluated from cos/sin of n*alpha."""
    theta = n * alpha
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rotate_spinors(alpha: float, n: IntLike, psi: np.ndarray) -> np.ndarray:
    """Apply R^n site by site; n broadcasts against the leading axis of psi."""
    psi = np.asarray(psi, dtype=complex)
    theta = np.asarray(n, dtype=float) * alpha
    c, s = np.cos(theta), np.sin(theta)
    up, down = psi[..., 0], psi[..., 1]
    return np.stack([c * up - s * down, s * up + c * down], axis=-1)


def spin_expectation(psi: Spinor) -> SpinVector:
    """(psi^+ sx psi, psi^+ sy psi, psi^+ sz psi) for a spinor or a stack of spinors."""
    psi = np.asarray(psi, dtype=complex)
    up, down = psi[..., 0], psi[..., 1]
    cross = np.conj(up) * down
    return np.stack(
        [2.0 * cross.real, 2.0 * cross.imag, np.abs(up) ** 2 - np.abs(down) ** 2],
        axis=-1,
    )


def rotate_about_y(s: SpinVector, angle: IntLike) -> SpinVector:
    """Right-handed rotation of spin vectors about the y axis."""
    s = np.asarray(s, dtype=float)
    c, sn = np.cos(angle), np.sin(angle)
    x, y, z = s[..., 0], s[..., 1], s[..., 2]
    return np.stack([c * x + sn * z, y, -sn * x + c * z], axis=-1)


def norm_squared(psi: Spinor) -> Union[float, np.ndarray]:
    psi = np.asarray(psi, dtype=complex)
    return np.sum(np.abs(psi) ** 2, axis=-1)
