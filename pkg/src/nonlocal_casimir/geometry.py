"""Sphere-plate observables in the proximity force approximation."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .constants import HBAR_C_EV_M
from scipy.constants import e as _E_CHARGE

# hbar c in J m
_HBAR_C_J_M = HBAR_C_EV_M * _E_CHARGE


class TableRangeError(ValueError):
    """A correction table was evaluated outside its separation range."""


@dataclass(frozen=True)
class SeparationTable:
    """Two-column ``(a_m, value)`` table, linearly interpolated in ``a``."""

    a: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.a) != len(self.values) or len(self.a) < 1:
            raise ValueError("table columns must be nonempty and of equal length")
        if any(x2 <= x1 for x1, x2 in zip(self.a, self.a[1:])):
            raise ValueError("table separations must be strictly increasing")

    @classmethod
    def from_csv(cls, path):
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        if not rows:
            raise ValueError(f"{path}: empty table")
        body = rows[1:] if not _is_number(rows[0][0]) else rows
        a = tuple(float(r[0]) for r in body if r)
        v = tuple(float(r[1]) for r in body if r)
        return cls(a, v)

    def __call__(self, a: float) -> float:
        lo, hi = self.a[0], self.a[-1]
        if not lo * (1 - 1e-12) <= a <= hi * (1 + 1e-12):
            raise TableRangeError(f"separation {a:g} m outside table range [{lo:g}, {hi:g}]")
        return float(np.interp(a, self.a, self.values))


def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


Theta = Union[float, SeparationTable, None]


@dataclass(frozen=True)
class SpherePlateConfig:
    """Sphere radius and the optional beyond-PFA corrections.

    ``theta`` enters the force gradient as ``1 + theta a / R``;
    ``correction`` multiplies the PFA force. Both are external inputs.
    """

    R: float
    theta: Theta = None
    correction: Union[float, SeparationTable, None] = None

    def __post_init__(self):
        if not self.R > 0:
            raise ValueError("sphere radius must be positive")
        if isinstance(self.theta, (int, float)) and not -1.0 <= self.theta <= 0.0:
            raise ValueError("theta must satisfy -1 <= theta <= 0")

    def theta_at(self, a: float) -> float:
        if self.theta is None:
            return 0.0
        if isinstance(self.theta, SeparationTable):
            return self.theta(a)
        return float(self.theta)

    def correction_at(self, a: float) -> float:
        if self.correction is None:
            return 1.0
        if isinstance(self.correction, SeparationTable):
            return self.correction(a)
        return float(self.correction)

    def pfa_warning(self, a: float) -> bool:
        """True when ``a / R`` exceeds the 0.1 validity threshold of the PFA."""
        return a / self.R >= 0.1


def effective_pressure(force_gradient_value: float, R: float) -> float:
    """Plate-plate pressure inferred from a measured sphere-plate force gradient."""
    if not R > 0:
        raise ValueError("R must be positive")
    return -force_gradient_value / (2.0 * math.pi * R)


def pfa_force(free_energy_per_area: float, R: float, correction: float = 1.0) -> float:
    """Sphere-plate force ``2 pi R F(a)`` times an optional correction factor."""
    if not R > 0:
        raise ValueError("R must be positive")
    return 2.0 * math.pi * R * free_energy_per_area * correction


def force_gradient(pressure_value: float, a: float, config: SpherePlateConfig) -> float:
    """Sphere-plate force gradient ``-2 pi R P (1 + theta a / R)``."""
    R = config.R
    return -2.0 * math.pi * R * pressure_value * (1.0 + config.theta_at(a) * a / R)


def ideal_metal_pressure(a: float) -> float:
    """Zero-temperature pressure between ideal-metal plates, ``-pi^2 hbar c / (240 a^4)``."""
    if not a > 0:
        raise ValueError("separation must be positive")
    return -math.pi**2 * _HBAR_C_J_M / (240.0 * a**4)


def ideal_metal_free_energy(a: float) -> float:
    """Zero-temperature free energy per area for ideal-metal plates."""
    if not a > 0:
        raise ValueError("separation must be positive")
    return -math.pi**2 * _HBAR_C_J_M / (720.0 * a**3)
