"""Reflection coefficients on the imaginary frequency axis.

Dispatch follows one rule: local models (Drude, plasma, user-supplied) use
the Fresnel formulas at every Matsubara index; the nonlocal model uses the
closed zero-frequency forms at ``l = 0`` and quadrature impedances at
``l >= 1``.

Nonzero frequencies are described by ``p = k_perp c / xi`` so that
``c q / xi = sqrt(1 + p**2)``; the zero frequency is described by
``k_perp`` itself (1/m).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Union

import numpy as np

from .constants import HBAR_C_EV_M
from .impedance import (
    IMPEDANCE_SPEC,
    ModelError,
    b_longitudinal,
    b_transverse,
    rho_branch_factor,
    z_local,
    z_nonlocal_te,
    z_nonlocal_tm,
)
from .materials import (
    MaterialSpec,
    drude_permittivity_imag,
    plasma_permittivity_imag,
    permeability_at_matsubara,
)
from .numerics import QuadratureSpec


class Model(str, Enum):
    DRUDE = "drude"
    PLASMA = "plasma"
    NONLOCAL = "nonlocal"

    @classmethod
    def parse(cls, name) -> "Model":
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).strip().lower())
        except ValueError:
            raise ValueError(f"unknown response model {name!r}") from None


@dataclass(frozen=True)
class UserLocal:
    """A local response model with a user-supplied ``eps(i xi)``.

    ``eps`` maps ``hbar*xi`` (eV, array) to real permittivities. ``eps_static``
    is the finite static permittivity of a dielectric; ``None`` means the
    permittivity diverges at zero frequency like a Drude metal.
    """

    eps: Callable[[np.ndarray], np.ndarray]
    eps_static: float | None = None
    name: str = "user-local"


ResponseModel = Union[Model, UserLocal]


@dataclass(frozen=True)
class ReflectionPair:
    r_tm: np.ndarray | float
    r_te: np.ndarray | float
    l: int
    k_perp: np.ndarray | float | None = None


def _local_eps(m: MaterialSpec, model: ResponseModel, hbar_xi):
    if isinstance(model, UserLocal):
        return np.asarray(model.eps(np.asarray(hbar_xi, dtype=float)), dtype=float)
    if model is Model.DRUDE:
        return drude_permittivity_imag(m, hbar_xi)
    if model is Model.PLASMA:
        return plasma_permittivity_imag(m, hbar_xi)
    raise ModelError(f"{model} has no local permittivity")


def fresnel_coefficients(eps, mu, p):
    """Fresnel ``(r_TM, r_TE)`` with ``c q / xi = sqrt(1+p^2)``."""
    p = np.asarray(p, dtype=float)
    q = np.sqrt(1.0 + p * p)
    kn = np.sqrt(p * p + eps * mu)
    return (eps * q - kn) / (eps * q + kn), (mu * q - kn) / (mu * q + kn)


def fresnel_pair(m: MaterialSpec, model: ResponseModel, hbar_xi: float, p, l: int = 1) -> ReflectionPair:
    if l < 1:
        raise ValueError("fresnel_pair handles l >= 1; use fresnel_zero")
    eps = _local_eps(m, model, hbar_xi)
    mu = permeability_at_matsubara(m, l)
    r_tm, r_te = fresnel_coefficients(eps, mu, p)
    return ReflectionPair(r_tm, r_te, l, np.asarray(p) * hbar_xi / HBAR_C_EV_M)


def fresnel_zero(m: MaterialSpec, model: ResponseModel, k_perp) -> ReflectionPair:
    """Zero-frequency limit of the Fresnel coefficients for a local model."""
    k = np.asarray(k_perp, dtype=float)
    mu0 = m.mu_static
    ones = np.ones_like(k)
    if isinstance(model, UserLocal) and model.eps_static is not None:
        e0 = model.eps_static
        return ReflectionPair((e0 - 1) / (e0 + 1) * ones, (mu0 - 1) / (mu0 + 1) * ones, 0, k)
    if model is Model.PLASMA:
        # eps xi^2 -> omega_p^2 as xi -> 0
        kp = m.hbar_omega_p / HBAR_C_EV_M
        root = np.sqrt(k * k + mu0 * kp * kp)
        return ReflectionPair(ones, (mu0 * k - root) / (mu0 * k + root), 0, k)
    if model is Model.DRUDE or isinstance(model, UserLocal):
        # eps xi^2 -> 0: the TE coefficient keeps only its magnetic part
        return ReflectionPair(ones, (mu0 - 1) / (mu0 + 1) * ones, 0, k)
    raise ModelError(f"{model} is not a local model")


def nonlocal_zero_tm(m: MaterialSpec, k_perp):
    """Zero-frequency TM coefficient of the nonlocal model."""
    k = np.asarray(k_perp, dtype=float)
    if m.hbar_gamma == 0:
        raise ModelError("nonlocal zero-frequency forms need gamma > 0")
    b = b_longitudinal(m)
    if np.isinf(b):
        # v_L -> 0: the Drude limit
        out = np.ones_like(k)
    else:
        g = 2.0 * rho_branch_factor(k / b)
        out = (np.pi - g) / (np.pi + g)
    return float(out) if out.ndim == 0 else out


def nonlocal_zero_te(m: MaterialSpec, mu0: float, k_perp):
    """Zero-frequency TE coefficient of the nonlocal model."""
    k = np.asarray(k_perp, dtype=float)
    if m.hbar_gamma == 0:
        raise ModelError("nonlocal zero-frequency forms need gamma > 0")
    if m.v_tr == 0:
        # B -> 0: the Drude limit
        out = (mu0 - 1.0) / (mu0 + 1.0) * np.ones_like(k)
    else:
        B = b_transverse(m, mu0)
        g = 2.0 * mu0 * rho_branch_factor(k / B)
        out = (g - np.pi) / (g + np.pi)
    return float(out) if out.ndim == 0 else out


def impedance_coefficients_to_reflection(z_tm, z_te, p):
    """Reflection coefficients from dimensionless surface impedances."""
    q = np.sqrt(1.0 + np.asarray(p, dtype=float) ** 2)
    return (q - z_tm) / (q + z_tm), (q * z_te - 1.0) / (q * z_te + 1.0)


def impedance_pair(m: MaterialSpec, model: ResponseModel, hbar_xi: float, p, l: int = 1,
                   spec: QuadratureSpec = IMPEDANCE_SPEC) -> ReflectionPair:
    if l < 1:
        raise ValueError("impedance_pair handles l >= 1")
    mu = permeability_at_matsubara(m, l)
    if model is Model.NONLOCAL:
        z_tm = z_nonlocal_tm(m, hbar_xi, p, mu, spec)
        z_te = z_nonlocal_te(m, hbar_xi, p, mu, spec)
    else:
        z_tm, z_te = z_local(_local_eps(m, model, hbar_xi), mu, p)
    r_tm, r_te = impedance_coefficients_to_reflection(z_tm, z_te, p)
    return ReflectionPair(r_tm, r_te, l, np.asarray(p) * hbar_xi / HBAR_C_EV_M)


def reflection_pair(m: MaterialSpec, model: ResponseModel, l: int, hbar_xi: float, *,
                    p=None, k_perp=None, spec: QuadratureSpec = IMPEDANCE_SPEC) -> ReflectionPair:
    """Reflection coefficients for Matsubara index ``l``.

    Pass ``k_perp`` (1/m) for ``l = 0`` and either ``p`` or ``k_perp`` for
    ``l >= 1``.
    """
    if isinstance(model, str) and not isinstance(model, Model):
        model = Model.parse(model)
    if l == 0:
        if k_perp is None:
            raise ValueError("l = 0 needs k_perp")
        if model is Model.NONLOCAL:
            k = np.asarray(k_perp, dtype=float)
            return ReflectionPair(nonlocal_zero_tm(m, k), nonlocal_zero_te(m, m.mu_static, k), 0, k)
        return fresnel_zero(m, model, k_perp)
    if p is None:
        if k_perp is None:
            raise ValueError("need p or k_perp")
        p = np.asarray(k_perp, dtype=float) * HBAR_C_EV_M / hbar_xi
    if model is Model.NONLOCAL:
        return impedance_pair(m, model, hbar_xi, p, l, spec)
    return fresnel_pair(m, model, hbar_xi, p, l)
