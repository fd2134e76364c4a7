"""Surface impedances for specular reflection of electrons.

Impedances here are dimensionless: they are the impedances of the
reflection formulas with ``c q / xi`` written as ``sqrt(1 + p**2)`` and
``p = k_perp c / xi``. At the zero Matsubara frequency the impedances
diverge or vanish like ``1/xi`` or ``xi``; the finite coefficients of those
limits are returned instead (see :func:`z0_tm` and :func:`z0_te`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import C_M_S, HBAR_C_EV_M
from .materials import MaterialSpec, core_permittivity_imag
from .numerics import QuadratureSpec, integrate


class ModelError(ValueError):
    """A closed form was requested outside its domain of validity."""


IMPEDANCE_SPEC = QuadratureSpec(rel_tol=1e-9, mapping="exponential", initial_panels=16)

# below this distance from the branch point a series replaces the closed forms
_BRANCH_WINDOW = 1e-6


@dataclass(frozen=True)
class ImpedanceCoefficients:
    eps_core: float
    A: float  # eps_c + wp^2 / (xi (xi + gamma))
    D: float  # wp^2 v_tr / (xi (xi + gamma) c)


def impedance_coefficients(m: MaterialSpec, hbar_xi: float) -> ImpedanceCoefficients:
    if not hbar_xi > 0:
        raise ModelError("impedance coefficients need xi > 0")
    eps_c = float(core_permittivity_imag(m.core, hbar_xi))
    drude = m.hbar_omega_p**2 / (hbar_xi * (hbar_xi + m.hbar_gamma))
    return ImpedanceCoefficients(eps_c, eps_c + drude, drude * m.v_tr / C_M_S)


def b_longitudinal(m: MaterialSpec) -> float:
    """``omega_p**2 / (gamma v_L)`` in 1/m; infinite when gamma or v_L vanish."""
    if m.hbar_gamma == 0 or m.v_l == 0:
        return math.inf
    return m.hbar_omega_p**2 / (m.hbar_gamma * HBAR_C_EV_M * (m.v_l / C_M_S))


def b_transverse(m: MaterialSpec, mu0: float) -> float:
    """``mu0 omega_p**2 v_Tr / (gamma c**2)`` in 1/m."""
    if m.hbar_gamma == 0:
        return math.inf
    return mu0 * m.hbar_omega_p**2 * (m.v_tr / C_M_S) / (m.hbar_gamma * HBAR_C_EV_M)


def z_local(eps, mu, p):
    """Local impedances ``(Z_TM, Z_TE)`` for imaginary-axis ``eps``, ``mu``."""
    root = np.sqrt(np.asarray(p, dtype=float) ** 2 + eps * mu)
    return root / eps, mu / root


def _as_batch(p):
    p = np.asarray(p, dtype=float)
    if np.any(p < 0):
        raise ValueError("p must be nonnegative")
    return p, p.reshape(-1)


def _finish(shape, values):
    values = np.asarray(values).reshape(shape)
    return float(values) if values.ndim == 0 else values


def z_nonlocal_te(m: MaterialSpec, hbar_xi: float, p, mu: float = 1.0,
                  spec: QuadratureSpec = IMPEDANCE_SPEC):
    """Nonlocal TE impedance at a nonzero Matsubara frequency.

    ``(2 mu / pi) * int_0^inf dx / (mu (A + D sqrt(p^2 + x^2)) + p^2 + x^2)``
    """
    c = impedance_coefficients(m, hbar_xi)
    p_in, p = _as_batch(p)
    p2 = p[:, None] ** 2
    s = np.sqrt(mu * c.A + p**2)[:, None]

    def f(u):
        x = s * u
        root = np.sqrt(p2 + x * x)
        return s / (mu * (c.A + c.D * root) + p2 + x * x)

    val = integrate(f, 0.0, math.inf, spec).value
    return _finish(p_in.shape, 2.0 * mu / math.pi * val)


def z_nonlocal_tm(m: MaterialSpec, hbar_xi: float, p, mu: float = 1.0,
                  spec: QuadratureSpec = IMPEDANCE_SPEC):
    """Nonlocal TM impedance at a nonzero Matsubara frequency.

    Sum of the longitudinal integral and the transverse integral obtained by
    inserting the nonlocal permittivities into the specular-reflection
    impedance. The longitudinal kernel ``1/eps_L`` is used exactly, i.e.
    ``(1 + w)/(A + eps_c w)`` with ``w = v_L sqrt(p^2 + x^2) / c``.
    """
    c = impedance_coefficients(m, hbar_xi)
    vl = m.v_l / C_M_S
    p_in, p = _as_batch(p)
    p2 = p[:, None] ** 2
    s = np.sqrt(mu * c.A + p**2)[:, None]

    def transverse(u):
        x = s * u
        x2 = x * x
        root = np.sqrt(p2 + x2)
        return s * x2 / ((p2 + x2) * (mu * (c.A + c.D * root) + p2 + x2))

    total = 2.0 * mu / math.pi * integrate(transverse, 0.0, math.inf, spec).value

    pos = p > 0
    if np.any(pos):
        pp = p[pos][:, None]

        # x = p u
        def longitudinal(u):
            w = vl * pp * np.sqrt(1.0 + u * u)
            return (1.0 + w) / ((1.0 + u * u) * (c.A + c.eps_core * w))

        lval = integrate(longitudinal, 0.0, math.inf, spec).value
        total[pos] += 2.0 / math.pi * p[pos] * lval
    return _finish(p_in.shape, total)


def _branch_factor(rho):
    """``F(rho) = int_0^inf dt / (1 + rho cosh t)``, both closed-form branches.

    ``F(rho) = arccosh(1/rho)/sqrt(1-rho^2)`` for ``rho < 1`` and
    ``arccos(1/rho)/sqrt(rho^2-1)`` for ``rho > 1``; near ``rho = 1`` a
    second-order Taylor series avoids 0/0.
    """
    rho = np.asarray(rho, dtype=float)
    out = np.full_like(rho, np.inf)
    d = rho - 1.0
    near = np.abs(d) < _BRANCH_WINDOW
    lo = (rho > 0.0) & (rho < 1.0) & ~near
    hi = (rho > 1.0) & ~near
    out[near] = 1.0 - 2.0 / 3.0 * d[near] + 7.0 / 15.0 * d[near] ** 2
    r = rho[lo]
    out[lo] = np.log((1.0 + np.sqrt(1.0 - r * r)) / r) / np.sqrt(1.0 - r * r)
    r = rho[hi]
    out[hi] = np.arccos(1.0 / r) / np.sqrt(r * r - 1.0)
    return out


def rho_branch_factor(rho):
    """``rho * F(rho)``, continued by its limit 0 at ``rho = 0``."""
    rho = np.asarray(rho, dtype=float)
    with np.errstate(invalid="ignore"):
        out = np.where(rho > 0, rho * _branch_factor(rho), 0.0)
    return out


def z0_tm(m: MaterialSpec, k_perp):
    """Coefficient ``xi_0 Z_TM / c`` (1/m) of the zero-frequency TM impedance."""
    b = b_longitudinal(m)
    if math.isinf(b):
        raise ModelError("zero-frequency nonlocal TM form needs gamma > 0 and v_L > 0")
    k = np.asarray(k_perp, dtype=float)
    out = 2.0 * k / math.pi * rho_branch_factor(k / b)
    return float(out) if out.ndim == 0 else out


def z0_te(m: MaterialSpec, mu0: float, k_perp):
    """Coefficient ``c Z_TE / xi_0`` (m) of the zero-frequency TE impedance."""
    B = b_transverse(m, mu0)
    if m.v_tr == 0 or math.isinf(B):
        raise ModelError("zero-frequency nonlocal TE form needs gamma > 0 and v_Tr > 0")
    k = np.asarray(k_perp, dtype=float)
    out = 2.0 * mu0 / (math.pi * B) * _branch_factor(k / B)
    return float(out) if out.ndim == 0 else out
