"""Causality checks for the nonlocal permittivities.

Two directions are covered:

* :func:`reconstruct_imag_axis` rebuilds ``eps(i xi, k)`` from the real-axis
  absorption ``Im eps(omega, k)`` by a dispersion integral, to be compared
  with the direct imaginary-axis formulas of :mod:`nonlocal_casimir.materials`;
* :func:`kk_residual` rebuilds ``Re eps(omega, k)`` from ``Im eps`` by a
  principal-value integral and reports the deviation from the analytic value.

The transverse permittivity has a double pole at ``omega = 0`` whose weight
``(omega_p / omega)**2 * v_Tr k / gamma`` is not carried by ``Im eps`` and has
to be added by hand; the longitudinal one is regular at the origin.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .constants import velocity_wavenumber_to_ev
from .impedance import ModelError
from .materials import (
    CoreTable,
    MaterialSpec,
    nonlocal_permittivity_L,
    nonlocal_permittivity_T,
    nonlocal_permittivity_real,
)
from .numerics import PrincipalValueSpec, QuadratureSpec, integrate, principal_value

KK_SPEC = QuadratureSpec(rel_tol=1e-10, mapping="exponential", initial_panels=32, log_span=40.0)


@dataclass
class KKReport:
    """Outcome of a dispersion-relation check on one branch at fixed ``k``.

    ``curve`` holds ``(hbar_energy, eps_kk, eps_direct)`` triples in grid order;
    ``residuals`` are ``|eps_kk - eps_direct| / max(|eps_direct|, 1)``.
    """

    branch: str
    k: float
    grid: np.ndarray
    max_residual: float
    residuals: np.ndarray
    curve: list[tuple[float, float, float]] = field(default_factory=list)
    kind: str = "imag-axis"

    def __post_init__(self):
        if not np.all(np.isfinite(self.residuals)):
            raise ValueError("non-finite residual in KK report")
        if np.any(np.diff(self.grid) <= 0):
            raise ValueError("KK grid must be strictly increasing")

    def as_text(self) -> str:
        head = f"kk {self.kind} branch={self.branch} k={self.k:.6g} 1/m max_residual={self.max_residual:.3e}"
        rows = [f"  {e:12.6g} {kk:+.10e} {d:+.10e}" for e, kk, d in self.curve]
        return "\n".join([head, f"  {'hbar[eV]':>12} {'kk':>17} {'direct':>17}", *rows])


def _check_branch(branch: str) -> str:
    if branch not in ("T", "L"):
        raise ValueError(f"branch must be 'T' or 'L', got {branch!r}")
    return branch


def _velocity(m: MaterialSpec, branch: str) -> float:
    return m.v_tr if branch == "T" else m.v_l


def _require_oscillator_core(m: MaterialSpec):
    if isinstance(m.core, CoreTable):
        raise ModelError("dispersion relations need an oscillator (or constant) core model")


def im_eps_real_axis(m: MaterialSpec, hbar_omega, k, branch: str = "T"):
    """Analytic ``Im eps(omega, k)`` of the nonlocal permittivity, ``omega > 0``.

    Oscillators with zero damping contribute delta functions only and are
    omitted here.
    """
    _check_branch(branch)
    _require_oscillator_core(m)
    w = np.asarray(hbar_omega, dtype=float)
    if np.any(w <= 0):
        raise ValueError("hbar_omega must be positive")
    g = m.hbar_gamma
    wp2 = m.hbar_omega_p**2
    kappa = velocity_wavenumber_to_ev(_velocity(m, branch), np.asarray(k, dtype=float))
    if branch == "T":
        out = wp2 * (g - kappa) / (w * (w * w + g * g))
    else:
        s = g + kappa
        out = wp2 * w * s / ((w * w - g * kappa) ** 2 + (w * s) ** 2)
    if m.core is not None:
        for osc in m.core.entries:
            if osc.damping > 0:
                out = out + osc.strength * osc.damping * w / (
                    (osc.frequency**2 - w * w) ** 2 + (osc.damping * w) ** 2)
    return out if np.ndim(out) else float(out)


def _pole_weight(m: MaterialSpec, k: float, branch: str) -> float:
    """Coefficient ``c`` of the ``c / hbar_omega**2`` double-pole term (eV^2)."""
    if branch == "L" or k == 0 or m.v_tr == 0:
        return 0.0
    kappa = float(velocity_wavenumber_to_ev(m.v_tr, k))
    return m.hbar_omega_p**2 * kappa / m.hbar_gamma


def _direct_imag_axis(m: MaterialSpec, hbar_xi, k, branch):
    if branch == "T":
        return nonlocal_permittivity_T(m, hbar_xi, k)
    return nonlocal_permittivity_L(m, hbar_xi, k)


def reconstruct_imag_axis(m: MaterialSpec, hbar_xi: float, k: float, branch: str = "T",
                          spec: QuadratureSpec = KK_SPEC, include_pole_term: bool = True) -> float:
    """``eps(i xi, k)`` from the real-axis absorption by a dispersion integral.

    ``1 + (2/pi) int_0^inf x Im eps(x, k) / (x^2 + xi^2) dx``, plus the
    double-pole term ``(omega_p/xi)^2 v_Tr k / gamma`` on the transverse
    branch. ``include_pole_term=False`` drops that term (a negative control).
    """
    _check_branch(branch)
    _require_oscillator_core(m)
    if not hbar_xi > 0:
        raise ValueError("hbar_xi must be positive")
    if m.hbar_gamma == 0:
        raise ModelError("dispersion relations need gamma > 0")
    xi2 = hbar_xi * hbar_xi

    def f(x):
        return x * im_eps_real_axis(m, x, k, branch) / (x * x + xi2)

    total = 1.0 + 2.0 / math.pi * integrate(f, 0.0, math.inf, spec).value
    if m.core is not None:
        # undamped oscillators: Im eps = (pi g / 2 w_j) delta(x - w_j)
        for osc in m.core.entries:
            if osc.damping == 0:
                total += osc.strength / (osc.frequency**2 + xi2)
    if include_pole_term:
        total += _pole_weight(m, k, branch) / xi2
    return float(total)


def static_transverse_conductivity(m: MaterialSpec, k) -> float:
    """Real part of the static transverse conductivity, ``omega_p^2 (gamma - v_Tr k) / (4 pi gamma^2)``.

    Units are eV (Gaussian conductivity times hbar). Negative values for
    ``k > gamma / v_Tr`` are returned as is.
    """
    if not m.hbar_gamma > 0:
        raise ModelError("static conductivity needs gamma > 0")
    kappa = velocity_wavenumber_to_ev(m.v_tr, np.asarray(k, dtype=float))
    out = m.hbar_omega_p**2 * (m.hbar_gamma - kappa) / (4.0 * math.pi * m.hbar_gamma**2)
    return out if np.ndim(out) else float(out)


def _map(fn, items, threads):
    if threads and threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _real_from_imag(m: MaterialSpec, w: float, k: float, branch: str, spec: QuadratureSpec) -> float:
    def f(x):
        x = np.asarray(x, dtype=float)
        return 2.0 / math.pi * x * im_eps_real_axis(m, x, k, branch) / ((x - w) * (x + w))

    pv = PrincipalValueSpec(pole_location=w, window_half_width=0.5 * w, base=spec)
    value = 1.0 + principal_value(f, 0.0, math.inf, pv, scale=w)
    if m.core is not None:
        for osc in m.core.entries:
            if osc.damping == 0:
                value += osc.strength / (osc.frequency**2 - w * w)
    return value - _pole_weight(m, k, branch) / (w * w)


_PV_SPEC = QuadratureSpec(rel_tol=1e-10, mapping="rational", initial_panels=16)


def kk_residual(m: MaterialSpec, k: float, branch: str, omega_grid, spec: QuadratureSpec = _PV_SPEC,
                threads: int | None = None) -> KKReport:
    """Check ``Re eps`` against its principal-value reconstruction from ``Im eps``."""
    _check_branch(branch)
    _require_oscillator_core(m)
    if m.hbar_gamma == 0:
        raise ModelError("lossless response has poles on the real axis; gamma > 0 required")
    grid = np.asarray(omega_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0 or np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
        raise ValueError("omega grid must be positive and strictly increasing")
    kk = np.array(_map(lambda w: _real_from_imag(m, float(w), k, branch, spec), grid, threads))
    direct = np.real(nonlocal_permittivity_real(m, grid, k, branch))
    res = np.abs(kk - direct) / np.maximum(np.abs(direct), 1.0)
    curve = [(float(e), float(a), float(b)) for e, a, b in zip(grid, kk, direct)]
    return KKReport(branch, float(k), grid, float(res.max()), res, curve, kind="real-axis")


def reconstruction_report(m: MaterialSpec, k: float, branch: str, xi_grid, spec: QuadratureSpec = KK_SPEC,
                          include_pole_term: bool = True, threads: int | None = None) -> KKReport:
    """Compare :func:`reconstruct_imag_axis` with the direct formulas on a grid."""
    _check_branch(branch)
    grid = np.asarray(xi_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0 or np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
        raise ValueError("xi grid must be positive and strictly increasing")
    kk = np.array(_map(lambda x: reconstruct_imag_axis(m, float(x), k, branch, spec, include_pole_term),
                       grid, threads))
    direct = np.asarray(_direct_imag_axis(m, grid, k, branch), dtype=float)
    res = np.abs(kk - direct) / np.maximum(np.abs(direct), 1.0)
    curve = [(float(e), float(a), float(b)) for e, a, b in zip(grid, kk, direct)]
    return KKReport(branch, float(k), grid, float(res.max()), res, curve, kind="imag-axis")
