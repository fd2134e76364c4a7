"""Material parameters and dielectric response on the real and imaginary axes.

All spectral quantities are energies in eV (``hbar*omega``, ``hbar*xi``,
``hbar*gamma``); wavenumbers are in 1/m and velocities in m/s.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Union

import numpy as np

from .constants import C_M_S, ME_C2_EV, velocity_wavenumber_to_ev


class PoleError(ValueError):
    """Evaluation at zero frequency where a permittivity has a pole."""


class TableRangeError(ValueError):
    """Tabulated data evaluated outside its range without an extrapolation policy."""


@dataclass(frozen=True)
class Oscillator:
    strength: float  # g_j, eV^2
    frequency: float  # omega_j, eV
    damping: float = 0.0  # gamma_j, eV

    def __post_init__(self):
        if not self.frequency > 0:
            raise ValueError("oscillator frequency must be positive")
        if self.strength < 0 or self.damping < 0:
            raise ValueError("oscillator strength and damping must be nonnegative")


@dataclass(frozen=True)
class OscillatorSet:
    """Interband (core-electron) permittivity as a sum of damped oscillators."""

    entries: tuple[Oscillator, ...] = ()

    @classmethod
    def from_triples(cls, triples):
        return cls(tuple(Oscillator(*map(float, t)) for t in triples))

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class CoreTable:
    """Tabulated ``eps_c(i xi)`` on an ascending ``hbar*xi`` grid.

    Interpolation is linear in ``eps_c`` against ``log(hbar*xi)``. Below the
    first node the first value is used; above the last node the excess over
    unity decays as ``xi**-2``. With ``extrapolate=False`` out-of-range
    arguments raise :class:`TableRangeError`.
    """

    hbar_xi: tuple[float, ...]
    eps: tuple[float, ...]
    extrapolate: bool = True

    def __post_init__(self):
        x = np.asarray(self.hbar_xi, dtype=float)
        e = np.asarray(self.eps, dtype=float)
        if x.ndim != 1 or x.size < 2 or x.size != e.size:
            raise ValueError("core table needs two equal-length columns with >= 2 rows")
        if np.any(x <= 0) or np.any(np.diff(x) <= 0):
            raise ValueError("core table abscissae must be positive and strictly increasing")
        if np.any(e < 1):
            raise ValueError("tabulated eps_c values must be >= 1")

    @classmethod
    def from_csv(cls, path, extrapolate=True):
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None:
                raise ValueError(f"{path}: empty table file")
            try:
                float(header[0])
            except ValueError:
                pass
            else:
                raise ValueError(f"{path}: header line required")
            rows = [r for r in reader if r and r[0].strip()]
        xs = tuple(float(r[0]) for r in rows)
        es = tuple(float(r[1]) for r in rows)
        return cls(xs, es, extrapolate)

    def __call__(self, hbar_xi):
        xi = np.asarray(hbar_xi, dtype=float)
        x = np.asarray(self.hbar_xi)
        e = np.asarray(self.eps)
        if not self.extrapolate and np.any((xi < x[0]) | (xi > x[-1])):
            raise TableRangeError("hbar_xi outside tabulated core permittivity range")
        with np.errstate(divide="ignore"):
            inner = np.interp(np.log(np.maximum(xi, x[0])), np.log(x), e)
        tail = 1.0 + (e[-1] - 1.0) * (x[-1] / np.maximum(xi, x[-1])) ** 2
        return np.where(xi > x[-1], tail, inner)


CoreSource = Union[OscillatorSet, CoreTable, None]


@dataclass(frozen=True)
class MaterialSpec:
    """Parameters of one plate material.

    ``v_tr`` and ``v_l`` are the transverse and longitudinal velocity
    constants of the nonlocal response (m/s). ``mu_static`` is the static
    permeability, used at the zero Matsubara frequency only.
    """

    name: str
    hbar_omega_p: float
    hbar_gamma: float
    v_tr: float = 0.0
    v_l: float = 0.0
    mu_static: float = 1.0
    core: CoreSource = None

    def __post_init__(self):
        if not self.hbar_omega_p > 0:
            raise ValueError("hbar_omega_p must be positive")
        if self.hbar_gamma < 0:
            raise ValueError("hbar_gamma must be nonnegative")
        if self.v_tr < 0 or self.v_l < 0:
            raise ValueError("nonlocal velocities must be nonnegative")
        if self.v_tr >= C_M_S or self.v_l >= C_M_S:
            raise ValueError("nonlocal velocities must be below c")
        if self.mu_static < 1:
            raise ValueError("mu_static must be >= 1")

    def with_(self, **changes) -> "MaterialSpec":
        return replace(self, **changes)

    @property
    def v_fermi(self) -> float:
        return fermi_velocity(self.hbar_omega_p)


def fermi_velocity(hbar_omega_p):
    """Fermi velocity (m/s) for a spherical Fermi surface, ``m v^2 / 2 = hbar omega_p``."""
    if np.any(np.asarray(hbar_omega_p) <= 0):
        raise ValueError("hbar_omega_p must be positive")
    return C_M_S * np.sqrt(2.0 * np.asarray(hbar_omega_p, dtype=float) / ME_C2_EV)


def core_permittivity_imag(core: CoreSource, hbar_xi):
    """Core-electron permittivity at imaginary frequency ``i xi``."""
    xi = np.asarray(hbar_xi, dtype=float)
    if np.any(xi < 0):
        raise ValueError("hbar_xi must be nonnegative")
    if core is None:
        return np.ones_like(xi) if xi.ndim else 1.0
    if isinstance(core, CoreTable):
        out = core(xi)
        return out if xi.ndim else float(out)
    out = np.ones_like(xi)
    for osc in core.entries:
        out = out + osc.strength / (osc.frequency**2 + xi**2 + osc.damping * xi)
    return out if xi.ndim else float(out)


def core_permittivity_real(core: CoreSource, hbar_omega):
    """Core-electron permittivity on the real frequency axis (oscillators only)."""
    w = np.asarray(hbar_omega, dtype=float)
    if core is None:
        return np.ones_like(w, dtype=complex)
    if isinstance(core, CoreTable):
        raise TypeError("tabulated core permittivity has no real-axis representation")
    out = np.ones_like(w, dtype=complex)
    for osc in core.entries:
        out = out + osc.strength / (osc.frequency**2 - w**2 - 1j * osc.damping * w)
    return out


def _drude_term(m: MaterialSpec, xi):
    if np.any(xi <= 0):
        raise PoleError("imaginary-axis permittivity has a pole at xi = 0; use the zero-frequency forms")
    return m.hbar_omega_p**2 / (xi * (xi + m.hbar_gamma))


def drude_permittivity_imag(m: MaterialSpec, hbar_xi):
    xi = np.asarray(hbar_xi, dtype=float)
    return core_permittivity_imag(m.core, xi) + _drude_term(m, xi)


def plasma_permittivity_imag(m: MaterialSpec, hbar_xi):
    xi = np.asarray(hbar_xi, dtype=float)
    if np.any(xi <= 0):
        raise PoleError("plasma permittivity has a pole at xi = 0")
    return core_permittivity_imag(m.core, xi) + m.hbar_omega_p**2 / xi**2


def nonlocal_permittivity_T(m: MaterialSpec, hbar_xi, k):
    """Transverse nonlocal permittivity at ``i xi`` for wavenumber ``k`` (1/m)."""
    xi = np.asarray(hbar_xi, dtype=float)
    vk = velocity_wavenumber_to_ev(m.v_tr, np.asarray(k, dtype=float))
    return core_permittivity_imag(m.core, xi) + _drude_term(m, xi) * (1.0 + vk / xi)


def nonlocal_permittivity_L(m: MaterialSpec, hbar_xi, k):
    """Longitudinal nonlocal permittivity at ``i xi`` for wavenumber ``k`` (1/m)."""
    xi = np.asarray(hbar_xi, dtype=float)
    vk = velocity_wavenumber_to_ev(m.v_l, np.asarray(k, dtype=float))
    return core_permittivity_imag(m.core, xi) + _drude_term(m, xi) / (1.0 + vk / xi)


def nonlocal_permittivity_real(m: MaterialSpec, hbar_omega, k, branch: str = "T"):
    """Complex nonlocal permittivity at real frequency ``omega > 0``."""
    w = np.asarray(hbar_omega, dtype=float)
    if np.any(w <= 0):
        raise PoleError("real-axis permittivity requires omega > 0")
    g = m.hbar_gamma
    wp2 = m.hbar_omega_p**2
    core = core_permittivity_real(m.core, w)
    if branch == "T":
        vk = velocity_wavenumber_to_ev(m.v_tr, np.asarray(k, dtype=float))
        drude = -wp2 / (w * (w + 1j * g)) * (1.0 + 1j * vk / w)
    elif branch == "L":
        vk = velocity_wavenumber_to_ev(m.v_l, np.asarray(k, dtype=float))
        drude = -wp2 / ((w + 1j * g) * (w + 1j * vk))
    else:
        raise ValueError(f"branch must be 'T' or 'L', got {branch!r}")
    out = core + drude
    return out if out.ndim else complex(out)


def permeability_at_matsubara(m: MaterialSpec, l: int) -> float:
    """Magnetic permeability at the Matsubara frequency with index ``l``.

    Ferromagnetic response relaxes far below the first Matsubara frequency,
    so only the static term carries ``mu_static``.
    """
    if l < 0:
        raise ValueError("Matsubara index must be >= 0")
    return float(m.mu_static) if l == 0 else 1.0


# --- material files --------------------------------------------------------

def _parse_core(raw, base_dir: Path):
    if raw is None or raw == "constant" or raw == {"constant": True}:
        return None
    if isinstance(raw, dict):
        if "oscillators" in raw:
            return OscillatorSet.from_triples(raw["oscillators"])
        if "table_file" in raw:
            path = Path(raw["table_file"])
            if not path.is_absolute():
                path = base_dir / path
            return CoreTable.from_csv(path, extrapolate=raw.get("extrapolate", True))
        if raw.get("constant") is not None:
            return None
    raise ValueError(f"core: unrecognised core permittivity source {raw!r}")


def material_from_dict(data: dict, base_dir: Path | str = ".", v_scale_default: float = 1.5) -> MaterialSpec:
    """Build a :class:`MaterialSpec` from a parsed material record.

    Velocities are given as multiples of the Fermi velocity
    (``v_tr_over_vf``, ``v_l_over_vf``) and default to ``v_scale_default``.
    """
    required = ("name", "hbar_omega_p_ev", "hbar_gamma_ev")
    for key in required:
        if key not in data:
            raise ValueError(f"material: missing field {key!r}")
    wp = float(data["hbar_omega_p_ev"])
    vf = float(data["v_f_m_s"]) if "v_f_m_s" in data else float(fermi_velocity(wp))
    return MaterialSpec(
        name=str(data["name"]),
        hbar_omega_p=wp,
        hbar_gamma=float(data["hbar_gamma_ev"]),
        v_tr=float(data.get("v_tr_over_vf", v_scale_default)) * vf,
        v_l=float(data.get("v_l_over_vf", v_scale_default)) * vf,
        mu_static=float(data.get("mu_static", 1.0)),
        core=_parse_core(data.get("core"), Path(base_dir)),
    )


def load_material(path) -> MaterialSpec:
    """Read a JSON material file, or a built-in material by name."""
    p = Path(path)
    if not p.exists():
        from .harness.builtins import builtin_material
        return builtin_material(str(path))
    with open(p) as fh:
        data = json.load(fh)
    return material_from_dict(data, p.parent)
