"""Built-in materials and experiment configurations.

Core-electron permittivities are not shipped; every built-in material uses
``eps_c = 1``. A measured core table can be attached through a scenario file.
"""

from __future__ import annotations

import numpy as np

from ..materials import MaterialSpec, material_from_dict

# velocity constants of the nonlocal response in units of the Fermi velocity
DEFAULT_V_OVER_VF = 1.5

BUILTIN_MATERIALS: dict[str, dict] = {
    "au-8.9": {"name": "au-8.9", "hbar_omega_p_ev": 8.9, "hbar_gamma_ev": 0.0357},
    "au-9.0": {"name": "au-9.0", "hbar_omega_p_ev": 9.0, "hbar_gamma_ev": 0.035},
    "ni": {"name": "ni", "hbar_omega_p_ev": 4.89, "hbar_gamma_ev": 0.0436, "mu_static": 110.0},
}

# relative one-sided parameter uncertainties used for theory bands
DEFAULT_UNCERTAINTIES = {"hbar_omega_p": 0.005, "hbar_gamma": 0.05}


def _grid(lo_nm: float, hi_nm: float, n: int) -> list[float]:
    return [float(f"{x:.6g}") * 1e-9 for x in np.linspace(lo_nm, hi_nm, n)]


BUILTIN_SCENARIOS: dict[str, dict] = {
    "decca-pressure": {
        "id": "decca-pressure",
        "geometry": "sphere-plate",
        "R_m": 151.2e-6,
        "materials": ["au-8.9", "au-8.9"],
        "T_K": 300.0,
        "observable": "pressure",
        "separations_m": _grid(162.03, 745.98, 9),
    },
    "trench-force": {
        "id": "trench-force",
        "geometry": "sphere-plate",
        "R_m": 149.7e-6,
        "materials": ["au-9.0", "au-9.0"],
        "T_K": 300.0,
        "observable": "force",
        "separations_m": [1e-6, 2e-6, 3e-6, 4e-6, 5e-6, 6e-6, 7e-6],
    },
    "afm-2011": {
        "id": "afm-2011",
        "geometry": "sphere-plate",
        "R_m": 41.3e-6,
        "materials": ["au-9.0", "au-9.0"],
        "T_K": 300.0,
        "observable": "gradient",
        "separations_m": _grid(235.0, 420.0, 6),
    },
    "afm-upgraded": {
        "id": "afm-upgraded",
        "geometry": "sphere-plate",
        "R_m": 43.47e-6,
        "materials": ["au-9.0", "au-9.0"],
        "T_K": 300.0,
        "observable": "gradient",
        "separations_m": _grid(250.0, 1300.0, 8),
    },
    "au-ni": {
        "id": "au-ni",
        "geometry": "sphere-plate",
        "R_m": 64.1e-6,
        "materials": ["au-9.0", "ni"],
        "T_K": 300.0,
        "observable": "gradient",
        "separations_m": _grid(220.0, 500.0, 8),
    },
    "ni-ni": {
        "id": "ni-ni",
        "geometry": "sphere-plate",
        "R_m": 61.71e-6,
        "materials": ["ni", "ni"],
        "T_K": 300.0,
        "observable": "gradient",
        "separations_m": _grid(223.0, 420.0, 6),
    },
}


def builtin_material(name: str, v_over_vf: float = DEFAULT_V_OVER_VF) -> MaterialSpec:
    """Material by built-in name, with ``v_Tr = v_L = v_over_vf * v_F``."""
    key = name.strip().lower()
    if key not in BUILTIN_MATERIALS:
        known = ", ".join(sorted(BUILTIN_MATERIALS))
        raise ValueError(f"unknown material {name!r} (not a file; built-ins: {known})")
    return material_from_dict(BUILTIN_MATERIALS[key], v_scale_default=v_over_vf)


def builtin_scenario_dict(name: str) -> dict:
    key = name.strip().lower()
    if key not in BUILTIN_SCENARIOS:
        known = ", ".join(sorted(BUILTIN_SCENARIOS))
        raise ValueError(f"unknown scenario {name!r} (not a file; built-ins: {known})")
    return dict(BUILTIN_SCENARIOS[key])
