"""Physical constants in the unit system used throughout the package.

Spectral quantities are energies in eV, lengths are in meters.
"""

from scipy import constants as _sc

C_M_S = _sc.c
HBAR_C_EV_M = _sc.hbar * _sc.c / _sc.e  # 197.3269804 eV nm
K_B_EV = _sc.k / _sc.e  # eV/K
K_B_J = _sc.k
ME_C2_EV = _sc.physical_constants["electron mass energy equivalent in MeV"][0] * 1e6


def ev_to_inverse_m(energy_ev):
    """Convert an energy hbar*omega (eV) to the wavenumber omega/c (1/m)."""
    return energy_ev / HBAR_C_EV_M


def velocity_wavenumber_to_ev(v, k):
    """Energy hbar*v*k (eV) for a velocity in m/s and a wavenumber in 1/m."""
    return (v / C_M_S) * k * HBAR_C_EV_M
