"""Lifshitz theory of the Casimir interaction with local and spatially
nonlocal response of metals, evaluated through surface impedances."""

from .constants import HBAR_C_EV_M, K_B_EV, C_M_S
from .materials import (
    CoreTable,
    MaterialSpec,
    Oscillator,
    OscillatorSet,
    core_permittivity_imag,
    drude_permittivity_imag,
    fermi_velocity,
    load_material,
    nonlocal_permittivity_L,
    nonlocal_permittivity_T,
    nonlocal_permittivity_real,
    permeability_at_matsubara,
)
from .numerics import ConvergenceError, QuadratureSpec, compensated_sum, integrate, principal_value
from .reflection import Model, ReflectionPair, reflection_pair
from .lifshitz import MatsubaraContext, PlatePair, free_energy, matsubara_energy, pressure
from .geometry import (
    SpherePlateConfig,
    effective_pressure,
    force_gradient,
    ideal_metal_pressure,
    pfa_force,
)

__version__ = "0.1.0"
