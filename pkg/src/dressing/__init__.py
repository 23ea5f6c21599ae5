"""Dressing module - Dressed energies, Kerr coefficients, ramps and blockade radius."""
from src.dressing.params import (
    DressingParams,
    blockade_radius,
    c6_for_blockade,
    detuning_for_blockade,
    dressed_energies,
    kerr_energy,
    kerr_hamiltonian_phase,
    light_shift_series,
)
from src.dressing.ramps import (
    RampProfile,
    adiabaticity_ratio,
    constant_profile,
    dressed_ground_population,
    ground_return_probability,
    switch_on_ramp,
)
from src.dressing.c6 import c6_coefficient

__all__ = [
    "DressingParams",
    "RampProfile",
    "adiabaticity_ratio",
    "blockade_radius",
    "c6_coefficient",
    "c6_for_blockade",
    "constant_profile",
    "detuning_for_blockade",
    "dressed_energies",
    "dressed_ground_population",
    "ground_return_probability",
    "kerr_energy",
    "kerr_hamiltonian_phase",
    "light_shift_series",
    "switch_on_ramp",
]
