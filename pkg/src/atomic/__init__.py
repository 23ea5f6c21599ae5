"""
Atomic module - Strontium Rydberg structure: quantum-defect levels, Numerov radial
wavefunctions, Wigner 6j angular algebra, Einstein coefficients and blackbody rates.
"""
from src.atomic.constants import CONSTANTS, PhysicalConstants, wavenumber_to_angular
from src.atomic.levels import RydbergLevel, hydrogenic_level, measured_lifetime, rydberg_level
from src.atomic.numerov import RadialWavefunction, radial_overlap, radial_wavefunction
from src.atomic.transitions import (
    TransitionRecord,
    angular_factor,
    bbr_rate,
    channel_table,
    einstein_a,
    lifetime,
    radial_matrix_element,
    transition,
)
from src.atomic.wigner import wigner6j

__all__ = [
    "CONSTANTS",
    "PhysicalConstants",
    "RadialWavefunction",
    "RydbergLevel",
    "TransitionRecord",
    "angular_factor",
    "bbr_rate",
    "channel_table",
    "einstein_a",
    "hydrogenic_level",
    "lifetime",
    "measured_lifetime",
    "radial_matrix_element",
    "radial_overlap",
    "radial_wavefunction",
    "rydberg_level",
    "transition",
    "wavenumber_to_angular",
    "wigner6j",
]
