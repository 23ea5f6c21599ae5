"""
Physical Constants
CODATA values from scipy.constants, plus the strontium Rydberg constant and ionization
limit read from constants_overrides.dat.
"""
from dataclasses import dataclass

import numpy as np
from scipy import constants as sc

from src.ingestion.data_loader import load_constants_overrides


@dataclass(frozen=True)
class PhysicalConstants:
    e: float = sc.e
    epsilon_0: float = sc.epsilon_0
    c: float = sc.c
    h: float = sc.h
    hbar: float = sc.hbar
    k_b: float = sc.k
    rydberg_infinity: float = sc.Rydberg          # 1/m
    bohr_radius: float = sc.physical_constants["Bohr radius"][0]
    electron_volt: float = sc.electron_volt

    @property
    def dipole_rate_prefactor(self) -> float:
        """e^2 / (3 pi eps0 hbar c^3); multiply by omega^3 |<r>|^2 (SI) for A in 1/s."""
        return self.e ** 2 / (3 * np.pi * self.epsilon_0 * self.hbar * self.c ** 3)


CONSTANTS = PhysicalConstants()


def wavenumber_to_angular(wavenumber_cm: float) -> float:
    """cm^-1 -> rad/s."""
    return 2 * np.pi * CONSTANTS.c * 100.0 * wavenumber_cm


def strontium_rydberg_cm(data_dir=None) -> float:
    return load_constants_overrides(data_dir)["rydberg_constant_cm"]


def ionization_limit_cm(data_dir=None) -> float:
    return load_constants_overrides(data_dir)["ionization_limit_cm"]
