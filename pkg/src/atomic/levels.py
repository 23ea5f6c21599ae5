"""
Rydberg Levels
Quantum-defect energies of the strontium triplet series, with measured term values
from constants_overrides.dat taking precedence over the Rydberg-Ritz extrapolation.
"""
import logging
from dataclasses import dataclass

import numpy as np

from src.atomic.constants import CONSTANTS, ionization_limit_cm, strontium_rydberg_cm, wavenumber_to_angular
from src.errors import InvalidArgument
from src.ingestion.data_loader import load_constants_overrides, load_quantum_defects

logger = logging.getLogger("ecat.atomic.levels")


@dataclass(frozen=True)
class RydbergLevel:
    """
    One fine-structure level 5s n l (2S+1)L_J.

    `energy` is in rad/s relative to the ionization limit (negative for bound levels);
    `l` belongs to the active electron, `l_core` to the inner 5s electron.
    """
    n: int
    l: int
    s_total: int
    l_total: int
    j_total: int
    defect: float
    energy: float
    series: str = ""
    l_core: int = 0

    def __post_init__(self):
        if self.n < 1 or self.l < 0 or self.l >= self.n:
            raise InvalidArgument("n", f"need 0 <= l < n, got n={self.n}, l={self.l}")
        if not abs(self.l_total - self.s_total) <= self.j_total <= self.l_total + self.s_total:
            raise InvalidArgument(
                "j_total",
                f"J={self.j_total} violates |L-S| <= J <= L+S for L={self.l_total}, S={self.s_total}",
            )
        if not 0 <= self.defect < self.n:
            raise InvalidArgument("defect", f"need 0 <= delta < n, got {self.defect} for n={self.n}")
        if self.energy >= 0:
            raise InvalidArgument("energy", f"bound levels have negative energy, got {self.energy}")

    @property
    def n_star(self) -> float:
        return self.n - self.defect

    @property
    def label(self) -> str:
        return f"{self.n} {self.series}" if self.series else f"{self.n} l={self.l}"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "l": self.l,
            "S": self.s_total,
            "L": self.l_total,
            "J": self.j_total,
            "series": self.series,
            "defect": self.defect,
            "n_star": self.n_star,
            "energy": self.energy,
        }


def rydberg_level(series: str, n: int, data_dir=None) -> RydbergLevel:
    """
    Level n of a series from quantum_defects.dat.

    A measured term value `term_{n}_{series}_cm` in constants_overrides.dat fixes the
    energy and sets n* = sqrt(R_Sr / (IP - T)); otherwise the Rydberg-Ritz defect is used.

    Raises:
        InvalidArgument: unknown series, or n below the series minimum without a measured term
        FileNotFoundError: if a data file is missing
    """
    table = load_quantum_defects(data_dir)
    if series not in table:
        raise InvalidArgument("series", f"unknown series '{series}', known: {sorted(table)}")
    entry = table[series]
    rydberg_cm = strontium_rydberg_cm(data_dir)
    overrides = load_constants_overrides(data_dir)
    term_key = f"term_{n}_{series}_cm"

    if term_key in overrides:
        binding_cm = ionization_limit_cm(data_dir) - overrides[term_key]
        if binding_cm <= 0:
            raise InvalidArgument(term_key, f"term lies above the ionization limit ({binding_cm} cm^-1)")
        defect = n - float(np.sqrt(rydberg_cm / binding_cm))
    elif n >= entry.n_min:
        defect = entry.defect(n)
        binding_cm = rydberg_cm / (n - defect) ** 2
    else:
        raise InvalidArgument("n", f"n={n} is below n_min={entry.n_min} for {series} and has no measured term")

    return RydbergLevel(
        n=n,
        l=entry.l,
        s_total=entry.s_total,
        l_total=entry.l_total,
        j_total=entry.j_total,
        defect=defect,
        energy=-wavenumber_to_angular(binding_cm),
        series=series,
    )


def hydrogenic_level(n: int, l: int) -> RydbergLevel:
    """Hydrogen-like singlet level (delta = 0, no core angular momentum)."""
    rydberg_cm = CONSTANTS.rydberg_infinity / 100.0
    return RydbergLevel(
        n=n, l=l, s_total=0, l_total=l, j_total=l, defect=0.0,
        energy=-wavenumber_to_angular(rydberg_cm / n ** 2), series="",
    )


def measured_lifetime(series: str, n: int, data_dir=None) -> float | None:
    """Lifetime from `lifetime_{n}_{series}_s` in constants_overrides.dat, if present."""
    value = load_constants_overrides(data_dir).get(f"lifetime_{n}_{series}_s")
    if value is None:
        logger.debug(f"No measured lifetime for {n}{series}")
    return value


def series_with_l(l: int, data_dir=None) -> list[str]:
    """Series labels in the defect table whose active electron has orbital l."""
    return [name for name, entry in load_quantum_defects(data_dir).items() if entry.l == l]
