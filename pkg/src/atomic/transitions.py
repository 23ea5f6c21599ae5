"""
Dipole Transitions
Radial matrix elements, two-electron angular factors, Einstein A coefficients, radiative
lifetimes and blackbody-induced transfer rates of Rydberg levels.
"""
import logging
from dataclasses import dataclass

import numpy as np

from src.atomic.constants import CONSTANTS
from src.atomic.levels import RydbergLevel, rydberg_level, series_with_l
from src.atomic.numerov import radial_overlap, radial_wavefunction
from src.atomic.wigner import wigner6j
from src.config import CHANNEL_N_ABOVE, NUMEROV_STEP
from src.errors import InvalidArgument
from src.ingestion.data_loader import load_quantum_defects

logger = logging.getLogger("ecat.atomic.transitions")

# hbar omega / k_B T above this gives a Bose factor below e^-700
_BOSE_CUTOFF = 700.0


@dataclass(frozen=True)
class TransitionRecord:
    """
    One dipole channel i -> f.

    `omega` is (E_i - E_f) in rad/s, negative for channels above i. `dipole_rate` is the
    spontaneous-emission expression evaluated at |omega|; it is the Einstein A coefficient
    for downward channels and the stimulated-rate scale for upward ones.
    """
    initial: RydbergLevel
    final: RydbergLevel
    omega: float
    radial_me: float
    angular_factor: float
    dipole_rate: float

    @property
    def downward(self) -> bool:
        return self.omega > 0

    @property
    def a_coeff(self) -> float:
        return self.dipole_rate if self.downward else 0.0

    def b_coeff(self, temperature: float) -> float:
        """Blackbody-stimulated rate A / (exp(hbar |omega| / k_B T) - 1)."""
        if temperature < 0:
            raise InvalidArgument("temperature", f"must be >= 0 K, got {temperature}")
        if temperature == 0 or self.omega == 0:
            return 0.0
        x = CONSTANTS.hbar * abs(self.omega) / (CONSTANTS.k_b * temperature)
        if x > _BOSE_CUTOFF:
            return 0.0
        return float(self.dipole_rate / np.expm1(x))

    def to_dict(self) -> dict:
        return {
            "initial": self.initial.label,
            "final": self.final.label,
            "omega": self.omega,
            "radial_me": self.radial_me,
            "angular_factor": self.angular_factor,
            "a_coeff": self.a_coeff,
        }


def radial_matrix_element(
    initial: RydbergLevel, final: RydbergLevel, check_l: bool = True, step: float = NUMEROV_STEP
) -> float:
    """<n_i l_i | r | n_f l_f> in Bohr radii."""
    if check_l and abs(initial.l - final.l) != 1:
        raise InvalidArgument("l", f"dipole elements need |l_i - l_f| = 1, got {initial.l} -> {final.l}")
    a = radial_wavefunction(initial.n_star, initial.l, step)
    b = radial_wavefunction(final.n_star, final.l, step)
    return radial_overlap(a, b, power=1)


def angular_factor(initial: RydbergLevel, final: RydbergLevel) -> float:
    """
    Two-electron angular weight of |<i|r|f>|^2 relative to the squared radial element,
    summed over final magnetic sublevels. Zero for spin-changing channels.
    """
    if initial.s_total != final.s_total or initial.l_core != final.l_core:
        return 0.0
    spin_part = wigner6j(final.j_total, 1, initial.j_total, initial.l_total, initial.s_total, final.l_total)
    orbital_part = wigner6j(final.l_total, 1, initial.l_total, initial.l, initial.l_core, final.l)
    multiplicity = (2 * final.l_total + 1) * (2 * final.j_total + 1) * (2 * initial.l_total + 1)
    return max(initial.l, final.l) * multiplicity * spin_part ** 2 * orbital_part ** 2


def einstein_a(omega: float, radial_me: float, angular: float) -> float:
    """
    Spontaneous emission rate in 1/s.

    Args:
        omega: (E_i - E_f) in rad/s
        radial_me: radial element in Bohr radii
        angular: angular factor of the channel

    Raises:
        InvalidArgument: if omega < 0 (the final level lies above the initial one)
    """
    if omega < 0:
        raise InvalidArgument("omega", f"spontaneous emission needs E_f < E_i, got omega = {omega}")
    dipole_sq = angular * (radial_me * CONSTANTS.bohr_radius) ** 2
    return float(CONSTANTS.dipole_rate_prefactor * omega ** 3 * dipole_sq)


def transition(initial: RydbergLevel, final: RydbergLevel, step: float = NUMEROV_STEP) -> TransitionRecord:
    omega = initial.energy - final.energy
    radial = radial_matrix_element(initial, final, step=step)
    angular = angular_factor(initial, final)
    return TransitionRecord(
        initial=initial,
        final=final,
        omega=omega,
        radial_me=radial,
        angular_factor=angular,
        dipole_rate=einstein_a(abs(omega), radial, angular),
    )


def channel_table(
    level: RydbergLevel, n_max: int | None = None, data_dir=None, step: float = NUMEROV_STEP
) -> list[TransitionRecord]:
    """
    Every dipole-allowed channel of `level` into the tabulated series with l +/- 1 and the
    same spin, from each series minimum up to n_max (default n + CHANNEL_N_ABOVE), above and below.
    """
    n_max = level.n + CHANNEL_N_ABOVE if n_max is None else n_max
    table = load_quantum_defects(data_dir)
    channels = []
    for l_final in (level.l - 1, level.l + 1):
        if l_final < 0:
            continue
        for series in series_with_l(l_final, data_dir):
            entry = table[series]
            if entry.s_total != level.s_total:
                continue
            for n in range(max(entry.n_min, l_final + 1), n_max + 1):
                try:
                    final = rydberg_level(series, n, data_dir)
                except InvalidArgument:
                    continue
                if angular_factor(level, final) == 0.0:
                    break
                channels.append(transition(level, final, step))
    logger.debug(f"Channel table for {level.label}: {len(channels)} channels up to n'={n_max}")
    return channels


def lifetime(level: RydbergLevel, channels: list[TransitionRecord] | None = None, data_dir=None):
    """
    Radiative lifetime 1 / sum(A) over the downward channels.

    Returns:
        (tau in s, {final label: fraction of the total decay rate})

    Raises:
        InvalidArgument: if no downward channel is available
    """
    channels = channel_table(level, data_dir=data_dir) if channels is None else channels
    rates = {c.final.label: c.a_coeff for c in channels if c.downward and c.a_coeff > 0}
    if not rates:
        raise InvalidArgument("channels", f"no downward dipole channel for {level.label}")
    total = sum(rates.values())
    logger.info(f"Lifetime of {level.label}: {1e6 / total:.3f} us over {len(rates)} channels")
    return 1.0 / total, {label: rate / total for label, rate in rates.items()}


def bbr_rate(level: RydbergLevel, temperature: float, channels: list[TransitionRecord] | None = None, data_dir=None):
    """
    Blackbody-induced depopulation rate sum(B) over channels above and below.

    Returns:
        (Gamma_BBR in 1/s, {final label: B coefficient})

    Raises:
        InvalidArgument: if temperature < 0
    """
    if temperature < 0:
        raise InvalidArgument("temperature", f"must be >= 0 K, got {temperature}")
    channels = channel_table(level, data_dir=data_dir) if channels is None else channels
    rates = {c.final.label: c.b_coeff(temperature) for c in channels}
    return float(sum(rates.values())), rates
