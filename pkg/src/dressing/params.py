"""
Dressing Parameters
Dressed-state energies, the effective Kerr Hamiltonian and the blockade radius
derived from the dressing laser (Rabi frequency Omega_r, detuning Delta).

All frequencies are angular (rad/s); C6 is in rad/s * m^6.
"""
import logging
from dataclasses import dataclass

import numpy as np

from src.config import WEAK_DRESSING_LIMIT
from src.errors import InvalidArgument

logger = logging.getLogger("ecat.dressing.params")


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not np.isfinite(value) or value <= 0:
        raise InvalidArgument(name, f"must be positive and finite, got {value}")
    return value


def blockade_radius(c6: float, delta: float) -> float:
    """R_b = |C6 / (2 Delta)|^(1/6), in meters."""
    c6, delta = float(c6), float(delta)
    if c6 == 0 or not np.isfinite(c6):
        raise InvalidArgument("c6", f"must be non-zero and finite, got {c6}")
    if delta == 0 or not np.isfinite(delta):
        raise InvalidArgument("delta", f"must be non-zero and finite, got {delta}")
    return abs(c6 / (2 * delta)) ** (1 / 6)


def c6_for_blockade(r_b: float, delta: float) -> float:
    """Inverse of blockade_radius: C6 = 2 Delta R_b^6."""
    return 2 * _positive("delta", abs(delta)) * _positive("r_b", r_b) ** 6


def detuning_for_blockade(c6: float, r_b: float) -> float:
    """Detuning giving blockade radius r_b: Delta = |C6| / (2 R_b^6)."""
    return abs(float(c6)) / (2 * _positive("r_b", r_b) ** 6)


@dataclass(frozen=True)
class DressingParams:
    """
    Everything derived from the dressing laser.

    Attributes:
        omega_r: Rydberg Rabi frequency (rad/s)
        delta: detuning (rad/s); stored as |Delta|
        n: principal quantum number of the Rydberg level, if known
        c6: van der Waals coefficient (rad/s m^6), if known
        n_atoms: intended atom number, used only for the weak-dressing guard
    """
    omega_r: float
    delta: float
    n: int | None = None
    c6: float | None = None
    n_atoms: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "omega_r", _positive("omega_r", self.omega_r))
        delta = float(self.delta)
        if delta == 0 or not np.isfinite(delta):
            raise InvalidArgument("delta", "resonant or non-finite detuning is unsupported")
        object.__setattr__(self, "delta", abs(delta))
        if self.c6 is not None:
            c6 = float(self.c6)
            if c6 == 0 or not np.isfinite(c6):
                raise InvalidArgument("c6", f"must be non-zero and finite, got {c6}")
            object.__setattr__(self, "c6", c6)
        if self.n_atoms is not None:
            self.weak_dressing_check(self.n_atoms)

    @classmethod
    def from_w(cls, w: float, delta: float, **kwargs) -> "DressingParams":
        """Build from the dressing parameter w = Omega_r / (2 Delta)."""
        w = _positive("w", w)
        return cls(omega_r=2 * w * abs(float(delta)), delta=delta, **kwargs)

    @property
    def w(self) -> float:
        return self.omega_r / (2 * self.delta)

    @property
    def chi0(self) -> float:
        return 2 * self.w ** 4 * self.delta

    @property
    def tau_c(self) -> float:
        return np.pi / self.chi0

    @property
    def r_b(self) -> float:
        if self.c6 is None:
            raise InvalidArgument("c6", "blockade radius needs a C6 coefficient")
        return blockade_radius(self.c6, self.delta)

    def weak_dressing_check(self, n_atoms: int) -> bool:
        """Warn (and return False) when sqrt(N) * w exceeds the weak-dressing limit."""
        value = np.sqrt(n_atoms) * self.w
        if value > WEAK_DRESSING_LIMIT:
            logger.warning(
                f"Weak-dressing guard: sqrt(N)*w = {value:.3f} > {WEAK_DRESSING_LIMIT} for N={n_atoms}"
            )
            return False
        return True

    def to_dict(self) -> dict:
        data = {
            "omega_r": self.omega_r,
            "delta": self.delta,
            "w": self.w,
            "chi0": self.chi0,
            "tau_c": self.tau_c,
            "n": self.n,
        }
        if self.c6 is not None:
            data["c6"] = self.c6
            data["r_b"] = self.r_b
        return data


def dressed_energies(n_e, omega_r: float, delta: float):
    """
    Eigenvalues E_-, E_+ of the two-level dressing problem with collective
    coupling sqrt(N_e) Omega_r.

    E_- is evaluated as -Delta x / (2 (1 + sqrt(1 + x))) to avoid cancellation at weak dressing.
    """
    delta = float(delta)
    if delta == 0 or not np.isfinite(delta):
        raise InvalidArgument("delta", "resonant dressing (Delta = 0) is unsupported")
    n_e_arr = np.asarray(n_e, dtype=float)
    if np.any(n_e_arr < 0):
        raise InvalidArgument("n_e", "excitation number must be >= 0")
    x = n_e_arr * float(omega_r) ** 2 / delta ** 2
    root = np.sqrt(1 + x)
    e_minus = -delta * x / (2 * (1 + root))
    e_plus = delta / 2 * (1 + root)
    if np.ndim(n_e) == 0:
        return float(e_minus), float(e_plus)
    return e_minus, e_plus


def light_shift_series(n_e, params: DressingParams, order: int = 2):
    """
    Weak-dressing expansion of E_- in powers of N_e w^2 (order 2 is the Kerr form).

    E_- = Delta * sum_k a_k (N_e w^2)^k with a_1 = -1, a_2 = 1, a_3 = -2, a_4 = 5.
    """
    coefficients = {1: -1.0, 2: 1.0, 3: -2.0, 4: 5.0}
    if order not in coefficients:
        raise InvalidArgument("order", f"must be one of {sorted(coefficients)}, got {order}")
    y = np.asarray(n_e, dtype=float) * params.w ** 2
    total = sum(coefficients[k] * y ** k for k in range(1, order + 1))
    return params.delta * total


def kerr_energy(n_e, params: DressingParams):
    """(N_e^2 - N_e / w^2) chi0 / 2."""
    n_e = np.asarray(n_e, dtype=float)
    return (n_e ** 2 - n_e / params.w ** 2) * params.chi0 / 2


def kerr_hamiltonian_phase(n_e, params: DressingParams, t: float):
    """Phase (N_e^2 - N_e / w^2)(chi0 / 2) t accumulated under the Kerr Hamiltonian."""
    phase = kerr_energy(n_e, params) * float(t)
    return float(phase) if np.ndim(phase) == 0 else phase
