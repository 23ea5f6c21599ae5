"""
Phonon Leakage
A rotation pulse on an atom in the motional ground state of its lattice site can create a
phonon through the Lamb-Dicke coupling. In the basis |g,0>, |e',0>, |e',1>:

    H = [[0,       Omega, eta Omega],
         [Omega,   0,     0        ],
         [eta Omega, 0,   omega_tr ]]
"""
import logging
from dataclasses import dataclass

import numpy as np

from src.atomic.constants import CONSTANTS
from src.config import LAMB_DICKE, LAMB_DICKE_LIMIT, ROTATION_RABI, TRAP_FREQUENCY
from src.errors import InvalidArgument

logger = logging.getLogger("ecat.metrology.motion")


@dataclass(frozen=True)
class MotionParams:
    omega_e: float = ROTATION_RABI          # rad/s
    lamb_dicke: float = LAMB_DICKE
    omega_tr: float = TRAP_FREQUENCY        # rad/s
    spread: float | None = None             # m, sqrt(hbar / 2 m omega_tr)
    wavevector: float | None = None         # 1/m
    site_position: float = 0.0              # m

    def __post_init__(self):
        for name in ("omega_e", "lamb_dicke", "omega_tr"):
            if getattr(self, name) < 0:
                raise InvalidArgument(name, f"must be >= 0, got {getattr(self, name)}")
        if self.lamb_dicke >= LAMB_DICKE_LIMIT:
            raise InvalidArgument("lamb_dicke", f"must be < {LAMB_DICKE_LIMIT}, got {self.lamb_dicke}")
        if self.spread is not None and self.wavevector is not None:
            implied = self.wavevector * self.spread / np.sqrt(2)
            if not np.isclose(implied, self.lamb_dicke, rtol=1e-6, atol=1e-12):
                raise InvalidArgument("lamb_dicke", f"k s / sqrt(2) = {implied:.6g} disagrees with {self.lamb_dicke}")

    @classmethod
    def from_trap(cls, omega_e: float, wavevector: float, mass: float, omega_tr: float, **kwargs) -> "MotionParams":
        """Lamb-Dicke parameter from the ground-state spread of a harmonic site."""
        spread = np.sqrt(CONSTANTS.hbar / (2 * mass * omega_tr))
        return cls(omega_e, wavevector * spread / np.sqrt(2), omega_tr, spread, wavevector, **kwargs)

    @property
    def site_phase(self) -> float:
        """k x0 (mod 2 pi), absorbed into |e'>."""
        return float(np.mod((self.wavevector or 0.0) * self.site_position, 2 * np.pi))

    def hamiltonian(self) -> np.ndarray:
        c = self.lamb_dicke * self.omega_e
        return np.array([
            [0.0, self.omega_e, c],
            [self.omega_e, 0.0, 0.0],
            [c, 0.0, self.omega_tr],
        ])

    def to_dict(self) -> dict:
        return {
            "omega_e": self.omega_e,
            "lamb_dicke": self.lamb_dicke,
            "omega_tr": self.omega_tr,
            "spread": self.spread,
            "wavevector": self.wavevector,
        }


def phonon_leakage_perturbative(m: MotionParams) -> float:
    return float((m.lamb_dicke * m.omega_e / m.omega_tr) ** 2)


def phonon_leakage(m: MotionParams) -> float:
    """|e',1> population relative to |g,0> in the lowest dressed eigenvector."""
    _, vectors = np.linalg.eigh(m.hamiltonian())
    lowest = vectors[:, 0]
    ratio = float(abs(lowest[2]) ** 2 / abs(lowest[0]) ** 2)
    logger.debug(f"phonon leakage {ratio:.3e} (perturbative {phonon_leakage_perturbative(m):.3e})")
    return ratio


def phonon_population_average(m: MotionParams) -> float:
    """Long-time average of the |e',1> population starting from |g,0>."""
    _, vectors = np.linalg.eigh(m.hamiltonian())
    return float(np.sum(np.abs(vectors[2, :]) ** 2 * np.abs(vectors[0, :]) ** 2))
