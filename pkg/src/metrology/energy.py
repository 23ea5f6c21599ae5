"""
Energy-Decoherence Detection
Ramsey visibility of the energy cat under energy-basis decoherence, trap loss and phase
diffusion, and the smallest time-discretization scale sigma the revival can resolve.
"""
import logging
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from src.atomic.constants import CONSTANTS
from src.config import (
    BBR_SHIFT_NOISE_COEFF,
    DELTA_E_EV,
    LASER_LINEWIDTH,
    TRAP_LOSS_RATE,
    VISIBILITY_THRESHOLD,
    WAITING_TIME_GRID,
)
from src.errors import InvalidArgument, NumericalFailure

logger = logging.getLogger("ecat.metrology.energy")


@dataclass(frozen=True)
class EnergyCatSpec:
    """N atoms, each split by delta_e joules between ground and clock state."""
    n_atoms: int = 165
    delta_e: float = DELTA_E_EV * CONSTANTS.electron_volt

    def __post_init__(self):
        if self.n_atoms < 1:
            raise InvalidArgument("n_atoms", f"must be >= 1, got {self.n_atoms}")
        if self.delta_e <= 0:
            raise InvalidArgument("delta_e", f"must be positive, got {self.delta_e}")

    @classmethod
    def from_ev(cls, n_atoms: int, delta_e_ev: float = DELTA_E_EV) -> "EnergyCatSpec":
        return cls(n_atoms, delta_e_ev * CONSTANTS.electron_volt)

    @property
    def total_energy(self) -> float:
        """N * Delta E in joules."""
        return self.n_atoms * self.delta_e

    @property
    def omega_nm(self) -> float:
        """Angular frequency separating the two cat components, N Delta E / hbar."""
        return self.total_energy / CONSTANTS.hbar

    def to_dict(self) -> dict:
        return {
            "n_atoms": self.n_atoms,
            "delta_e_ev": self.delta_e / CONSTANTS.electron_volt,
            "total_energy_ev": self.total_energy / CONSTANTS.electron_volt,
        }


@dataclass(frozen=True)
class NoiseModel:
    trap_loss_rate: float = TRAP_LOSS_RATE              # 1/s per atom
    correlated_linewidth: float = LASER_LINEWIDTH       # rad/s
    uncorrelated_linewidth: float = 0.0                 # rad/s
    sigma: float = 0.0                                  # s

    def __post_init__(self):
        for name in ("trap_loss_rate", "correlated_linewidth", "uncorrelated_linewidth", "sigma"):
            value = getattr(self, name)
            if value < 0:
                raise InvalidArgument(name, f"must be >= 0, got {value}")

    @property
    def is_silent(self) -> bool:
        return self.trap_loss_rate == 0 and self.correlated_linewidth == 0 and self.uncorrelated_linewidth == 0

    def with_thermal_noise(self, temperature: float, delta_t: float,
                           coefficient: float = BBR_SHIFT_NOISE_COEFF) -> "NoiseModel":
        """Copy with the BBR-shift fluctuation added to the correlated linewidth."""
        extra = thermal_noise_linewidth(temperature, delta_t, coefficient)
        return replace(self, correlated_linewidth=self.correlated_linewidth + extra)

    def to_dict(self) -> dict:
        return {
            "trap_loss_rate": self.trap_loss_rate,
            "correlated_linewidth": self.correlated_linewidth,
            "uncorrelated_linewidth": self.uncorrelated_linewidth,
            "sigma": self.sigma,
        }


def energy_decoherence_rate(spec: EnergyCatSpec, sigma: float) -> float:
    """gamma_E = sigma (N Delta E / hbar)^2."""
    if sigma < 0:
        raise InvalidArgument("sigma", f"must be >= 0, got {sigma}")
    return sigma * spec.omega_nm ** 2


def coherence_decay(omega_nm: float, sigma: float, t: float) -> complex:
    """rho_nm(t) / rho_nm(0) under the double-commutator master equation."""
    if sigma < 0 or t < 0:
        raise InvalidArgument("t" if t < 0 else "sigma", "must be >= 0")
    return complex(np.exp(-1j * omega_nm * t) * np.exp(-sigma * omega_nm ** 2 * t))


def thermal_noise_linewidth(temperature: float, delta_t: float, coefficient: float = BBR_SHIFT_NOISE_COEFF) -> float:
    """Frequency noise (rad/s) from environment temperature drift delta_t via the BBR shift, ~ T^3 dT."""
    if temperature < 0 or delta_t < 0:
        raise InvalidArgument("temperature" if temperature < 0 else "delta_t", "must be >= 0")
    return coefficient * temperature ** 3 * delta_t


def visibility_factors(spec: EnergyCatSpec, noise: NoiseModel, t: float) -> dict:
    """Each damping factor of the Ramsey revival at waiting time t."""
    if t < 0:
        raise InvalidArgument("t", f"must be >= 0, got {t}")
    n = spec.n_atoms
    return {
        "energy_decoherence": float(np.exp(-energy_decoherence_rate(spec, noise.sigma) * t)),
        "trap_loss": float(np.exp(-n * noise.trap_loss_rate * t)),
        "correlated_phase": float(np.exp(-(n * noise.correlated_linewidth * t) ** 2)),
        "uncorrelated_phase": float(np.exp(-n * (noise.uncorrelated_linewidth * t) ** 2)),
    }


def ramsey_visibility(spec: EnergyCatSpec, noise: NoiseModel, t: float) -> float:
    """Product of all damping factors; 1 at t = 0."""
    return float(np.prod(list(visibility_factors(spec, noise, t).values())))


def baseline_visibility(spec: EnergyCatSpec, noise: NoiseModel, t: float) -> float:
    """Visibility with energy decoherence switched off."""
    return ramsey_visibility(spec, replace(noise, sigma=0.0), t)


@dataclass(frozen=True)
class DetectionPolicy:
    """
    Wait as long as the competing noise keeps the baseline visibility at `threshold`;
    sigma is detectable once it alone damps the revival by another factor `threshold`.
    """
    threshold: float = VISIBILITY_THRESHOLD
    t_min: float = WAITING_TIME_GRID[0]
    t_max: float = WAITING_TIME_GRID[1]
    points: int = WAITING_TIME_GRID[2]

    def __post_init__(self):
        if not 0 < self.threshold < 1:
            raise InvalidArgument("threshold", f"must lie in (0, 1), got {self.threshold}")
        if not 0 < self.t_min < self.t_max or self.points < 2:
            raise InvalidArgument("t_min", "need 0 < t_min < t_max and at least two grid points")

    def waiting_time(self, spec: EnergyCatSpec, noise: NoiseModel) -> float:
        """Longest t on the log grid (refined by root finding) with baseline visibility >= threshold."""
        grid = np.geomspace(self.t_min, self.t_max, self.points)
        excess = np.array([baseline_visibility(spec, noise, t) for t in grid]) - self.threshold
        if excess[0] < 0:
            raise NumericalFailure(
                "metrology", "min_detectable_sigma",
                f"baseline visibility below {self.threshold:.4f} already at t={self.t_min} s",
            )
        below = np.flatnonzero(excess < 0)
        if below.size == 0:
            logger.warning(f"Baseline visibility stays above threshold up to t={self.t_max} s")
            return float(self.t_max)
        hi = int(below[0])
        return float(brentq(
            lambda t: baseline_visibility(spec, noise, t) - self.threshold,
            grid[hi - 1], grid[hi], xtol=1e-15, rtol=1e-12,
        ))

    def sigma_at(self, spec: EnergyCatSpec, t: float) -> float:
        """sigma whose gamma_E damping alone equals the threshold at t."""
        return -np.log(self.threshold) / (spec.omega_nm ** 2 * t)


def sigma_bound(spec: EnergyCatSpec, noise: NoiseModel, policy: DetectionPolicy | None = None) -> dict:
    """
    Waiting time, minimum detectable sigma and the visibility breakdown at that point.

    A noise-free model has unbounded sensitivity: sigma_min is reported as 0 with t_star inf.
    """
    policy = policy or DetectionPolicy()
    if noise.is_silent:
        logger.warning("No competing noise: sensitivity to sigma is unbounded")
        return {"t_star": float("inf"), "sigma_min": 0.0, "gamma_e": 0.0, "factors": {}}

    t_star = policy.waiting_time(spec, noise)
    sigma_min = policy.sigma_at(spec, t_star)
    at_bound = replace(noise, sigma=sigma_min)
    logger.info(f"N={spec.n_atoms}: t*={t_star:.4e} s, sigma_min={sigma_min:.3e} s")
    return {
        "t_star": t_star,
        "sigma_min": float(sigma_min),
        "gamma_e": energy_decoherence_rate(spec, sigma_min),
        "factors": visibility_factors(spec, at_bound, t_star),
    }


def min_detectable_sigma(spec: EnergyCatSpec, noise: NoiseModel, policy: DetectionPolicy | None = None) -> float:
    return sigma_bound(spec, noise, policy)["sigma_min"]
