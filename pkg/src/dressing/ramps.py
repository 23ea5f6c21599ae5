"""
Dressing Ramps
Switch-on / switch-off profiles of the dressing laser, the adiabaticity ratio of a ramp,
and the population that stays in the dressed ground state.

The two-level problem couples |psi_1> (no Rydberg excitation, energy 0) to |psi_2>
(one collective Rydberg excitation, energy Delta) with strength sqrt(N_e) Omega_r / 2.
Its eigenvalues are the E_-, E_+ of dressed_energies.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from src.config import RAMP_MIN_POINTS, RAMP_RK4_STEPS_PER_PERIOD
from src.dressing.params import dressed_energies
from src.errors import InvalidArgument

logger = logging.getLogger("ecat.dressing.ramps")

RAMP_SHAPES = ("linear", "cosine")


@dataclass(frozen=True)
class RampProfile:
    """
    Omega_r(t) and Delta(t) on [0, duration], sampled on a uniform grid.

    The callables are kept so the integrator can evaluate between grid points.
    """
    duration: float
    omega_fn: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    delta_fn: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    points: int = RAMP_MIN_POINTS
    switch_on: bool = True
    label: str = "custom"

    def __post_init__(self):
        duration = float(self.duration)
        if not np.isfinite(duration) or duration <= 0:
            raise InvalidArgument("duration", f"ramp duration must be positive, got {duration}")
        if self.points < RAMP_MIN_POINTS:
            raise InvalidArgument("points", f"need at least {RAMP_MIN_POINTS} grid points, got {self.points}")
        object.__setattr__(self, "duration", duration)
        if self.switch_on and abs(float(self.omega_fn(np.array([0.0]))[0])) > 0:
            raise InvalidArgument("omega_fn", "a switch-on ramp must start from Omega_r = 0")
        if np.any(self.delta_fn(self.times) == 0):
            raise InvalidArgument("delta_fn", "detuning crosses zero during the ramp")

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.duration, self.points)

    @property
    def omega_samples(self) -> np.ndarray:
        return np.asarray(self.omega_fn(self.times), dtype=float)

    @property
    def delta_samples(self) -> np.ndarray:
        return np.asarray(self.delta_fn(self.times), dtype=float)

    def reversed(self) -> "RampProfile":
        """Time-mirrored profile (switch-off from a switch-on ramp)."""
        duration, omega_fn, delta_fn = self.duration, self.omega_fn, self.delta_fn
        return RampProfile(
            duration=duration,
            omega_fn=lambda t: omega_fn(duration - np.asarray(t)),
            delta_fn=lambda t: delta_fn(duration - np.asarray(t)),
            points=self.points,
            switch_on=False,
            label=f"{self.label}-reversed",
        )


def switch_on_ramp(
    omega_max: float,
    delta: float,
    duration: float,
    shape: str = "linear",
    points: int = RAMP_MIN_POINTS,
) -> RampProfile:
    """Ramp Omega_r from 0 to omega_max at constant detuning."""
    if shape not in RAMP_SHAPES:
        raise InvalidArgument("shape", f"must be one of {RAMP_SHAPES}, got {shape!r}")
    duration = float(duration)
    delta = float(delta)

    if shape == "linear":
        def omega_fn(t):
            return omega_max * np.clip(np.asarray(t, dtype=float) / duration, 0.0, 1.0)
    else:
        def omega_fn(t):
            s = np.clip(np.asarray(t, dtype=float) / duration, 0.0, 1.0)
            return omega_max * 0.5 * (1 - np.cos(np.pi * s))

    def delta_fn(t):
        return np.full(np.shape(t), delta, dtype=float)

    return RampProfile(duration, omega_fn, delta_fn, points=points, switch_on=True, label=shape)


def constant_profile(omega_r: float, delta: float, duration: float, points: int = RAMP_MIN_POINTS) -> RampProfile:
    return RampProfile(
        duration,
        lambda t: np.full(np.shape(t), float(omega_r)),
        lambda t: np.full(np.shape(t), float(delta)),
        points=points,
        switch_on=False,
        label="constant",
    )


def mixing_angle_rate(ramp: RampProfile, n_e: int) -> np.ndarray:
    """
    theta_dot = sqrt(N_e) (Omega_r Delta_dot - Delta Omega_r_dot) / (N_e Omega_r^2 + Delta^2)
    on the ramp grid.
    """
    t = ramp.times
    omega = ramp.omega_samples
    delta = ramp.delta_samples
    omega_dot = np.gradient(omega, t)
    delta_dot = np.gradient(delta, t)
    root = np.sqrt(n_e)
    return root * (omega * delta_dot - delta * omega_dot) / (n_e * omega ** 2 + delta ** 2)


def adiabaticity_ratio(ramp: RampProfile, n_e: int) -> float:
    """
    max_t |theta_dot / 2| / E_+.

    theta_dot / 2 is the off-diagonal element of the Schrodinger equation in the dressed basis.
    """
    if n_e < 0:
        raise InvalidArgument("n_e", f"must be >= 0, got {n_e}")
    if n_e == 0:
        return 0.0
    rate = mixing_angle_rate(ramp, n_e)
    e_plus = np.array([
        dressed_energies(n_e, omega, delta)[1]
        for omega, delta in zip(ramp.omega_samples, ramp.delta_samples)
    ])
    return float(np.max(np.abs(rate) / 2 / np.abs(e_plus)))


def _hamiltonian(omega: float, delta: float, n_e: int) -> np.ndarray:
    coupling = 0.5 * np.sqrt(n_e) * omega
    return np.array([[0.0, coupling], [coupling, delta]], dtype=complex)


def _dressed_ground(omega: float, delta: float, n_e: int) -> np.ndarray:
    _, vecs = np.linalg.eigh(_hamiltonian(omega, delta, n_e).real)
    return vecs[:, 0].astype(complex)


def _rk4_propagate(ramp: RampProfile, n_e: int, psi: np.ndarray) -> np.ndarray:
    omega = ramp.omega_samples
    delta = ramp.delta_samples
    gap = np.max(np.sqrt(delta ** 2 + n_e * omega ** 2))
    period = 2 * np.pi / gap
    steps = max(ramp.points - 1, int(np.ceil(ramp.duration / period * RAMP_RK4_STEPS_PER_PERIOD)))
    dt = ramp.duration / steps
    logger.debug(f"RK4 over {ramp.label} ramp: {steps} steps, dt = {dt:.3e} s")

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        tt = np.array([t])
        h = _hamiltonian(float(ramp.omega_fn(tt)[0]), float(ramp.delta_fn(tt)[0]), n_e)
        return -1j * (h @ y)

    t = 0.0
    y = psi.astype(complex)
    for _ in range(steps):
        k1 = rhs(t, y)
        k2 = rhs(t + dt / 2, y + dt / 2 * k1)
        k3 = rhs(t + dt / 2, y + dt / 2 * k2)
        k4 = rhs(t + dt, y + dt * k3)
        y = y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        t += dt
    return y


def dressed_ground_population(ramp: RampProfile, n_e: int) -> float:
    """
    Start in |psi_1>, integrate through one ramp, and return the population of the
    instantaneous dressed ground state at its final time.
    """
    if n_e < 0:
        raise InvalidArgument("n_e", f"must be >= 0, got {n_e}")
    if n_e == 0:
        return 1.0
    psi = _rk4_propagate(ramp, n_e, np.array([1.0, 0.0], dtype=complex))
    final = _dressed_ground(float(ramp.omega_samples[-1]), float(ramp.delta_samples[-1]), n_e)
    return float(np.clip(abs(np.vdot(final, psi)) ** 2, 0.0, 1.0))


def ground_return_probability(ramp: RampProfile, n_e: int, hold: float = 0.0) -> float:
    """
    Full dressing cycle: switch-on along `ramp`, hold at its final values for `hold`
    seconds, then the mirrored switch-off. Returns the population back in |psi_1>.
    """
    if n_e < 0:
        raise InvalidArgument("n_e", f"must be >= 0, got {n_e}")
    hold = float(hold)
    if not np.isfinite(hold) or hold < 0:
        raise InvalidArgument("hold", f"must be >= 0, got {hold}")
    if n_e == 0:
        return 1.0
    psi = _rk4_propagate(ramp, n_e, np.array([1.0, 0.0], dtype=complex))
    if hold > 0:
        h = _hamiltonian(float(ramp.omega_samples[-1]), float(ramp.delta_samples[-1]), n_e)
        energies, vecs = np.linalg.eigh(h)
        psi = vecs @ (np.exp(-1j * energies * hold) * (vecs.conj().T @ psi))
    psi = _rk4_propagate(ramp.reversed(), n_e, psi)
    return float(np.clip(abs(psi[0]) ** 2, 0.0, 1.0))
