"""
Rydberg Decay Model
Branching of the dressed-state decay into loss, de-excitation and dephasing, single-event
probabilities over the cat creation time, the resulting fidelity factors, and the
blackbody survival probability.
"""
import logging
from dataclasses import dataclass

import numpy as np

from src.config import (
    COLLECTIVE_SURVIVAL_THRESHOLD,
    DEEXCITATION_FRACTION,
    DEPHASING_FRACTION,
    LOSS_FRACTION,
    SINGLE_EVENT_WARN,
)
from src.dressing.params import DressingParams
from src.errors import InvalidArgument
from src.spinsim.states import css_amplitudes, pole_state, rotate_y

logger = logging.getLogger("ecat.decoherence.model")


def _non_negative(name: str, value: float) -> float:
    value = float(value)
    if not np.isfinite(value) or value < 0:
        raise InvalidArgument(name, f"must be finite and >= 0, got {value}")
    return value


@dataclass(frozen=True)
class BranchingModel:
    """Fractions of the dressed-state decay ending in each channel."""
    loss_fraction: float = LOSS_FRACTION
    deexcitation_fraction: float = DEEXCITATION_FRACTION
    dephasing_fraction: float = DEPHASING_FRACTION

    def __post_init__(self):
        fractions = (self.loss_fraction, self.deexcitation_fraction, self.dephasing_fraction)
        for name, value in zip(("loss_fraction", "deexcitation_fraction", "dephasing_fraction"), fractions):
            _non_negative(name, value)
        if abs(sum(fractions) - 1.0) > 1e-12:
            raise InvalidArgument("branching", f"fractions must sum to 1, got {sum(fractions)}")

    @property
    def destructive_fraction(self) -> float:
        """Share of decays that destroy the cat (loss + de-excitation)."""
        return self.loss_fraction + self.deexcitation_fraction

    def to_dict(self) -> dict:
        return {
            "loss_fraction": self.loss_fraction,
            "deexcitation_fraction": self.deexcitation_fraction,
            "dephasing_fraction": self.dephasing_fraction,
        }


@dataclass(frozen=True)
class DecayParams:
    """
    Decay inputs over one cat creation.

    Attributes:
        gamma_r: bare Rydberg depopulation rate (1/s), radiative plus blackbody
        w: dressing parameter Omega_r / (2 Delta)
        tau_c: cat creation time (s)
        n_atoms: atom number; N_e ~ N/2 excitations on the equator
    """
    gamma_r: float
    w: float
    tau_c: float
    n_atoms: int

    def __post_init__(self):
        _non_negative("gamma_r", self.gamma_r)
        if not 0 < self.w < 0.5:
            raise InvalidArgument("w", f"must lie in (0, 0.5), got {self.w}")
        _non_negative("tau_c", self.tau_c)
        if self.n_atoms < 1:
            raise InvalidArgument("n_atoms", f"must be >= 1, got {self.n_atoms}")

    @classmethod
    def from_dressing(cls, gamma_r: float, params: DressingParams, n_atoms: int) -> "DecayParams":
        return cls(gamma_r=gamma_r, w=params.w, tau_c=params.tau_c, n_atoms=n_atoms)

    @property
    def gamma_dressed(self) -> float:
        return self.gamma_r * self.w ** 2

    @property
    def dressed_lifetime(self) -> float:
        return np.inf if self.gamma_r == 0 else 1.0 / self.gamma_dressed

    @property
    def exposure(self) -> float:
        """(N/2) gamma_dressed tau_c, the mean number of dressed decays per creation."""
        return self.n_atoms / 2 * self.gamma_dressed * self.tau_c

    def event_rate(self, fraction: float) -> float:
        """lambda_k for a branch with the given fraction."""
        return fraction * self.exposure

    def to_dict(self) -> dict:
        return {
            "gamma_r": self.gamma_r,
            "w": self.w,
            "tau_c": self.tau_c,
            "n_atoms": self.n_atoms,
            "gamma_dressed": self.gamma_dressed,
            "dressed_lifetime": self.dressed_lifetime,
            "excitation_approximation": "N_e ~ N/2",
        }


def event_probabilities(p: DecayParams, b: BranchingModel | None = None) -> tuple[float, float, float]:
    """
    Single-event probabilities P_k = lambda_k exp(-lambda_k).

    Returns:
        (P0, P_loss, P_deexc) with P0 = 1 - P_loss - P_deexc
    """
    b = b or BranchingModel()
    lam_l = p.event_rate(b.loss_fraction)
    lam_de = p.event_rate(b.deexcitation_fraction)
    if lam_l + lam_de > SINGLE_EVENT_WARN:
        logger.warning(
            f"Outside the single-event regime: lambda_l + lambda_de = {lam_l + lam_de:.3f} > {SINGLE_EVENT_WARN}"
        )
    p_loss = lam_l * np.exp(-lam_l)
    p_de = lam_de * np.exp(-lam_de)
    p0 = float(np.clip(1.0 - p_loss - p_de, 0.0, 1.0))
    return p0, float(p_loss), float(p_de)


def f_dc(p: DecayParams, b: BranchingModel | None = None) -> float:
    """Probability of no loss or de-excitation: exp(-0.95 (N/2) gamma_dressed tau_c)."""
    b = b or BranchingModel()
    return float(np.exp(-b.destructive_fraction * p.exposure))


def f_dc_total(p: DecayParams, b: BranchingModel | None, f_de_value: float, f_l_value: float) -> float:
    """Mixed-state fidelity P0 + P_l F_l + P_de F_de."""
    p0, p_loss, p_de = event_probabilities(p, b)
    return float(p0 + p_loss * f_l_value + p_de * f_de_value)


def no_event_amplitudes(p: DecayParams, b: BranchingModel | None = None) -> dict:
    """Per-branch single-atom survival factors delta^2 = exp(-f_k gamma_dressed tau_c)."""
    b = b or BranchingModel()
    base = p.gamma_dressed * p.tau_c
    return {
        "loss": float(np.exp(-b.loss_fraction * base)),
        "deexcitation": float(np.exp(-b.deexcitation_fraction * base)),
        "dephasing": float(np.exp(-b.dephasing_fraction * base)),
    }


def p_bbr_zero(n_atoms: int, w: float, gamma_bbr: float, tau_c: float) -> float:
    """Probability that no atom is transferred to a neighbouring Rydberg level by blackbody photons."""
    if n_atoms < 1:
        raise InvalidArgument("n_atoms", f"must be >= 1, got {n_atoms}")
    exponent = n_atoms / 2 * _non_negative("w", w) ** 2 * _non_negative("gamma_bbr", gamma_bbr) * _non_negative(
        "tau_c", tau_c
    )
    return float(np.exp(-exponent))


def collective_decoherence_negligible(p_bbr0: float, threshold: float = COLLECTIVE_SURVIVAL_THRESHOLD) -> bool:
    """False once the blackbody survival drops below the threshold where many-body broadening sets in."""
    return p_bbr0 >= threshold


@dataclass(frozen=True)
class ProductSuperposition:
    """sum_j c_j |a_j1> ... |a_jN> with each component stored as an (N, 2) array over [g, e]."""
    coefficients: np.ndarray
    components: tuple[np.ndarray, ...]

    def apply_single_qubit(self, gate: np.ndarray) -> "ProductSuperposition":
        return ProductSuperposition(self.coefficients, tuple(c @ gate.T for c in self.components))

    def inner(self, other: "ProductSuperposition") -> complex:
        total = 0j
        for c, a in zip(self.coefficients, self.components):
            for d, b in zip(other.coefficients, other.components):
                total += np.conj(c) * d * np.prod(np.sum(np.conj(a) * b, axis=1))
        return complex(total)

    def fidelity_up_to_relative_phase(self, other: "ProductSuperposition") -> float:
        """Fidelity with `other` after the best relative phase between `other`'s two components."""
        if len(other.components) != 2:
            raise InvalidArgument("components", "relative phase needs a two-component target")
        parts = [
            abs(self.inner(ProductSuperposition(np.array([c]), (comp,))))
            for c, comp in zip(other.coefficients, other.components)
        ]
        return float(min(1.0, sum(parts) ** 2))


def _single_qubit_y_rotation(angle: float) -> np.ndarray:
    columns = [rotate_y(pole_state(1, excited=e), angle).amplitudes for e in (False, True)]
    return np.column_stack(columns)


def dephasing_branch(n_atoms: int, p: DecayParams | None = None, b: BranchingModel | None = None) -> dict:
    """
    Sign flip of |e> on the first atom of the equatorial cat, followed by the pi/2 pulse.

    The flipped cat (|->|+>^(N-1) + |+>|->^(N-1))/sqrt(2) is rotated qubit by qubit and
    compared with (|g>|e>^(N-1) + |e>|g>^(N-1))/sqrt(2) up to the relative phase.
    """
    if n_atoms < 2:
        raise InvalidArgument("n_atoms", f"dephasing branch needs N >= 2, got {n_atoms}")
    plus = css_amplitudes(1, np.pi / 2, 0.0)
    minus = css_amplitudes(1, np.pi / 2, np.pi)
    g, e = np.array([1.0 + 0j, 0.0]), np.array([0.0 + 0j, 1.0])

    def product(first: np.ndarray, rest: np.ndarray) -> np.ndarray:
        return np.vstack([first] + [rest] * (n_atoms - 1))

    half = np.full(2, 1 / np.sqrt(2), dtype=complex)
    flipped = ProductSuperposition(half, (product(minus, plus), product(plus, minus)))
    target = ProductSuperposition(half, (product(e, g), product(g, e)))
    rotated = flipped.apply_single_qubit(_single_qubit_y_rotation(np.pi / 2))

    result = {
        "n_atoms": n_atoms,
        "post_flip_norm": float(abs(flipped.inner(flipped))),
        "rotated_fidelity": rotated.fidelity_up_to_relative_phase(target),
        "flip_probability": 0.0,
    }
    if p is not None:
        b = b or BranchingModel()
        result["flip_probability"] = float(-np.expm1(-p.event_rate(b.dephasing_fraction)))
    return result
