"""
Cat-Size Optimizer
Largest cat size N for a Rydberg level n under separate budgets for the nonlinearity,
inhomogeneity and Rydberg-decay fidelities.

For a given N the dressing strength w comes from the w*(N) table, the detuning is the
smaller of the inhomogeneity limit and the level-spacing cap, and the decay budget
exp(-0.95 (N/2) gamma_r w^2 tau_c) >= f_dc_target fixes the largest admissible N.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from src.atomic import bbr_rate, channel_table, lifetime, rydberg_level
from src.config import (
    DEFAULT_F_DC_TARGET,
    DEFAULT_F_IH_TARGET,
    LATTICE_SPACING,
    MAX_FIXED_POINT_ITER,
    N_CEILING,
    NEIGHBOUR_COUPLING_RATIO,
    S_CHARACTER,
)
from src.dressing import DressingParams, c6_coefficient, c6_for_blockade, detuning_for_blockade
from src.errors import InvalidArgument, NumericalFailure
from src.inhomogeneity import Lattice, build_interactions, f_ih_perturbative
from src.scaling.memo import WStarTable, build_w_star_table

logger = logging.getLogger("ecat.scaling.optimizer")

BINDING_INHOMOGENEITY = "inhomogeneity"
BINDING_LEVEL_SPACING = "level-spacing"
NEIGHBOUR_SERIES = ("3S1", "3D1")
TARGET_SERIES = "3S1"

_RATIO_BRACKET = (0.02, 1.0)
_RATIO_STEP = 1.2
# reference dressing for the geometry-only F_IH evaluation
_REFERENCE_DELTA = 2 * np.pi * 100e6
_REFERENCE_W = 0.05


@dataclass(frozen=True)
class FidelityBudget:
    f_nl_target: float
    f_ih_target: float = DEFAULT_F_IH_TARGET
    f_dc_target: float = DEFAULT_F_DC_TARGET
    temperature: float = 3.0

    def __post_init__(self):
        for name in ("f_nl_target", "f_ih_target", "f_dc_target"):
            value = getattr(self, name)
            if not 0 < value < 1:
                raise InvalidArgument(name, f"must lie in (0, 1), got {value}")
        if self.temperature < 0:
            raise InvalidArgument("temperature", f"must be >= 0 K, got {self.temperature}")

    def to_dict(self) -> dict:
        return {
            "f_nl_target": self.f_nl_target,
            "f_ih_target": self.f_ih_target,
            "f_dc_target": self.f_dc_target,
            "temperature": self.temperature,
        }


@dataclass(frozen=True)
class SizeResult:
    n: int
    n_max: int
    delta: float
    w: float
    tau_c: float
    r_b: float
    diagonal: float
    gamma_s: float
    gamma_bbr: float
    binding: str
    temperature: float
    unconstrained: bool = False

    @property
    def lam(self) -> float:
        """0.95 (N/2) gamma_r w^2 tau_c at N = n_max."""
        return 0.95 * self.n_max / 2 * (self.gamma_s + self.gamma_bbr) * self.w ** 2 * self.tau_c

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "n_max": self.n_max,
            "delta": self.delta,
            "w": self.w,
            "tau_c": self.tau_c,
            "r_b": self.r_b,
            "diagonal": self.diagonal,
            "gamma_s": self.gamma_s,
            "gamma_bbr": self.gamma_bbr,
            "binding": self.binding,
            "temperature": self.temperature,
            "unconstrained": self.unconstrained,
        }


def detuning_cap_from_spacing(
    spacing: float, s_character: float = S_CHARACTER, coupling_ratio: float = NEIGHBOUR_COUPLING_RATIO
) -> float:
    """
    Largest Delta leaving at least s_character of the Rydberg population in the target when a
    neighbour sits `spacing` away and couples `coupling_ratio` times more strongly:
    1 / (1 + r^2 (Delta / (S - Delta))^2) >= s.
    """
    if not 0.5 < s_character < 1:
        raise InvalidArgument("s_character", f"must lie in (0.5, 1), got {s_character}")
    if coupling_ratio <= 0:
        raise InvalidArgument("coupling_ratio", f"must be positive, got {coupling_ratio}")
    if np.isinf(spacing):
        return np.inf
    q = np.sqrt(1 / s_character - 1) / coupling_ratio
    return float(abs(spacing) * q / (1 + q))


def nearest_neighbour_spacing(n: int, data_dir=None) -> float:
    """Smallest |E - E_target| (rad/s) to a 3S1 or 3D1 level other than the target."""
    target = rydberg_level(TARGET_SERIES, n, data_dir)
    gaps = []
    for series in NEIGHBOUR_SERIES:
        for n_other in range(n - 2, n + 3):
            if series == TARGET_SERIES and n_other == n:
                continue
            try:
                other = rydberg_level(series, n_other, data_dir)
            except InvalidArgument:
                continue
            gaps.append(abs(other.energy - target.energy))
    return float(min(gaps)) if gaps else np.inf


def detuning_cap(
    n: int, s_character: float = S_CHARACTER, coupling_ratio: float = NEIGHBOUR_COUPLING_RATIO, data_dir=None
) -> float:
    """Level-spacing cap on the detuning (rad/s); inf when no neighbour is tabulated."""
    return detuning_cap_from_spacing(nearest_neighbour_spacing(n, data_dir), s_character, coupling_ratio)


def lattice_side(n_atoms: float) -> int:
    """Side of the smallest cube holding n_atoms."""
    return max(2, int(np.ceil(round(float(n_atoms) ** (1 / 3), 9))))


def f_ih_for_geometry(side: int, ratio: float) -> float:
    """Perturbative F_IH of a side^3 cube whose diagonal is `ratio` blockade radii."""
    lattice = Lattice.cubic(side)
    r_b = lattice.diagonal / ratio
    params = DressingParams.from_w(_REFERENCE_W, _REFERENCE_DELTA, c6=c6_for_blockade(r_b, _REFERENCE_DELTA))
    return f_ih_perturbative(build_interactions(lattice, params), params.tau_c).fidelity


@lru_cache(maxsize=64)
def critical_ratio(side: int, f_ih_target: float) -> float:
    """
    Largest D / R_b keeping F_IH >= f_ih_target for a cube of side^3 atoms. F_IH depends on
    the geometry only through D / R_b since chi0 tau_c = pi.

    Ratios are stepped up geometrically from the lower bracket so the search stays in the
    range where the expansion holds, then the first crossing is refined.
    """
    lo, hi = _RATIO_BRACKET
    if f_ih_for_geometry(side, lo) < f_ih_target:
        raise NumericalFailure("scaling", "critical_ratio", f"F_IH below {f_ih_target} even at D/R_b = {lo}")
    previous = lo
    ratio = lo * _RATIO_STEP
    while ratio <= hi:
        if f_ih_for_geometry(side, ratio) < f_ih_target:
            return float(brentq(lambda r: f_ih_for_geometry(side, r) - f_ih_target, previous, ratio, xtol=1e-6))
        previous, ratio = ratio, ratio * _RATIO_STEP
    return hi


def decay_rates(n: int, temperature: float, data_dir=None) -> tuple[float, float]:
    """(gamma_s, gamma_bbr) in 1/s for the 5sns 3S1 level."""
    level = rydberg_level(TARGET_SERIES, n, data_dir)
    channels = channel_table(level, data_dir=data_dir)
    tau, _ = lifetime(level, channels)
    gamma_bbr, _ = bbr_rate(level, temperature, channels)
    return 1.0 / tau, gamma_bbr


def max_cat_size(
    n: int,
    budget: FidelityBudget,
    w_table: WStarTable | None = None,
    data_dir=None,
    lattice_spacing: float = LATTICE_SPACING,
    rates: tuple[float, float] | None = None,
) -> SizeResult:
    """
    Largest N meeting the decay budget at level n.

    Args:
        n: principal quantum number of the 5sns 3S1 dressing level
        budget: fidelity targets and temperature
        w_table: w*(N) table for budget.f_nl_target (built, or read from cache, when omitted)
        data_dir: Optional override of the data directory
        lattice_spacing: spacing of the cubic ensemble
        rates: (gamma_s, gamma_bbr) override in 1/s; computed from the atomic data otherwise

    Raises:
        NumericalFailure: if even N = 2 violates the budget, or the search does not settle
    """
    w_table = w_table or build_w_star_table(budget.f_nl_target)
    if abs(w_table.f_target - budget.f_nl_target) > 1e-12:
        raise InvalidArgument("w_table", f"table built for F_nl={w_table.f_target}, budget asks {budget.f_nl_target}")
    gamma_s, gamma_bbr = rates if rates is not None else decay_rates(n, budget.temperature, data_dir)
    c6 = c6_coefficient(n, data_dir)
    cap = detuning_cap(n, data_dir=data_dir)
    target_lambda = -np.log(budget.f_dc_target)
    trace = []

    def operating_point(n_atoms: float) -> dict:
        w = w_table(n_atoms)
        side = lattice_side(n_atoms)
        diagonal = lattice_spacing * np.sqrt(3) * (side - 1)
        delta_ih = detuning_for_blockade(c6, diagonal / critical_ratio(side, budget.f_ih_target))
        delta = min(delta_ih, cap)
        tau_c = np.pi / (2 * w ** 4 * delta)
        lam = 0.95 * n_atoms / 2 * (gamma_s + gamma_bbr) * w ** 2 * tau_c
        return {
            "w": w, "delta": delta, "tau_c": tau_c, "diagonal": diagonal, "lam": lam,
            "binding": BINDING_INHOMOGENEITY if delta_ih <= cap else BINDING_LEVEL_SPACING,
        }

    def residual(log_n: float) -> float:
        value = operating_point(np.exp(log_n))["lam"] - target_lambda
        trace.append((float(np.exp(log_n)), float(value)))
        return value

    unconstrained = False
    if residual(np.log(N_CEILING)) <= 0:
        n_star, unconstrained = float(N_CEILING), True
        logger.warning(f"n={n}: decay budget met up to the N ceiling {N_CEILING}")
    elif residual(np.log(2)) > 0:
        raise NumericalFailure("scaling", "max_cat_size", f"decay budget violated already at N=2 for n={n}", trace)
    else:
        try:
            log_root = brentq(residual, np.log(2), np.log(N_CEILING), xtol=1e-6, maxiter=MAX_FIXED_POINT_ITER)
        except RuntimeError as e:
            raise NumericalFailure("scaling", "max_cat_size", f"search did not settle for n={n}: {e}", trace)
        n_star = float(np.exp(log_root))

    n_max = max(2, int(np.floor(n_star + 1e-9)))
    point = operating_point(n_max)
    logger.info(
        f"n={n}: N_max={n_max}, Delta/2pi={point['delta'] / (2 * np.pi) / 1e6:.2f} MHz, "
        f"w={point['w']:.4e}, tau_c={point['tau_c'] * 1e3:.3f} ms ({point['binding']})"
    )
    return SizeResult(
        n=n,
        n_max=n_max,
        delta=point["delta"],
        w=point["w"],
        tau_c=point["tau_c"],
        r_b=(c6 / (2 * point["delta"])) ** (1 / 6),
        diagonal=point["diagonal"],
        gamma_s=gamma_s,
        gamma_bbr=gamma_bbr,
        binding=point["binding"],
        temperature=budget.temperature,
        unconstrained=unconstrained,
    )


def scan_cat_sizes(ns, budget: FidelityBudget, w_table: WStarTable | None = None, data_dir=None) -> list[SizeResult]:
    """max_cat_size over a list of principal numbers, in order."""
    w_table = w_table or build_w_star_table(budget.f_nl_target)
    logger.info("═" * 60)
    logger.info(f"Cat-size scan over {len(ns)} levels, F_nl={budget.f_nl_target}, T={budget.temperature} K")
    logger.info("═" * 60)
    return [max_cat_size(int(n), budget, w_table, data_dir) for n in ns]
