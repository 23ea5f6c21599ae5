"""
w*(N) Memo Table
The dressing strength reaching a nonlinearity-fidelity target, tabulated on a fixed N grid
and interpolated in log-log space inside the cat-size optimizer.
"""
import logging
import threading
from dataclasses import dataclass, field

import numpy as np

from src.config import (
    FNL_PHI_POINTS,
    FNL_TAU_POINTS,
    FNL_TAU_WINDOW,
    FNL_THETA_POINTS,
    W_MEMO_N_GRID,
    W_UPPER_BRACKET,
)
from src.errors import InvalidArgument, NumericalFailure
from src.ingestion.memo_cache import load_memo_table, save_memo_table
from src.kerr.nonlinearity import w_for_target_fnl

logger = logging.getLogger("ecat.scaling.memo")

_build_lock = threading.Lock()


def grid_settings() -> dict:
    """Optimizer settings that a cached table depends on."""
    return {
        "theta_points": FNL_THETA_POINTS,
        "phi_points": FNL_PHI_POINTS,
        "tau_points": FNL_TAU_POINTS,
        "tau_window": FNL_TAU_WINDOW,
    }


@dataclass(frozen=True)
class WStarTable:
    """w* on an increasing N grid for one F_nl target."""
    f_target: float
    n_grid: tuple[int, ...]
    w_values: tuple[float, ...] = field(repr=False)

    def __post_init__(self):
        if len(self.n_grid) != len(self.w_values) or len(self.n_grid) < 2:
            raise InvalidArgument("n_grid", "need at least two (N, w*) pairs of matching length")
        if any(b <= a for a, b in zip(self.n_grid, self.n_grid[1:])):
            raise InvalidArgument("n_grid", "N grid must be strictly increasing")
        if any(not 0 < w < 0.5 for w in self.w_values):
            raise InvalidArgument("w_values", "every w* must lie in (0, 0.5)")

    @classmethod
    def from_dict(cls, f_target: float, table: dict[int, float]) -> "WStarTable":
        ns = tuple(sorted(int(n) for n in table))
        return cls(f_target, ns, tuple(float(table[n]) for n in ns))

    @classmethod
    def from_power_law(cls, f_target: float, prefactor: float, exponent: float,
                       n_grid: tuple[int, ...] = W_MEMO_N_GRID) -> "WStarTable":
        """Table following w* = prefactor * N^exponent (used for fast what-if scans)."""
        values = tuple(min(prefactor * n ** exponent, W_UPPER_BRACKET) for n in n_grid)
        return cls(f_target, tuple(n_grid), values)

    def to_dict(self) -> dict[int, float]:
        return dict(zip(self.n_grid, self.w_values))

    def __call__(self, n_atoms: float) -> float:
        """Log-log interpolation; linear extrapolation in log space outside the grid."""
        log_n = np.log(np.asarray(self.n_grid, dtype=float))
        log_w = np.log(np.asarray(self.w_values))
        x = np.log(float(n_atoms))
        if x <= log_n[0]:
            slope = (log_w[1] - log_w[0]) / (log_n[1] - log_n[0])
            value = log_w[0] + slope * (x - log_n[0])
        elif x >= log_n[-1]:
            slope = (log_w[-1] - log_w[-2]) / (log_n[-1] - log_n[-2])
            value = log_w[-1] + slope * (x - log_n[-1])
        else:
            value = np.interp(x, log_n, log_w)
        return float(min(np.exp(value), W_UPPER_BRACKET))


def _solve_point(n_atoms: int, f_target: float) -> float:
    try:
        return w_for_target_fnl(n_atoms, f_target)
    except NumericalFailure as e:
        # small ensembles keep F_nl above the target up to the weak-dressing bracket
        if "stays above" not in str(e):
            raise
        logger.warning(f"w*(N={n_atoms}) clamped to {W_UPPER_BRACKET}: {e}")
        return W_UPPER_BRACKET * (1 - 1e-9)


def build_w_star_table(
    f_target: float,
    n_grid: tuple[int, ...] = W_MEMO_N_GRID,
    cache_dir=None,
    use_cache: bool = True,
) -> WStarTable:
    """
    w*(N) for every N of the grid, from the persisted memo cache when it covers the grid.

    Args:
        f_target: F_nl target
        n_grid: atom numbers to tabulate
        cache_dir: Optional override of the cache directory
        use_cache: read and write the JSON memo cache
    """
    settings = grid_settings()
    with _build_lock:
        if use_cache:
            cached = load_memo_table(f_target, settings, n_grid, cache_dir)
            if cached is not None:
                return WStarTable.from_dict(f_target, {n: cached[n] for n in n_grid})

        logger.info(f"Building w* table for F_nl={f_target} on {len(n_grid)} atom numbers")
        table = {n: _solve_point(n, f_target) for n in n_grid}
        if use_cache:
            save_memo_table(f_target, settings, table, cache_dir)
    return WStarTable.from_dict(f_target, table)
