"""
Scaling Exponents
Power-law diagnostics of a cat-size scan: N_max ~ n^k before the level-spacing transition,
and a flat or falling N_max after it.
"""
import logging

import numpy as np

from src.errors import InvalidArgument
from src.scaling.optimizer import SizeResult

logger = logging.getLogger("ecat.scaling.exponents")

MIN_POINTS_PER_REGIME = 6


def _split_index(n_max: np.ndarray) -> int:
    """Index of the largest N_max (first one on ties)."""
    return int(np.argmax(n_max))


def scaling_exponents(results: list[SizeResult], split_n: int | None = None) -> dict:
    """
    Fit ln N_max against ln n below the transition and dN_max/dn above it.

    Args:
        results: scan output, any order
        split_n: first n of the post-transition branch (defaults to the N_max peak)

    Returns:
        Dict with the pre-transition exponent, post-transition slope and the split point

    Raises:
        InvalidArgument: if either branch has fewer than MIN_POINTS_PER_REGIME points
    """
    ordered = sorted(results, key=lambda r: r.n)
    ns = np.array([r.n for r in ordered], dtype=float)
    n_max = np.array([r.n_max for r in ordered], dtype=float)
    if split_n is None:
        split_n = int(ns[_split_index(n_max)])

    pre = ns < split_n
    post = ns >= split_n
    if pre.sum() < MIN_POINTS_PER_REGIME or post.sum() < MIN_POINTS_PER_REGIME:
        raise InvalidArgument(
            "results",
            f"need {MIN_POINTS_PER_REGIME} points per regime, got {int(pre.sum())} before and "
            f"{int(post.sum())} after n={split_n}",
        )

    pre_exponent = float(np.polyfit(np.log(ns[pre]), np.log(n_max[pre]), 1)[0])
    post_slope = float(np.polyfit(ns[post], n_max[post], 1)[0])
    logger.info(f"N_max ~ n^{pre_exponent:.2f} below n={split_n}; dN/dn = {post_slope:.3f} above")
    return {
        "pre_exponent": pre_exponent,
        "post_slope": post_slope,
        "split_n": split_n,
        "peak_n_max": int(n_max.max()),
    }


def single_peaked(results: list[SizeResult], tolerance: int = 1) -> bool:
    """True when N_max rises to its maximum and does not rise again by more than `tolerance`."""
    n_max = np.array([r.n_max for r in sorted(results, key=lambda r: r.n)])
    peak = _split_index(n_max)
    rising = np.all(np.diff(n_max[:peak + 1]) >= -tolerance)
    falling = np.all(np.diff(n_max[peak:]) <= tolerance)
    return bool(rising and falling)
