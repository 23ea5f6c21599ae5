"""Kerr module - Exact and Kerr-truncated evolution, F_nl optimizer, revival and timing tolerance."""
from src.kerr.evolution import best_z_rotation, evolve, spectrum, timing_tolerance
from src.kerr.nonlinearity import (
    FnlResult,
    exact_cat_evolution,
    f_nl,
    f_nl_exhaustive,
    revival_fidelity,
    w_for_target_fnl,
)

__all__ = [
    "FnlResult",
    "best_z_rotation",
    "evolve",
    "exact_cat_evolution",
    "f_nl",
    "f_nl_exhaustive",
    "revival_fidelity",
    "spectrum",
    "timing_tolerance",
    "w_for_target_fnl",
]
