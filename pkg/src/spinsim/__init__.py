"""Spinsim module - Symmetric Dicke-basis states, rotations, cat states and Husimi Q."""
from src.spinsim.states import (
    CollectiveState,
    CSSParams,
    IdealCatParams,
    css_state,
    energy_cat,
    fidelity,
    ghz_weight,
    ideal_cat,
    overlap,
    pole_state,
    rotate_x,
    rotate_y,
    rotate_z,
)
from src.spinsim.husimi import husimi_grid, husimi_q, sphere_integral

__all__ = [
    "CollectiveState",
    "CSSParams",
    "IdealCatParams",
    "css_state",
    "energy_cat",
    "fidelity",
    "ghz_weight",
    "husimi_grid",
    "husimi_q",
    "ideal_cat",
    "overlap",
    "pole_state",
    "rotate_x",
    "rotate_y",
    "rotate_z",
    "sphere_integral",
]
