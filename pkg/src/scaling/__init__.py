"""Scaling module - Cat-size optimizer under fidelity budgets, the w*(N) memo table and scaling-exponent fits."""
from src.scaling.exponents import scaling_exponents, single_peaked
from src.scaling.memo import WStarTable, build_w_star_table
from src.scaling.optimizer import (
    FidelityBudget,
    SizeResult,
    critical_ratio,
    detuning_cap,
    detuning_cap_from_spacing,
    f_ih_for_geometry,
    lattice_side,
    max_cat_size,
    scan_cat_sizes,
)

__all__ = [
    "FidelityBudget",
    "SizeResult",
    "WStarTable",
    "build_w_star_table",
    "critical_ratio",
    "detuning_cap",
    "detuning_cap_from_spacing",
    "f_ih_for_geometry",
    "lattice_side",
    "max_cat_size",
    "scaling_exponents",
    "scan_cat_sizes",
    "single_peaked",
]
