"""Inhomogeneity module - Lattice geometry, pair interactions and the inhomogeneity fidelity F_IH."""
from src.inhomogeneity.lattice import (
    InteractionMatrix,
    Lattice,
    build_interactions,
    homogeneous_energy,
    pair_interaction,
)
from src.inhomogeneity.fidelity import (
    PerturbativeFidelity,
    f_ih_exact,
    f_ih_perturbative,
    second_moment,
    third_moment,
)

__all__ = [
    "InteractionMatrix",
    "Lattice",
    "PerturbativeFidelity",
    "build_interactions",
    "f_ih_exact",
    "f_ih_perturbative",
    "homogeneous_energy",
    "pair_interaction",
    "second_moment",
    "third_moment",
]
