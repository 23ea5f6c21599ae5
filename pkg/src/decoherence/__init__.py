"""Decoherence module - Rydberg decay branching, event probabilities, F_dc, decayed-subspace fidelities and BBR survival."""
from src.decoherence.model import (
    BranchingModel,
    DecayParams,
    collective_decoherence_negligible,
    dephasing_branch,
    event_probabilities,
    f_dc,
    f_dc_total,
    no_event_amplitudes,
    p_bbr_zero,
)
from src.decoherence.subspace import f_de, f_lost, time_averaged_fidelity

__all__ = [
    "BranchingModel",
    "DecayParams",
    "collective_decoherence_negligible",
    "dephasing_branch",
    "event_probabilities",
    "f_dc",
    "f_dc_total",
    "f_de",
    "f_lost",
    "no_event_amplitudes",
    "p_bbr_zero",
    "time_averaged_fidelity",
]
