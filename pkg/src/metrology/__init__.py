"""Metrology module - Energy-decoherence detection bound and the phonon-leakage check."""
from src.metrology.energy import (
    DetectionPolicy,
    EnergyCatSpec,
    NoiseModel,
    baseline_visibility,
    coherence_decay,
    energy_decoherence_rate,
    min_detectable_sigma,
    ramsey_visibility,
    sigma_bound,
    thermal_noise_linewidth,
    visibility_factors,
)
from src.metrology.motion import (
    MotionParams,
    phonon_leakage,
    phonon_leakage_perturbative,
    phonon_population_average,
)

__all__ = [
    "DetectionPolicy",
    "EnergyCatSpec",
    "MotionParams",
    "NoiseModel",
    "baseline_visibility",
    "coherence_decay",
    "energy_decoherence_rate",
    "min_detectable_sigma",
    "phonon_leakage",
    "phonon_leakage_perturbative",
    "phonon_population_average",
    "ramsey_visibility",
    "sigma_bound",
    "thermal_noise_linewidth",
    "visibility_factors",
]
