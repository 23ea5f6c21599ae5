"""
Realization Report
Collects the experimental-realization checks for one dressing configuration into a
single results dict: timing, adiabatic switching, weak-dressing guard, operating window
and, when a Rydberg level is given, the decay budget.
"""
import logging

import numpy as np

from src.config import (
    ANCHOR_RATIO_RAMP,
    ANCHOR_RETURN_RAMP,
    DEFAULT_PHASE_ERROR_FACTOR,
    DETUNING_RANGE,
    WEAK_DRESSING_LIMIT,
)
from src.decoherence import DecayParams, collective_decoherence_negligible, f_dc, p_bbr_zero
from src.dressing import (
    DressingParams,
    adiabaticity_ratio,
    c6_coefficient,
    ground_return_probability,
    switch_on_ramp,
)
from src.errors import InvalidArgument
from src.kerr.evolution import timing_tolerance
from src.scaling.optimizer import decay_rates

logger = logging.getLogger("ecat.evaluation.realization")


def realization_report(
    omega_r: float,
    delta: float,
    n_atoms: int,
    ramp_duration: float,
    n: int | None = None,
    temperature: float = 3.0,
    data_dir=None,
    rates: tuple[float, float] | None = None,
) -> dict:
    """
    Run every realization check for one configuration.

    Args:
        omega_r: dressing Rabi frequency (rad/s)
        delta: detuning (rad/s)
        n_atoms: cat size
        ramp_duration: switch-on (and switch-off) time of the dressing ramp (s)
        n: principal quantum number of the dressing level; enables the decay section
        temperature: environment temperature for the blackbody rate (K)
        data_dir: Optional override of the data directory
        rates: (gamma_s, gamma_bbr) override in 1/s

    Returns:
        Dict with "dressing", "timing", "switching", "checks" and, with n, "decay"
    """
    if n_atoms < 1:
        raise InvalidArgument("n_atoms", f"must be >= 1, got {n_atoms}")
    c6 = c6_coefficient(n, data_dir) if n is not None else None
    params = DressingParams(omega_r=omega_r, delta=delta, n=n, c6=c6, n_atoms=n_atoms)

    report = {
        "n_atoms": n_atoms,
        "dressing": params.to_dict(),
        "timing": {},
        "switching": {},
        "checks": {},
    }

    # 1. Creation time and the precision needed to hold the cat's azimuth
    phase_error = 1.0 / (DEFAULT_PHASE_ERROR_FACTOR * np.sqrt(n_atoms))
    report["timing"] = {
        "tau_c": params.tau_c,
        "delta_tau_c": timing_tolerance(n_atoms, params, phase_error),
        "delta_phi": phase_error,
    }

    # 2. Adiabatic switching of the dressing laser, both checks at N_e = N
    ratio_ramp = switch_on_ramp(omega_r, delta, ramp_duration, shape=ANCHOR_RATIO_RAMP)
    return_ramp = switch_on_ramp(omega_r, delta, ramp_duration, shape=ANCHOR_RETURN_RAMP)
    report["switching"] = {
        "ramp_duration": ramp_duration,
        "ratio_ramp": ANCHOR_RATIO_RAMP,
        "return_ramp": ANCHOR_RETURN_RAMP,
        "hold": params.tau_c,
        "adiabaticity_ratio": adiabaticity_ratio(ratio_ramp, n_atoms),
        "ground_return": ground_return_probability(return_ramp, n_atoms, hold=params.tau_c),
    }

    # 3. Operating-window checks
    guard = float(np.sqrt(n_atoms) * params.w)
    lo, hi = DETUNING_RANGE
    report["checks"] = {
        "weak_dressing_value": guard,
        "weak_dressing_ok": bool(guard <= WEAK_DRESSING_LIMIT),
        "detuning_in_range": bool(lo <= abs(delta) <= hi),
        "rabi_in_range": bool(lo <= omega_r <= hi),
    }

    # 4. Decay budget at the dressing level
    if n is not None:
        gamma_s, gamma_bbr = rates if rates is not None else decay_rates(n, temperature, data_dir)
        decay = DecayParams.from_dressing(gamma_s + gamma_bbr, params, n_atoms)
        survival = p_bbr_zero(n_atoms, params.w, gamma_bbr, params.tau_c)
        report["decay"] = {
            "temperature": temperature,
            "gamma_s": gamma_s,
            "gamma_bbr": gamma_bbr,
            "f_dc": f_dc(decay),
            "p_bbr_zero": survival,
            "collective_decoherence_negligible": collective_decoherence_negligible(survival),
        }

    logger.info(
        f"Realization: tau_c={params.tau_c * 1e3:.3f} ms, "
        f"delta_tau_c={report['timing']['delta_tau_c'] * 1e9:.2f} ns, "
        f"sqrt(N)w={guard:.3f}"
    )
    return report
