"""
Decayed-Subspace Fidelities
A decay at a random time t in [0, tau_c] leaves the cat in a subspace with one fewer
excitation; the phase accumulated before and after the jump depends on t, so averaging
over t dephases the cat into a ring on the equator.
"""
import logging

import numpy as np
from scipy.integrate import simpson

from src.config import FDE_QUADRATURE_POINTS
from src.dressing.params import DressingParams, kerr_energy
from src.errors import InvalidArgument
from src.spinsim.states import log_binomial

logger = logging.getLogger("ecat.decoherence.subspace")


def quadrature_points(n_atoms: int, minimum: int = FDE_QUADRATURE_POINTS) -> int:
    """Odd node count resolving the ~1/sqrt(N) decay of the overlap."""
    points = max(minimum, int(np.ceil(16 * np.sqrt(n_atoms))))
    return points + 1 - points % 2


def time_averaged_fidelity(
    log_weights: np.ndarray,
    energy_before: np.ndarray,
    energy_after: np.ndarray,
    tau_c: float,
    points: int = FDE_QUADRATURE_POINTS,
) -> float:
    """
    (1/tau_c) int_0^tau_c |<psi(t)|psi(0)>|^2 dt for

        psi_k(t) = sqrt(p_k) exp(-i E_before_k t) exp(-i E_after_k (tau_c - t)),

    with p_k = exp(log_weights_k) normalized. Only E_before - E_after matters.
    """
    if points < 3 or points % 2 == 0:
        raise InvalidArgument("points", f"Simpson quadrature needs an odd count >= 3, got {points}")
    populations = np.exp(log_weights - np.max(log_weights))
    populations /= populations.sum()
    gap = np.asarray(energy_before, dtype=float) - np.asarray(energy_after, dtype=float)
    gap = gap - gap[0]
    t = np.linspace(0.0, tau_c, points)
    amplitudes = np.exp(-1j * np.outer(t, gap)) @ populations
    return float(simpson(np.abs(amplitudes) ** 2, x=t) / tau_c)


def f_de(n_atoms: int, params: DressingParams, points: int | None = None) -> float:
    """
    Fidelity of the cat left in the de-excited subspace |N; N_e - 1>, averaged over the
    de-excitation time. Kerr energies; the t_de = 0 state is the reference.
    """
    if n_atoms < 2:
        raise InvalidArgument("n_atoms", f"must be >= 2, got {n_atoms}")
    n_e = np.arange(1, n_atoms + 1)
    log_weights = log_binomial(n_atoms)[1:] + np.log(n_e)
    value = time_averaged_fidelity(
        log_weights,
        kerr_energy(n_e, params),
        kerr_energy(n_e - 1, params),
        params.tau_c,
        points or quadrature_points(n_atoms),
    )
    logger.debug(f"F_de(N={n_atoms}) = {value:.5f}")
    return value


def f_lost(n_atoms: int, params: DressingParams, points: int | None = None) -> float:
    """
    Same construction in one of the N lost-qubit subspaces: weights sqrt(N_e/N) sqrt(C(N, N_e))
    on the (N-1)-atom Dicke state |N-1; N_e-1>, which keeps N_e - 1 excitations after the loss.

    The weights differ from those of f_de only by the constant 1/N and the Kerr energies
    depend on the excitation count alone, so f_lost(N) equals f_de(N).
    """
    if n_atoms < 2:
        raise InvalidArgument("n_atoms", f"must be >= 2, got {n_atoms}")
    remaining = np.arange(n_atoms)              # excitations left among N - 1 atoms
    n_e = remaining + 1
    log_weights = log_binomial(n_atoms)[n_e] + np.log(n_e / n_atoms)
    value = time_averaged_fidelity(
        log_weights,
        kerr_energy(n_e, params),
        kerr_energy(remaining, params),
        params.tau_c,
        points or quadrature_points(n_atoms),
    )
    logger.debug(f"F_l(N={n_atoms}) = {value:.5f}")
    return value
