"""
Kerr Evolution
Diagonal time evolution of collective states under the dressed light shift, either the
exact ground-dressed energy E_- or its truncated Kerr form, plus timing tolerance.
"""
import numpy as np
from scipy.optimize import minimize_scalar

from src.config import DEFAULT_PHASE_ERROR_FACTOR
from src.dressing.params import DressingParams, dressed_energies, kerr_energy
from src.errors import InvalidArgument
from src.spinsim.states import CollectiveState

EVOLUTION_MODELS = ("exact", "kerr")


def spectrum(n_atoms: int, params: DressingParams, model: str = "exact") -> np.ndarray:
    """Energies E(N_e) for N_e = 0..N in rad/s."""
    if model not in EVOLUTION_MODELS:
        raise InvalidArgument("model", f"must be one of {EVOLUTION_MODELS}, got {model!r}")
    n_e = np.arange(n_atoms + 1)
    if model == "kerr":
        return kerr_energy(n_e, params)
    e_minus, _ = dressed_energies(n_e, params.omega_r, params.delta)
    return e_minus


def evolve(state: CollectiveState, params: DressingParams, t: float, model: str = "exact") -> CollectiveState:
    """c_{N_e} -> exp(-i E(N_e) t) c_{N_e}."""
    t = float(t)
    if not np.isfinite(t):
        raise InvalidArgument("t", "evolution time must be finite")
    phases = spectrum(state.n_atoms, params, model) * t
    return CollectiveState(state.n_atoms, np.exp(-1j * phases) * state.amplitudes)


def best_z_rotation(a: CollectiveState, b: CollectiveState) -> tuple[float, float]:
    """
    Maximize |<a| exp(-i phi S_z) |b>|^2 over phi.

    Returns:
        (fidelity, phi)
    """
    if a.n_atoms != b.n_atoms:
        raise InvalidArgument("n_atoms", f"mismatched atom numbers {a.n_atoms} and {b.n_atoms}")
    products = np.conj(a.amplitudes) * b.amplitudes
    k = np.arange(a.n_atoms + 1)
    samples = 8 * (a.n_atoms + 1)
    # sum_k p_k e^{-i phi_j k} on a uniform phi grid
    coarse = np.abs(np.fft.fft(products, samples)) ** 2
    j = int(np.argmax(coarse))
    step = 2 * np.pi / samples

    def negative(phi: float) -> float:
        return -abs(np.sum(products * np.exp(-1j * phi * k))) ** 2

    res = minimize_scalar(
        negative, bounds=(j * step - step, j * step + step), method="bounded",
        options={"xatol": 1e-13},
    )
    best_phi, best = (float(res.x), -float(res.fun)) if -res.fun >= coarse[j] else (j * step, coarse[j])
    return float(min(best, 1.0)), float(np.mod(best_phi, 2 * np.pi))


def timing_tolerance(
    n_atoms: int,
    params: DressingParams,
    target_phase_error: float | None = None,
) -> float:
    """
    Interaction-time precision delta_tau_c = 2 w^2 delta_phi / chi0 needed to keep the
    cat's azimuth within delta_phi (default 1 / (5 sqrt(N))).
    """
    if n_atoms < 1:
        raise InvalidArgument("n_atoms", f"must be >= 1, got {n_atoms}")
    if target_phase_error is None:
        target_phase_error = 1.0 / (DEFAULT_PHASE_ERROR_FACTOR * np.sqrt(n_atoms))
    if target_phase_error <= 0:
        raise InvalidArgument("target_phase_error", "must be positive")
    return 2 * params.w ** 2 * target_phase_error / params.chi0
