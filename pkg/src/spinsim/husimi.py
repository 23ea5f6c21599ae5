"""
Husimi Q Function
Q(theta, phi) = (N+1)/(4 pi) |<theta, phi|psi>|^2 on points or grids of the Bloch sphere.
"""
import numpy as np

from src.spinsim.states import CollectiveState, css_amplitudes


def husimi_q(state: CollectiveState, theta: float, phi: float) -> float:
    """Husimi Q at a single point."""
    n = state.n_atoms
    coherent = css_amplitudes(n, float(theta), float(phi))
    value = (n + 1) / (4 * np.pi) * abs(np.vdot(coherent, state.amplitudes)) ** 2
    return float(value)


def husimi_grid(
    state: CollectiveState,
    thetas: np.ndarray,
    phis: np.ndarray,
) -> np.ndarray:
    """
    Husimi Q on the outer product of theta and phi samples.

    Returns:
        Array of shape (len(thetas), len(phis)).
    """
    n = state.n_atoms
    k = np.arange(n + 1)
    thetas = np.asarray(thetas, dtype=float)
    phis = np.asarray(phis, dtype=float)
    # |c_k(theta)| rows; the e^{-ik phi} factor of the bra becomes e^{+ik phi}
    magnitudes = np.vstack([np.abs(css_amplitudes(n, t, 0.0)) for t in thetas])
    phase = np.exp(1j * np.outer(k, phis))
    amplitude = (magnitudes * state.amplitudes[None, :]) @ phase
    return (n + 1) / (4 * np.pi) * np.abs(amplitude) ** 2


def sphere_quadrature(n_theta: int, n_phi: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes in cos(theta) times a uniform phi grid; returns (thetas, phis, weights)."""
    x, w = np.polynomial.legendre.leggauss(n_theta)
    thetas = np.arccos(x[::-1])
    phis = 2 * np.pi * np.arange(n_phi) / n_phi
    weights = np.outer(w[::-1], np.full(n_phi, 2 * np.pi / n_phi))
    return thetas, phis, weights


def sphere_integral(state: CollectiveState, n_theta: int | None = None, n_phi: int | None = None) -> float:
    """Integral of Q over the sphere; 2(N+1) points per axis by default."""
    n_theta = n_theta or 2 * (state.n_atoms + 1)
    n_phi = n_phi or 2 * (state.n_atoms + 1)
    thetas, phis, weights = sphere_quadrature(n_theta, n_phi)
    return float(np.sum(weights * husimi_grid(state, thetas, phis)))
