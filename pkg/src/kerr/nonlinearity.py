"""
Nonlinearity Fidelity
F_nl: how close the exact light-shift evolution of an equatorial CSS gets to the closest
ideal cat state, the dressing strength w* that reaches a target F_nl, and the revival.

At t = s * pi / chi0 the exact phase E_-(N_e) t splits into a term linear in N_e (a
z-rotation, absorbed by phi) and the residual pi s r(N_e) with
r(k) = 2 k^2 / (1 + sqrt(1 + 4 k w^2))^2, which tends to k^2 / 2 as w -> 0.
F_nl therefore depends on N and w only.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize

from src.config import (
    FNL_ALPHA_POINTS,
    FNL_PHI_POINTS,
    FNL_SIMPLEX_FATOL,
    FNL_SIMPLEX_MAXITER,
    FNL_SIMPLEX_XATOL,
    FNL_TAU_POINTS,
    FNL_TAU_WINDOW,
    FNL_THETA_POINTS,
    W_BISECTION_MAXITER,
    W_BISECTION_TOL,
    W_UPPER_BRACKET,
)
from src.errors import InvalidArgument, NumericalFailure
from src.kerr.evolution import best_z_rotation
from src.spinsim.states import CollectiveState, IdealCatParams, css_amplitudes

logger = logging.getLogger("ecat.kerr.nonlinearity")

W_LOWER_BRACKET = 1e-6


@dataclass(frozen=True)
class FnlResult:
    """Best ideal-cat match of the exact evolution."""
    n_atoms: int
    w: float
    fidelity: float
    theta: float
    phi: float                  # in the frame with the linear light shift removed
    alpha: float
    tau_scale: float            # interaction time in units of pi / chi0
    tau_center: float           # curvature-matched time pi / chi_eff in the same units
    converged: bool
    interior: bool

    @property
    def tau_offset(self) -> float:
        return self.tau_scale - 1.0

    @property
    def cat_params(self) -> IdealCatParams:
        return IdealCatParams(self.theta, self.phi, self.alpha)

    def to_dict(self) -> dict:
        return {
            "n_atoms": self.n_atoms,
            "w": self.w,
            "fidelity": self.fidelity,
            "theta": self.theta,
            "phi": self.phi,
            "alpha": self.alpha,
            "tau_scale": self.tau_scale,
            "tau_center": self.tau_center,
            "converged": self.converged,
            "interior": self.interior,
        }


def _validate(n_atoms: int, w: float) -> None:
    if n_atoms < 2:
        raise InvalidArgument("n_atoms", f"F_nl needs N >= 2, got {n_atoms}")
    if not 0 < w < 0.5:
        raise InvalidArgument("w", f"must lie in (0, 0.5), got {w}")


def residual_phase(n_e, w: float) -> np.ndarray:
    """r(N_e) = 2 N_e^2 / (1 + sqrt(1 + 4 N_e w^2))^2."""
    k = np.asarray(n_e, dtype=float)
    return 2 * k ** 2 / (1 + np.sqrt(1 + 4 * k * w ** 2)) ** 2


def curvature_time(n_atoms: int, w: float) -> float:
    """pi / chi_eff in units of pi / chi0: inverse second difference of r at N/2."""
    center = n_atoms / 2
    r = residual_phase(np.array([center - 1, center, center + 1]), w)
    return float(1.0 / (r[0] - 2 * r[1] + r[2]))


def initial_state(n_atoms: int) -> CollectiveState:
    """Equatorial CSS |eta = 1>."""
    return CollectiveState(n_atoms, css_amplitudes(n_atoms, np.pi / 2, 0.0))


def exact_cat_evolution(n_atoms: int, w: float, tau_scale: float) -> CollectiveState:
    """|eta = 1> after t = tau_scale * pi / chi0 of exact evolution, linear term removed."""
    _validate(n_atoms, w)
    k = np.arange(n_atoms + 1)
    psi = initial_state(n_atoms).amplitudes
    return CollectiveState(n_atoms, psi * np.exp(-1j * np.pi * tau_scale * residual_phase(k, w)))


class _CatMatcher:
    """Component overlaps A = <theta,phi|psi>, B = <pi-theta,phi+pi|psi> for many (theta, phi)."""

    def __init__(self, n_atoms: int, w: float):
        self.n_atoms = n_atoms
        self.k = np.arange(n_atoms + 1)
        self.parity = (-1.0) ** self.k
        self.start = initial_state(n_atoms).amplitudes
        self.r = residual_phase(self.k, w)

    def state(self, tau_scale: float) -> np.ndarray:
        return self.start * np.exp(-1j * np.pi * tau_scale * self.r)

    def _magnitudes(self, thetas: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        first = np.array([np.abs(css_amplitudes(self.n_atoms, t, 0.0)) for t in thetas])
        second = np.array([np.abs(css_amplitudes(self.n_atoms, np.pi - t, 0.0)) for t in thetas])
        return first, second * self.parity

    def overlaps(self, psi: np.ndarray, thetas: np.ndarray, phis: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        first, second = self._magnitudes(np.atleast_1d(thetas))
        phase = np.exp(1j * np.outer(self.k, np.atleast_1d(phis)))
        return (first * psi) @ phase, (second * psi) @ phase

    def fidelity(self, theta: float, phi: float, tau_scale: float) -> tuple[float, float]:
        """Best fidelity over alpha, and that alpha."""
        a, b = self.overlaps(self.state(tau_scale), np.array([theta]), np.array([phi]))
        a, b = complex(a[0, 0]), complex(b[0, 0])
        return (abs(a) + abs(b)) ** 2 / 2, float(np.angle(b) - np.angle(a))


def _grids(n_atoms: int, tau_center: float, theta_points: int, phi_points: int, tau_points: int):
    root = np.sqrt(n_atoms)
    half_width = min(0.49 * np.pi, 4.0 / root)
    thetas = np.linspace(np.pi / 2 - half_width, np.pi / 2 + half_width, theta_points)
    # F(theta, phi) = F(pi - theta, phi + pi): half the azimuth suffices
    n_phi = max(phi_points, int(np.ceil(2 * np.pi * root)))
    phis = np.arange(n_phi) * np.pi / n_phi
    taus = tau_center * np.linspace(1 - FNL_TAU_WINDOW, 1 + FNL_TAU_WINDOW, tau_points)
    return thetas, phis, taus


def f_nl(
    n_atoms: int,
    w: float,
    theta_points: int = FNL_THETA_POINTS,
    phi_points: int = FNL_PHI_POINTS,
    tau_points: int = FNL_TAU_POINTS,
) -> FnlResult:
    """
    Maximize the ideal-cat fidelity over (theta, phi, alpha, tau).

    A seed grid over (theta, phi, tau) with alpha solved analytically is followed by a
    Nelder-Mead polish. A non-converged polish is flagged, not raised.
    """
    _validate(n_atoms, w)
    matcher = _CatMatcher(n_atoms, w)
    tau_center = curvature_time(n_atoms, w)
    thetas, phis, taus = _grids(n_atoms, tau_center, theta_points, phi_points, tau_points)
    tau_lo, tau_hi = taus[0], taus[-1]

    best = (-1.0, 0, 0, 0)
    for j, tau in enumerate(taus):
        a, b = matcher.overlaps(matcher.state(tau), thetas, phis)
        values = (np.abs(a) + np.abs(b)) ** 2 / 2
        i, m = np.unravel_index(int(np.argmax(values)), values.shape)
        if values[i, m] > best[0]:
            best = (float(values[i, m]), i, m, j)
    seed_value, i, m, j = best
    logger.debug(f"F_nl seed N={n_atoms} w={w:.4e}: {seed_value:.6f} at tau={taus[j]:.4f}")

    def negative(x: np.ndarray) -> float:
        theta = float(np.clip(x[0], 0.0, np.pi))
        tau = float(np.clip(x[2], tau_lo, tau_hi))
        return -matcher.fidelity(theta, float(x[1]), tau)[0]

    x0 = np.array([thetas[i], phis[m], taus[j]])
    res = minimize(
        negative,
        x0,
        method="Nelder-Mead",
        options={
            "xatol": FNL_SIMPLEX_XATOL,
            "fatol": FNL_SIMPLEX_FATOL,
            "maxiter": FNL_SIMPLEX_MAXITER,
            "initial_simplex": np.array([
                x0,
                x0 + [thetas[1] - thetas[0], 0, 0],
                x0 + [0, phis[1] - phis[0], 0],
                x0 + [0, 0, (taus[1] - taus[0]) if tau_points > 1 else 1e-3 * tau_center],
            ]),
        },
    )
    theta = float(np.clip(res.x[0], 0.0, np.pi))
    tau = float(np.clip(res.x[2], tau_lo, tau_hi))
    value, alpha = matcher.fidelity(theta, float(res.x[1]), tau)
    if value < seed_value:
        theta, tau = float(thetas[i]), float(taus[j])
        value, alpha = matcher.fidelity(theta, float(phis[m]), tau)
        phi = float(phis[m])
    else:
        phi = float(res.x[1])
    if not res.success:
        logger.warning(f"F_nl polish did not converge for N={n_atoms}, w={w:.4e}: {res.message}")

    edge = 1e-6 * tau_center
    return FnlResult(
        n_atoms=n_atoms,
        w=float(w),
        fidelity=float(min(value, 1.0)),
        theta=theta,
        phi=float(np.mod(phi, 2 * np.pi)),
        alpha=float(np.mod(alpha, 2 * np.pi)),
        tau_scale=tau,
        tau_center=tau_center,
        converged=bool(res.success),
        interior=bool(tau_lo + edge < tau < tau_hi - edge),
    )


def f_nl_exhaustive(
    n_atoms: int,
    w: float,
    theta_points: int = 2 * FNL_THETA_POINTS,
    phi_points: int = 4 * FNL_PHI_POINTS,
    alpha_points: int = FNL_ALPHA_POINTS,
    tau_points: int = FNL_TAU_POINTS,
) -> float:
    """
    Brute-force grid over (theta, phi, alpha, tau) building every ideal cat explicitly.

    A lower bound on f_nl used as a cross-check.
    """
    _validate(n_atoms, w)
    tau_center = curvature_time(n_atoms, w)
    thetas = np.linspace(0.0, np.pi, theta_points)
    phis = np.arange(phi_points) * 2 * np.pi / phi_points
    alphas = np.arange(alpha_points) * 2 * np.pi / alpha_points
    taus = tau_center * np.linspace(1 - FNL_TAU_WINDOW, 1 + FNL_TAU_WINDOW, tau_points)

    states = np.array([exact_cat_evolution(n_atoms, w, tau).amplitudes for tau in taus])
    best = 0.0
    for theta in thetas:
        for phi in phis:
            first = css_amplitudes(n_atoms, theta, phi)
            second = css_amplitudes(n_atoms, np.pi - theta, phi + np.pi)
            cats = first[None, :] + np.exp(1j * alphas)[:, None] * second[None, :]
            cats /= np.linalg.norm(cats, axis=1, keepdims=True)
            values = np.abs(np.conj(cats) @ states.T) ** 2
            best = max(best, float(values.max()))
    return best


def w_for_target_fnl(n_atoms: int, f_target: float, w_upper: float = W_UPPER_BRACKET) -> float:
    """
    Dressing strength w* with f_nl(N, w*) = f_target, by bracketed root finding in log w.

    Raises:
        NumericalFailure: if the target is not crossed inside [1e-6, w_upper]
    """
    if not 0.5 < f_target < 1:
        raise InvalidArgument("f_target", f"must lie in (0.5, 1), got {f_target}")
    if n_atoms < 2:
        raise InvalidArgument("n_atoms", f"F_nl needs N >= 2, got {n_atoms}")

    def gap(log_w: float) -> float:
        return f_nl(n_atoms, float(np.exp(log_w))).fidelity - f_target

    lo, hi = np.log(W_LOWER_BRACKET), np.log(w_upper)
    if gap(hi) > 0:
        raise NumericalFailure(
            "kerr", "w_for_target_fnl",
            f"F_nl stays above {f_target} up to w = {w_upper} for N={n_atoms}",
        )
    if gap(lo) < 0:
        raise NumericalFailure(
            "kerr", "w_for_target_fnl",
            f"F_nl is below {f_target} already at w = {W_LOWER_BRACKET} for N={n_atoms}",
        )
    log_w = brentq(gap, lo, hi, xtol=1e-8, maxiter=W_BISECTION_MAXITER)
    w_star = float(np.exp(log_w))
    miss = abs(gap(log_w))
    if miss >= W_BISECTION_TOL:
        raise NumericalFailure(
            "kerr", "w_for_target_fnl",
            f"root search ended {miss:.2e} away from the target for N={n_atoms}",
        )
    logger.info(f"w*(N={n_atoms}, F_nl={f_target}) = {w_star:.6e}")
    return w_star


def revival_fidelity(n_atoms: int, w: float, tau_scale: float | None = None) -> float:
    """
    Overlap with the initial CSS at twice the cat time, maximized over a z-rotation.

    The cat time defaults to the interaction time found by f_nl.
    """
    _validate(n_atoms, w)
    if tau_scale is None:
        tau_scale = 2 * f_nl(n_atoms, w).tau_scale
    evolved = exact_cat_evolution(n_atoms, w, tau_scale)
    value, _ = best_z_rotation(initial_state(n_atoms), evolved)
    return value
