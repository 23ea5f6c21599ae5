"""
Numerov Radial Solver
Coulomb-approximation radial wavefunctions for an effective quantum number n* = n - delta,
integrated inward on a logarithmic grid x = ln(r) (atomic units).

With u(r) = r^{1/2} y(x) the radial equation becomes y'' = g(x) y with
g = (l + 1/2)^2 - 2 r + r^2 / n*^2. Grid points sit at x = k * step for integer k, so
wavefunctions built with the same step share a grid.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.integrate import simpson

from src.config import NUMEROV_INNER_CUTOFF_FACTOR, NUMEROV_OUTER_FACTOR, NUMEROV_STEP
from src.errors import InvalidArgument, NumericalFailure

logger = logging.getLogger("ecat.atomic.numerov")

_RESCALE_LIMIT = 1e150
_DIVERGENCE_FRACTION = 0.5


@dataclass(frozen=True)
class RadialWavefunction:
    """y(x) on grid indices k_start .. k_start + len(y) - 1."""
    n_star: float
    l: int
    step: float
    k_start: int
    y: np.ndarray = field(repr=False)

    @property
    def x(self) -> np.ndarray:
        return (self.k_start + np.arange(self.y.size)) * self.step

    @property
    def r(self) -> np.ndarray:
        return np.exp(self.x)

    @property
    def u(self) -> np.ndarray:
        return np.sqrt(self.r) * self.y

    def expectation_r(self) -> float:
        r = self.r
        return float(simpson(self.y ** 2 * r ** 3, dx=self.step))

    def node_count(self, threshold: float = 1e-6) -> int:
        """Sign changes of u where |u| is above threshold * max|u|."""
        u = self.u
        significant = u[np.abs(u) > threshold * np.max(np.abs(u))]
        return int(np.sum(np.signbit(significant[1:]) != np.signbit(significant[:-1])))


def inner_turning_point(n_star: float, l: int) -> float:
    """Inner root of g: r = n*^2 (1 - sqrt(1 - (l + 1/2)^2 / n*^2))."""
    ratio = (l + 0.5) ** 2 / n_star ** 2
    return n_star ** 2 * ratio / (1 + np.sqrt(1 - ratio))


def radial_wavefunction(n_star: float, l: int, step: float = NUMEROV_STEP) -> RadialWavefunction:
    """
    Normalized bound-state wavefunction for effective quantum number n_star and orbital l.

    Raises:
        InvalidArgument: if n_star <= l + 1/2 (no classically allowed region)
        NumericalFailure: if the norm piles up at the inner cutoff
    """
    n_star = float(n_star)
    if l < 0 or n_star <= l + 0.5:
        raise InvalidArgument("n_star", f"need n* > l + 1/2, got n* = {n_star}, l = {l}")
    if step <= 0:
        raise InvalidArgument("step", f"must be positive, got {step}")
    return _solve(round(n_star, 12), int(l), float(step))


@lru_cache(maxsize=4096)
def _solve(n_star: float, l: int, step: float) -> RadialWavefunction:
    r_turn = inner_turning_point(n_star, l)
    r_inner = NUMEROV_INNER_CUTOFF_FACTOR * r_turn
    r_outer = NUMEROV_OUTER_FACTOR * n_star * (n_star + 15)
    k_start = int(np.floor(np.log(r_inner) / step))
    k_stop = int(np.ceil(np.log(r_outer) / step))
    x = np.arange(k_start, k_stop + 1) * step
    r = np.exp(x)
    g = (l + 0.5) ** 2 - 2 * r + r ** 2 / n_star ** 2
    f = 1 - step ** 2 * g / 12

    y = np.zeros_like(r)
    y[-1] = 1e-10
    y[-2] = y[-1] * np.exp(step * np.sqrt(max(g[-1], 0.0)))
    for i in range(r.size - 3, -1, -1):
        y[i] = (2 * y[i + 1] * (1 + 5 * step ** 2 * g[i + 1] / 12) - f[i + 2] * y[i + 2]) / f[i]
        if abs(y[i]) > _RESCALE_LIMIT:
            y[i:] /= _RESCALE_LIMIT
    if not np.all(np.isfinite(y)):
        raise NumericalFailure("atomic", "radial_wavefunction", f"non-finite values for n*={n_star}, l={l}")

    density = y ** 2 * r ** 2
    # u ~ r^(l+1) inside the cutoff
    inner_tail = y[0] ** 2 * r[0] ** 2 / (2 * l + 3)
    norm = float(simpson(density, dx=step)) + inner_tail
    core = float(simpson(density[r <= r_turn], dx=step)) if np.sum(r <= r_turn) > 2 else 0.0
    if core / norm > _DIVERGENCE_FRACTION:
        raise NumericalFailure(
            "atomic", "radial_wavefunction",
            f"norm concentrated at the inner cutoff for n*={n_star}, l={l} ({core / norm:.2f})",
        )
    # starts positive at r_outer, so the outermost lobe is positive
    y = y / np.sqrt(norm)
    y.setflags(write=False)
    logger.debug(f"Numerov n*={n_star:.4f} l={l}: {r.size} points, r in [{r[0]:.3e}, {r[-1]:.3e}]")
    return RadialWavefunction(n_star=n_star, l=l, step=step, k_start=k_start, y=y)


def radial_overlap(a: RadialWavefunction, b: RadialWavefunction, power: int = 1) -> float:
    """Integral of u_a r^power u_b dr over the common grid."""
    if a.step != b.step:
        raise InvalidArgument("step", "wavefunctions must share the grid step")
    start = max(a.k_start, b.k_start)
    stop = min(a.k_start + a.y.size, b.k_start + b.y.size)
    if stop - start < 3:
        return 0.0
    ya = a.y[start - a.k_start:stop - a.k_start]
    yb = b.y[start - b.k_start:stop - b.k_start]
    r = np.exp(np.arange(start, stop) * a.step)
    return float(simpson(ya * yb * r ** (2 + power), dx=a.step))
