"""
Lattice Interactions
Atom positions in the trap, the plateau-type pair interaction of dressed atoms and its
split into a mean value chi_m and fluctuations eps_ij.
"""
import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import pdist, squareform

from src.config import LATTICE_SPACING
from src.dressing.params import DressingParams
from src.errors import InvalidArgument

logger = logging.getLogger("ecat.inhomogeneity.lattice")


@dataclass(frozen=True)
class Lattice:
    """
    Atom positions (N x 3, meters).

    Attributes:
        positions: one row per atom
        spacing: lattice constant used to build it (m)
        side: atoms per cube edge for cubic blocks, None otherwise
    """
    positions: np.ndarray = field(repr=False)
    spacing: float = LATTICE_SPACING
    side: int | None = None

    def __post_init__(self):
        positions = np.asarray(self.positions, dtype=float)
        if positions.ndim != 2 or positions.shape[1] != 3 or positions.shape[0] == 0:
            raise InvalidArgument("positions", f"expected a non-empty N x 3 array, got shape {positions.shape}")
        if not np.all(np.isfinite(positions)):
            raise InvalidArgument("positions", "contain non-finite values")
        if positions.shape[0] > 1 and np.min(pdist(positions)) <= 0:
            raise InvalidArgument("positions", "duplicate atom positions")
        positions.setflags(write=False)
        object.__setattr__(self, "positions", positions)

    @classmethod
    def cubic(cls, side: int, spacing: float = LATTICE_SPACING) -> "Lattice":
        """side^3 atoms on a simple cubic grid."""
        if side < 1:
            raise InvalidArgument("side", f"must be >= 1, got {side}")
        if spacing <= 0:
            raise InvalidArgument("spacing", f"must be positive, got {spacing}")
        axis = np.arange(side) * spacing
        grid = np.stack(np.meshgrid(axis, axis, axis, indexing="ij"), axis=-1).reshape(-1, 3)
        return cls(grid, spacing=spacing, side=side)

    @classmethod
    def from_diagonal(cls, diagonal: float, spacing: float = LATTICE_SPACING) -> "Lattice":
        """Cubic block whose space diagonal is closest to `diagonal`."""
        if diagonal < 0:
            raise InvalidArgument("diagonal", f"must be >= 0, got {diagonal}")
        side = int(round(diagonal / (spacing * np.sqrt(3)))) + 1
        return cls.cubic(side, spacing)

    @property
    def n_atoms(self) -> int:
        return int(self.positions.shape[0])

    @property
    def diagonal(self) -> float:
        """Space diagonal D; the largest pair distance for non-cubic arrangements."""
        if self.side is not None:
            return self.spacing * np.sqrt(3) * (self.side - 1)
        return float(np.max(pdist(self.positions))) if self.n_atoms > 1 else 0.0

    def distances(self) -> np.ndarray:
        """Symmetric N x N distance matrix."""
        return squareform(pdist(self.positions))


@dataclass(frozen=True)
class InteractionMatrix:
    """Pair interactions chi_ij (rad/s, zero diagonal), their mean over pairs and fluctuations."""
    chi: np.ndarray = field(repr=False)
    chi_m: float
    eps: np.ndarray = field(repr=False)

    @classmethod
    def from_chi(cls, chi: np.ndarray) -> "InteractionMatrix":
        chi = np.array(chi, dtype=float)
        if chi.ndim != 2 or chi.shape[0] != chi.shape[1]:
            raise InvalidArgument("chi", f"expected a square matrix, got shape {chi.shape}")
        if not np.allclose(chi, chi.T, rtol=1e-12, atol=0):
            raise InvalidArgument("chi", "interaction matrix must be symmetric")
        np.fill_diagonal(chi, 0.0)
        n = chi.shape[0]
        upper = chi[np.triu_indices(n, k=1)]
        chi_m = float(upper.mean()) if upper.size else 0.0
        eps = chi - chi_m
        np.fill_diagonal(eps, 0.0)
        chi.setflags(write=False)
        eps.setflags(write=False)
        return cls(chi=chi, chi_m=chi_m, eps=eps)

    @property
    def n_atoms(self) -> int:
        return int(self.chi.shape[0])

    def pair_fluctuations(self) -> np.ndarray:
        """eps_ij for i < j."""
        return self.eps[np.triu_indices(self.n_atoms, k=1)]

    def max_fluctuation(self) -> float:
        values = self.pair_fluctuations()
        return float(np.max(np.abs(values))) if values.size else 0.0


def pair_interaction(r, chi0: float, r_b: float):
    """chi(r) = chi0 R_b^6 / (r^6 + R_b^6)."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise InvalidArgument("r", "distances must be >= 0")
    if r_b <= 0:
        raise InvalidArgument("r_b", f"must be positive, got {r_b}")
    # (r / R_b)^6 keeps the ratio well scaled
    value = chi0 / (1 + (r / r_b) ** 6)
    return float(value) if value.ndim == 0 else value


def build_interactions(lattice: Lattice, params: DressingParams) -> InteractionMatrix:
    """chi_ij = pair_interaction(|x_i - x_j|) with chi0 and R_b from the dressing."""
    chi = pair_interaction(lattice.distances(), params.chi0, params.r_b)
    chi = np.atleast_2d(chi)
    np.fill_diagonal(chi, 0.0)
    matrix = InteractionMatrix.from_chi(chi)
    logger.debug(
        f"Interactions for N={lattice.n_atoms}: chi_m/chi0 = {matrix.chi_m / params.chi0:.6f}, "
        f"max|eps|/chi0 = {matrix.max_fluctuation() / params.chi0:.3e}"
    )
    return matrix


def homogeneous_energy(n_e, chi_m: float, params: DressingParams):
    """Dicke spectrum of V_H: chi_m (N_e^2 - N_e) / 2 - chi0 N_e / (2 w^2)."""
    n_e = np.asarray(n_e, dtype=float)
    return chi_m * (n_e ** 2 - n_e) / 2 - params.chi0 * n_e / (2 * params.w ** 2)
