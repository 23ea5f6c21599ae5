"""
Inhomogeneity Fidelity
F_IH = |<eta=1| exp(-i V_IH tau_c) |eta=1>|^2 with V_IH = sum_{i<j} eps_ij n_i n_j,
by a Taylor expansion of the evolution operator and by an exact sum over bitstrings.

In |eta=1> every n_i is an independent fair coin, so <n_i> = 1/2 and
<n_i n_j> = 1/4 + delta_ij / 4.
"""
import logging
from dataclasses import dataclass

import numpy as np

from src.config import EXACT_ORACLE_CHUNK, EXACT_ORACLE_MAX_ATOMS, PERTURBATIVE_WARN_PHASE
from src.errors import InvalidArgument, SizeLimitError
from src.inhomogeneity.lattice import InteractionMatrix

logger = logging.getLogger("ecat.inhomogeneity.fidelity")


@dataclass(frozen=True)
class PerturbativeFidelity:
    fidelity: float
    order_ratio: float          # |third-order term| / |second-order term| of the amplitude
    second_moment: float        # <V_IH^2>, (rad/s)^2
    third_moment: float         # <V_IH^3>, (rad/s)^3

    def to_dict(self) -> dict:
        return {
            "fidelity": self.fidelity,
            "order_ratio": self.order_ratio,
            "second_moment": self.second_moment,
            "third_moment": self.third_moment,
        }


def second_moment(eps: np.ndarray) -> float:
    """
    <V_IH^2> = sum over pairs (ij), (lm) of C_ijlm eps_ij eps_lm with C = 1/4 for the same
    pair, 1/8 for pairs sharing one atom and 1/16 for disjoint pairs.

    The three classes are summed through row sums instead of the quadruple loop.
    """
    eps = np.asarray(eps, dtype=float)
    n = eps.shape[0]
    upper = eps[np.triu_indices(n, k=1)]
    same = float(np.sum(upper ** 2))
    rows = eps.sum(axis=1)
    # ordered (pair, pair) combinations that share exactly one atom
    shared = float(np.sum(rows ** 2) - np.sum(eps ** 2))
    total = float(np.sum(upper)) ** 2
    disjoint = total - same - shared
    return same / 4 + shared / 8 + disjoint / 16


def third_moment(eps: np.ndarray) -> float:
    """
    <V_IH^3>, from n_i = (1 + s_i) / 2 with independent signs s_i:
    V = c + sum_i h_i s_i + sum_{i<j} J_ij s_i s_j, J = eps / 4, h = row sums / 4.
    """
    eps = np.asarray(eps, dtype=float)
    n = eps.shape[0]
    coupling = eps / 4
    field = eps.sum(axis=1) / 4
    offset = float(np.sum(eps[np.triu_indices(n, k=1)])) / 4
    m2 = float(np.sum(field ** 2) + np.sum(np.triu(coupling, k=1) ** 2))
    centred = float(np.trace(coupling @ coupling @ coupling) + 3 * field @ coupling @ field)
    return centred + 3 * offset * m2 + offset ** 3


def f_ih_perturbative(m: InteractionMatrix, tau_c: float, order: int = 3) -> PerturbativeFidelity:
    """
    |1 - tau^2 <V^2> / 2 + i tau^3 <V^3> / 6|^2, truncated at `order`.

    The first-order term vanishes because eps is measured from the pair mean.
    """
    if order not in (2, 3):
        raise InvalidArgument("order", f"must be 2 or 3, got {order}")
    if tau_c <= 0:
        raise InvalidArgument("tau_c", f"must be positive, got {tau_c}")
    phase = m.max_fluctuation() * tau_c
    if phase > PERTURBATIVE_WARN_PHASE:
        logger.warning(f"max|eps| tau_c = {phase:.3f} > {PERTURBATIVE_WARN_PHASE}: expansion may not converge")

    m2 = second_moment(m.eps)
    m3 = third_moment(m.eps)
    second = tau_c ** 2 * m2 / 2
    third = tau_c ** 3 * m3 / 6
    amplitude = complex(1 - second, third if order == 3 else 0.0)
    ratio = abs(third) / second if second > 0 else 0.0
    return PerturbativeFidelity(
        fidelity=float(np.clip(abs(amplitude) ** 2, 0.0, 1.0)),
        order_ratio=float(ratio),
        second_moment=m2,
        third_moment=m3,
    )


def f_ih_exact(m: InteractionMatrix, tau_c: float, chunk: int = EXACT_ORACLE_CHUNK) -> float:
    """
    |2^-N sum_b exp(-i tau_c sum_{i<j} eps_ij b_i b_j)|^2 over all bitstrings b.

    Chunks are reduced in index order, so the result does not depend on `chunk`.
    """
    n = m.n_atoms
    if n > EXACT_ORACLE_MAX_ATOMS:
        raise SizeLimitError("n_atoms", f"exact oracle is limited to N <= {EXACT_ORACLE_MAX_ATOMS}, got {n}")
    upper = np.triu(m.eps, k=1)
    shifts = np.arange(n)
    total = 0.0 + 0.0j
    count = 1 << n
    for start in range(0, count, chunk):
        index = np.arange(start, min(start + chunk, count))
        bits = ((index[:, None] >> shifts) & 1).astype(float)
        energies = np.einsum("bi,ij,bj->b", bits, upper, bits)
        total += np.sum(np.exp(-1j * tau_c * energies))
    return float(np.clip(abs(total / count) ** 2, 0.0, 1.0))
