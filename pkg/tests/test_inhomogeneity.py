import itertools

import numpy as np
import pytest

from src.config import ANCHOR_DELTA, ANCHOR_OMEGA_R, BLOCKADE_ANCHOR_RADIUS, LATTICE_SPACING
from src.dressing.params import DressingParams, c6_for_blockade, kerr_energy
from src.errors import InvalidArgument, SizeLimitError
from src.inhomogeneity import (
    InteractionMatrix,
    Lattice,
    build_interactions,
    f_ih_exact,
    f_ih_perturbative,
    homogeneous_energy,
    pair_interaction,
    second_moment,
    third_moment,
)


@pytest.fixture
def blockade_params() -> DressingParams:
    """Anchor dressing with R_b = 3.6 um."""
    return DressingParams(
        ANCHOR_OMEGA_R, ANCHOR_DELTA, n=80, c6=c6_for_blockade(BLOCKADE_ANCHOR_RADIUS, ANCHOR_DELTA)
    )


def _brute_moments(eps: np.ndarray) -> tuple[float, float]:
    n = eps.shape[0]
    values = []
    for bits in itertools.product((0, 1), repeat=n):
        b = np.array(bits, dtype=float)
        values.append(sum(eps[i, j] * b[i] * b[j] for i in range(n) for j in range(i + 1, n)))
    values = np.array(values)
    return float(np.mean(values ** 2)), float(np.mean(values ** 3))


def _random_fluctuations(n: int, seed: int) -> InteractionMatrix:
    rng = np.random.default_rng(seed)
    chi = rng.normal(size=(n, n))
    return InteractionMatrix.from_chi((chi + chi.T) / 2)


@pytest.mark.parametrize(("r", "expected"), [(0.0, 1.0), (1.0, 0.5), (2.0, 1 / 65)])
def test_pair_interaction_values(r, expected):
    assert pair_interaction(r, chi0=1.0, r_b=1.0) == pytest.approx(expected)


def test_pair_interaction_decreases():
    values = pair_interaction(np.linspace(0, 5, 50), chi0=3.0, r_b=1.2)
    assert np.all(np.diff(values) < 0)


def test_pair_interaction_rejects_negative_distance():
    with pytest.raises(InvalidArgument):
        pair_interaction(-1.0, 1.0, 1.0)


def test_cubic_lattice_geometry():
    lattice = Lattice.cubic(3)
    assert lattice.n_atoms == 27
    assert lattice.diagonal == pytest.approx(LATTICE_SPACING * np.sqrt(3) * 2)
    assert np.max(lattice.distances()) == pytest.approx(lattice.diagonal)


def test_lattice_from_diagonal_picks_nearest_side():
    assert Lattice.from_diagonal(0.4 * BLOCKADE_ANCHOR_RADIUS).side == 5
    assert Lattice.from_diagonal(0.0).n_atoms == 1


def test_duplicate_positions_rejected(blockade_params):
    with pytest.raises(InvalidArgument):
        build_interactions(Lattice(np.zeros((2, 3))), blockade_params)


def test_two_atoms_at_blockade_radius(blockade_params):
    lattice = Lattice(np.array([[0, 0, 0], [0, 0, blockade_params.r_b]]))
    m = build_interactions(lattice, blockade_params)
    assert m.chi[0, 1] == pytest.approx(blockade_params.chi0 / 2)
    assert m.chi_m == pytest.approx(blockade_params.chi0 / 2)
    assert m.max_fluctuation() == pytest.approx(0.0, abs=1e-12 * blockade_params.chi0)


def test_cube_fluctuations_match_hand_values(blockade_params):
    m = build_interactions(Lattice.cubic(2), blockade_params)
    chi0, r_b, a = blockade_params.chi0, blockade_params.r_b, LATTICE_SPACING
    edge, face, body = (chi0 / (1 + (d / r_b) ** 6) for d in (a, a * np.sqrt(2), a * np.sqrt(3)))
    mean = (12 * edge + 12 * face + 4 * body) / 28
    assert m.chi_m == pytest.approx(mean, rel=1e-12)
    # atom 0 at the origin, 1 along z, 3 on a face diagonal, 7 on the body diagonal
    assert m.eps[0, 1] == pytest.approx(edge - mean, abs=1e-9 * chi0)
    assert m.eps[0, 3] == pytest.approx(face - mean, abs=1e-9 * chi0)
    assert m.eps[0, 7] == pytest.approx(body - mean, abs=1e-9 * chi0)


def test_fluctuations_sum_to_zero(blockade_params):
    m = build_interactions(Lattice.cubic(4), blockade_params)
    assert abs(np.sum(m.pair_fluctuations())) <= 1e-10 * m.chi_m * len(m.pair_fluctuations())
    np.testing.assert_array_equal(m.chi, m.chi.T)


def test_plateau_fluctuations_are_small(blockade_params):
    m = build_interactions(Lattice.cubic(3), blockade_params)
    assert m.max_fluctuation() / m.chi_m < 1e-4


def test_homogeneous_part_is_kerr_hamiltonian_plus_rotation():
    params = DressingParams.from_w(0.05, 1.0)
    n_e = np.arange(30)
    difference = homogeneous_energy(n_e, params.chi0, params) - kerr_energy(n_e, params)
    np.testing.assert_allclose(difference, -params.chi0 * n_e / 2, atol=1e-12)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_moments_match_bitstring_average(seed):
    m = _random_fluctuations(6, seed)
    m2, m3 = _brute_moments(m.eps)
    assert second_moment(m.eps) == pytest.approx(m2, rel=1e-10)
    assert third_moment(m.eps) == pytest.approx(m3, rel=1e-9, abs=1e-12)


def test_no_fluctuations_give_unit_fidelity():
    m = InteractionMatrix.from_chi(np.full((5, 5), 2.0))
    result = f_ih_perturbative(m, tau_c=1.0)
    assert result.fidelity == 1.0
    assert result.order_ratio == 0.0
    assert f_ih_exact(m, tau_c=1.0) == pytest.approx(1.0)


def test_exact_two_atom_value():
    m = InteractionMatrix.from_chi(np.array([[0.0, 0.8], [0.8, 0.0]]))
    # one pair: eps is zero after subtracting the mean, so put the pair on top of a zero mean
    assert f_ih_exact(m, 1.3) == pytest.approx(1.0)
    eps = 0.8
    raw = InteractionMatrix(chi=np.array([[0.0, eps], [eps, 0.0]]), chi_m=0.0, eps=np.array([[0.0, eps], [eps, 0.0]]))
    assert f_ih_exact(raw, 1.3) == pytest.approx(abs((3 + np.exp(-1j * eps * 1.3)) / 4) ** 2)


def test_exact_oracle_independent_of_chunking():
    m = _random_fluctuations(11, 5)
    assert f_ih_exact(m, 0.2, chunk=64) == pytest.approx(f_ih_exact(m, 0.2), abs=1e-13)


def test_exact_oracle_size_cap():
    with pytest.raises(SizeLimitError):
        f_ih_exact(InteractionMatrix.from_chi(np.zeros((21, 21))), 1.0)


def test_perturbative_order_validation():
    with pytest.raises(InvalidArgument):
        f_ih_perturbative(_random_fluctuations(4, 0), 1.0, order=4)


@pytest.mark.parametrize("seed", range(20))
def test_perturbative_matches_exact_on_jittered_lattices(seed, blockade_params):
    rng = np.random.default_rng(100 + seed)
    n = int(rng.integers(4, 15))
    positions = rng.uniform(0, 0.3 * blockade_params.r_b, size=(n, 3))
    m = build_interactions(Lattice(positions), blockade_params)
    tau = 0.02 / m.max_fluctuation()
    assert f_ih_perturbative(m, tau).fidelity == pytest.approx(f_ih_exact(m, tau), abs=1e-3)


def test_fidelity_falls_with_cube_size(blockade_params):
    values = [
        f_ih_perturbative(
            build_interactions(Lattice.from_diagonal(ratio * blockade_params.r_b), blockade_params),
            blockade_params.tau_c,
        ).fidelity
        for ratio in (0.1, 0.2, 0.3, 0.4)
    ]
    assert all(a > b for a, b in zip(values, values[1:]))


@pytest.mark.parametrize(("ratio", "expected"), [(0.1, 1e-6), (0.2, 5e-5), (0.3, 8e-4), (0.4, 8e-3)])
def test_expansion_convergence_ratios(ratio, expected, blockade_params):
    lattice = Lattice.from_diagonal(ratio * blockade_params.r_b)
    result = f_ih_perturbative(build_interactions(lattice, blockade_params), blockade_params.tau_c)
    assert expected / 10 <= result.order_ratio <= expected * 10
