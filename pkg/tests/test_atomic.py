import itertools

import numpy as np
import pytest

from src.atomic import (
    CONSTANTS,
    TransitionRecord,
    angular_factor,
    bbr_rate,
    channel_table,
    einstein_a,
    hydrogenic_level,
    lifetime,
    measured_lifetime,
    radial_matrix_element,
    radial_wavefunction,
    rydberg_level,
    transition,
    wigner6j,
)
from src.atomic.levels import RydbergLevel
from src.config import ANCHOR_DELTA, ANCHOR_N_ATOMS, ANCHOR_OMEGA_R, ANCHOR_TAU_C
from src.errors import InvalidArgument

HYDROGEN_1S_2P = 128 * np.sqrt(6) / 243


def _hydrogen_2p_1s_rate() -> float:
    omega = 0.75 * 2 * np.pi * CONSTANTS.c * CONSTANTS.rydberg_infinity
    dipole = HYDROGEN_1S_2P * CONSTANTS.bohr_radius
    return CONSTANTS.e ** 2 * omega ** 3 * dipole ** 2 / (9 * np.pi * CONSTANTS.epsilon_0 * CONSTANTS.hbar * CONSTANTS.c ** 3)


def test_6j_triangle_violation_is_zero():
    assert wigner6j(1, 1, 3, 1, 1, 1) == 0.0


@pytest.mark.parametrize(("j1", "j2", "j3"), [(1, 1, 1), (0.5, 1, 0.5), (2, 1.5, 2.5), (3, 2, 1)])
def test_6j_zero_argument_identity(j1, j2, j3):
    expected = (-1) ** round(j1 + j2 + j3) / np.sqrt((2 * j2 + 1) * (2 * j3 + 1))
    assert wigner6j(j1, j2, j3, 0, j3, j2) == pytest.approx(expected, abs=1e-12)


def test_6j_known_values():
    assert wigner6j(1, 1, 1, 0, 1, 1) == pytest.approx(-1 / 3, abs=1e-12)
    assert wigner6j(1, 1, 1, 1, 1, 1) == pytest.approx(1 / 6, abs=1e-12)


def test_6j_column_and_row_symmetries():
    args = (2, 1.5, 2.5, 1, 1.5, 1.5)
    value = wigner6j(*args)
    assert value != 0.0
    upper, lower = args[:3], args[3:]
    for perm in itertools.permutations(range(3)):
        assert wigner6j(*[upper[p] for p in perm], *[lower[p] for p in perm]) == pytest.approx(value, abs=1e-12)
    # swap upper and lower in two columns
    assert wigner6j(lower[0], lower[1], upper[2], upper[0], upper[1], lower[2]) == pytest.approx(value, abs=1e-12)


@pytest.mark.parametrize(("e", "e_prime"), [(1, 1), (0, 1), (2, 2), (1, 2)])
def test_6j_orthogonality(e, e_prime):
    total = sum(
        (2 * x + 1) * (2 * e + 1) * wigner6j(1, 1, x, 1, 1, e) * wigner6j(1, 1, x, 1, 1, e_prime)
        for x in range(3)
    )
    assert total == pytest.approx(1.0 if e == e_prime else 0.0, abs=1e-12)


def test_6j_rejects_non_half_integers():
    with pytest.raises(InvalidArgument) as err:
        wigner6j(0.3, 1, 1, 1, 1, 1)
    assert err.value.field == "j1"


def test_hydrogen_ground_state_matches_closed_form():
    wf = radial_wavefunction(1.0, 0)
    r = wf.r
    mask = (r > 0.1) & (r < 10)
    radial = wf.y[mask] / np.sqrt(r[mask])
    np.testing.assert_allclose(radial, 2 * np.exp(-r[mask]), atol=1e-4)


@pytest.mark.parametrize(("n", "l"), [(1, 0), (3, 0), (4, 1), (6, 2), (12, 0)])
def test_hydrogenic_node_count(n, l):
    assert radial_wavefunction(float(n), l).node_count() == n - l - 1


def test_expectation_r_of_high_state():
    assert radial_wavefunction(50.0, 0).expectation_r() == pytest.approx(1.5 * 50 ** 2, rel=0.01)


def test_radial_wavefunction_rejects_unbound_orbital():
    with pytest.raises(InvalidArgument):
        radial_wavefunction(1.2, 1)


def test_hydrogen_radial_element():
    value = radial_matrix_element(hydrogenic_level(1, 0), hydrogenic_level(2, 1))
    assert abs(value) == pytest.approx(HYDROGEN_1S_2P, rel=5e-3)


def test_radial_element_is_symmetric():
    s = rydberg_level("3S1", 40)
    p = rydberg_level("3P1", 39)
    assert radial_matrix_element(s, p) == pytest.approx(radial_matrix_element(p, s), rel=1e-12)


def test_diagonal_element_is_expectation_r():
    level = rydberg_level("3S1", 30)
    expected = radial_wavefunction(level.n_star, level.l).expectation_r()
    assert radial_matrix_element(level, level, check_l=False) == pytest.approx(expected, rel=1e-12)


def test_radial_element_rejects_delta_l_two():
    with pytest.raises(InvalidArgument):
        radial_matrix_element(rydberg_level("3S1", 40), rydberg_level("3D1", 40))


def test_near_diagonal_element_grows_as_n_star_squared():
    ns = np.array([40, 55, 70, 85, 100])
    values, n_stars = [], []
    for n in ns:
        s = rydberg_level("3S1", int(n))
        values.append(abs(radial_matrix_element(s, rydberg_level("3P1", int(n) - 1))))
        n_stars.append(s.n_star)
    slope = np.polyfit(np.log(n_stars), np.log(values), 1)[0]
    assert slope == pytest.approx(2.0, abs=0.3)


def test_step_halving_changes_element_little():
    s = rydberg_level("3S1", 80)
    p = rydberg_level("3P1", 79)
    coarse = radial_matrix_element(s, p, step=0.005)
    fine = radial_matrix_element(s, p, step=0.0025)
    assert fine == pytest.approx(coarse, rel=1e-3)


def test_hydrogen_angular_factor_is_one_third():
    assert angular_factor(hydrogenic_level(2, 1), hydrogenic_level(1, 0)) == pytest.approx(1 / 3)


@pytest.mark.parametrize("j", [0, 1, 2])
def test_triplet_s_to_p_angular_factors(j):
    s = rydberg_level("3S1", 60)
    p = rydberg_level(f"3P{j}", 59)
    assert angular_factor(s, p) == pytest.approx((2 * j + 1) / 9, abs=1e-12)


def test_spin_changing_channel_has_no_weight():
    singlet = hydrogenic_level(30, 1)
    assert angular_factor(rydberg_level("3S1", 40), singlet) == 0.0


def test_hydrogen_2p_lifetime_rate():
    record = transition(hydrogenic_level(2, 1), hydrogenic_level(1, 0))
    assert record.a_coeff == pytest.approx(_hydrogen_2p_1s_rate(), rel=0.01)
    assert record.a_coeff == pytest.approx(6.27e8, rel=0.01)


def test_einstein_a_scalings():
    base = einstein_a(1e15, 2.0, 0.3)
    assert einstein_a(1e15, 4.0, 0.3) == pytest.approx(4 * base)
    assert einstein_a(0.0, 2.0, 0.3) == 0.0
    assert einstein_a(1e12, 2.0, 0.3) < 1e-8 * base


def test_einstein_a_rejects_upward_transition():
    with pytest.raises(InvalidArgument):
        einstein_a(-1e14, 1.0, 1.0)


def test_upward_channel_has_no_spontaneous_rate():
    record = transition(hydrogenic_level(1, 0), hydrogenic_level(2, 1))
    assert not record.downward
    assert record.a_coeff == 0.0
    assert record.dipole_rate > 0


def _toy_record(omega: float, rate: float) -> TransitionRecord:
    return TransitionRecord(
        initial=hydrogenic_level(3, 1), final=hydrogenic_level(2, 0), omega=omega,
        radial_me=1.0, angular_factor=1.0, dipole_rate=rate,
    )


def test_single_channel_lifetime():
    tau, fractions = lifetime(hydrogenic_level(3, 1), channels=[_toy_record(1e15, 2.5e6)])
    assert tau == pytest.approx(1 / 2.5e6)
    assert fractions == {"2 l=0": pytest.approx(1.0)}


def test_lifetime_needs_a_downward_channel():
    with pytest.raises(InvalidArgument):
        lifetime(hydrogenic_level(3, 1), channels=[])


def test_bose_factor_of_one():
    temperature = 300.0
    omega = CONSTANTS.k_b * temperature * np.log(2) / CONSTANTS.hbar
    record = _toy_record(omega, 1e3)
    assert record.b_coeff(temperature) == pytest.approx(record.a_coeff)


def test_bbr_rate_vanishes_at_zero_temperature():
    assert _toy_record(1e13, 1e3).b_coeff(0.0) == 0.0
    total, _ = bbr_rate(hydrogenic_level(3, 1), 0.0, channels=[_toy_record(1e13, 1e3)])
    assert total == 0.0


def test_bbr_rate_rejects_negative_temperature():
    with pytest.raises(InvalidArgument):
        bbr_rate(hydrogenic_level(3, 1), -1.0, channels=[])


def test_rydberg_level_energy_ordering():
    energies = [rydberg_level("3S1", n).energy for n in (20, 40, 60, 80)]
    assert all(a < b < 0 for a, b in zip(energies, energies[1:]))


def test_measured_term_overrides_ritz_extrapolation():
    level = rydberg_level("3P1", 5)
    assert 1.5 < level.n_star < 2.5
    assert level.energy < rydberg_level("3P1", 7).energy


def test_rydberg_level_rejects_unknown_series():
    with pytest.raises(InvalidArgument):
        rydberg_level("1S0", 40)


def test_rydberg_level_rejects_low_n_without_term():
    with pytest.raises(InvalidArgument):
        rydberg_level("3S1", 8)


def test_level_validates_triangle_rule():
    with pytest.raises(InvalidArgument) as err:
        RydbergLevel(n=40, l=0, s_total=1, l_total=0, j_total=2, defect=3.3, energy=-1.0)
    assert err.value.field == "j_total"


def test_measured_low_lying_lifetime():
    assert measured_lifetime("3P1", 5) == pytest.approx(23e-6)
    assert measured_lifetime("3P2", 5) is None


def test_channel_table_covers_triplet_p_series():
    level = rydberg_level("3S1", 30)
    channels = channel_table(level)
    finals = {(c.final.series, c.final.n) for c in channels}
    assert {("3P0", 5), ("3P1", 5), ("3P2", 5), ("3P2", 50)} <= finals
    assert all(c.final.l == 1 for c in channels)
    assert any(not c.downward for c in channels)


def test_lifetime_fractions_and_truncation():
    level = rydberg_level("3S1", 30)
    tau, fractions = lifetime(level, channel_table(level))
    assert tau > 0 and np.isfinite(tau)
    assert sum(fractions.values()) == pytest.approx(1.0)
    assert all(0 <= f <= 1 for f in fractions.values())
    # only levels below contribute, so extending the table upwards leaves tau unchanged
    assert lifetime(level, channel_table(level, n_max=40))[0] == pytest.approx(tau, rel=1e-12)


def test_bbr_rate_increases_with_temperature():
    level = rydberg_level("3S1", 30)
    channels = channel_table(level)
    rates = [bbr_rate(level, t, channels)[0] for t in (3.0, 95.0, 300.0)]
    assert 0 < rates[0] < rates[1] < rates[2]


@pytest.mark.slow
def test_triplet_s_lifetime_exponent():
    ns = [40, 55, 70, 85, 100]
    taus, n_stars = [], []
    for n in ns:
        level = rydberg_level("3S1", n)
        taus.append(lifetime(level)[0])
        n_stars.append(level.n_star)
    slope = np.polyfit(np.log(n_stars), np.log(taus), 1)[0]
    assert slope == pytest.approx(3.0, abs=0.3)


@pytest.mark.slow
def test_lifetime_consistent_with_realization_budget():
    w = ANCHOR_OMEGA_R / ANCHOR_DELTA
    gamma_r = -np.log(0.8) / (0.95 * (ANCHOR_N_ATOMS / 2) * ANCHOR_TAU_C * w ** 2)
    tau, _ = lifetime(rydberg_level("3S1", 80))
    assert 1 / (3 * gamma_r) <= tau <= 3 / gamma_r


@pytest.mark.slow
def test_blackbody_rates_at_n80():
    level = rydberg_level("3S1", 80)
    channels = channel_table(level)
    gamma_s = 1 / lifetime(level, channels)[0]
    hot, room, cold = (bbr_rate(level, t, channels)[0] for t in (300.0, 95.0, 3.0))
    assert hot > room > cold
    assert cold / (gamma_s + cold) <= 0.05
    assert 0.6 <= hot / gamma_s <= 2.4
