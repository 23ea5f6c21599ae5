import logging

import numpy as np
import pytest

from src.config import (
    ANCHOR_DELTA,
    ANCHOR_OMEGA_R,
    ANCHOR_RAMP_DURATION,
    ANCHOR_RETURN_RAMP,
    ANCHOR_TAU_C,
    BLOCKADE_ANCHOR_RADIUS,
)
from src.dressing import (
    DressingParams,
    adiabaticity_ratio,
    blockade_radius,
    c6_coefficient,
    c6_for_blockade,
    constant_profile,
    detuning_for_blockade,
    dressed_energies,
    dressed_ground_population,
    ground_return_probability,
    kerr_energy,
    kerr_hamiltonian_phase,
    light_shift_series,
    switch_on_ramp,
)
from src.dressing.ramps import RampProfile
from src.errors import InvalidArgument


def test_uncoupled_energies():
    assert dressed_energies(0, 3.0, 2.0) == pytest.approx((0.0, 2.0))


def test_single_excitation_closed_form():
    delta = 5.0
    e_minus, _ = dressed_energies(1, delta, delta)
    assert e_minus == pytest.approx(delta * (1 - np.sqrt(2)) / 2)


@pytest.mark.parametrize("n_e", [1, 4, 100, 1000])
def test_energy_product_identity(n_e):
    omega_r, delta = 0.7, 2.3
    e_minus, e_plus = dressed_energies(n_e, omega_r, delta)
    assert e_minus * e_plus == pytest.approx(-n_e * omega_r ** 2 / 4, rel=1e-12)
    assert e_minus <= 0 <= e_plus


def test_resonant_dressing_rejected():
    with pytest.raises(InvalidArgument) as err:
        dressed_energies(3, 1.0, 0.0)
    assert err.value.field == "delta"


def test_quartic_expansion_in_weak_limit():
    params = DressingParams.from_w(0.01 / np.sqrt(4), delta=1.0)
    e_minus, _ = dressed_energies(4, params.omega_r, params.delta)
    assert light_shift_series(4, params, order=4) == pytest.approx(e_minus, rel=1e-6)


def test_series_truncation_error_is_cubic():
    params = DressingParams.from_w(0.02, delta=1.0)
    n_e = np.arange(1, 226)
    y = n_e * params.w ** 2
    assert np.all(np.sqrt(n_e) * params.w <= 0.3 + 1e-12)
    e_minus, _ = dressed_energies(n_e, params.omega_r, params.delta)
    error = np.abs(e_minus - light_shift_series(n_e, params, order=2))
    assert np.all(error <= 3 * params.delta * y ** 3)


def test_series_rejects_unknown_order():
    with pytest.raises(InvalidArgument):
        light_shift_series(1, DressingParams.from_w(0.01, 1.0), order=7)


def test_kerr_phase_parity_pattern():
    params = DressingParams.from_w(0.05, delta=2 * np.pi * 100e6)
    n_e = np.arange(12)
    phase = kerr_hamiltonian_phase(n_e, params, params.tau_c)
    # remove the linear term -N_e pi / (2 w^2)
    factor = np.exp(-1j * (phase + n_e * np.pi / (2 * params.w ** 2)))
    np.testing.assert_allclose(factor[::2], 1.0, atol=1e-9)
    np.testing.assert_allclose(factor[1::2], -1j, atol=1e-9)


def test_kerr_phase_vanishes_without_excitations():
    assert kerr_hamiltonian_phase(0, DressingParams.from_w(0.05, 1.0), 1.0) == 0.0


def test_kerr_energy_close_to_exact_light_shift():
    params = DressingParams.from_w(0.05, delta=2 * np.pi * 100e6)
    exact, _ = dressed_energies(2, params.omega_r, params.delta)
    assert abs(kerr_energy(2, params) - exact) <= params.w ** 2 * abs(exact)


def test_params_derived_quantities(anchor_params):
    assert anchor_params.w == pytest.approx(15 / 540)
    assert anchor_params.tau_c * anchor_params.chi0 == pytest.approx(np.pi, rel=1e-12)


def test_creation_time_anchor(anchor_params):
    assert anchor_params.tau_c == pytest.approx(1.4e-3, rel=0.15)


def test_params_store_absolute_detuning():
    assert DressingParams(omega_r=1.0, delta=-4.0).delta == 4.0


def test_params_reject_bad_rabi_frequency():
    with pytest.raises(InvalidArgument):
        DressingParams(omega_r=-1.0, delta=1.0)


def test_weak_dressing_guard_warns(caplog):
    params = DressingParams.from_w(0.05, 1.0)
    with caplog.at_level(logging.WARNING, logger="ecat.dressing.params"):
        assert params.weak_dressing_check(16)
        assert not params.weak_dressing_check(100)
    assert "Weak-dressing guard" in caplog.text


def test_blockade_anchor():
    c6 = c6_for_blockade(BLOCKADE_ANCHOR_RADIUS, ANCHOR_DELTA)
    assert blockade_radius(c6, ANCHOR_DELTA) == pytest.approx(BLOCKADE_ANCHOR_RADIUS, rel=1e-12)
    assert detuning_for_blockade(c6, BLOCKADE_ANCHOR_RADIUS) == pytest.approx(ANCHOR_DELTA)


def test_blockade_sixth_root_scaling():
    c6, delta = 3.0e-40, 2.0e9
    base = blockade_radius(c6, delta)
    assert blockade_radius(64 * c6, delta) == pytest.approx(2 * base)
    assert blockade_radius(c6, 64 * delta) == pytest.approx(base / 2)


@pytest.mark.parametrize(("c6", "delta"), [(0.0, 1.0), (1.0, 0.0)])
def test_blockade_rejects_zero_inputs(c6, delta):
    with pytest.raises(InvalidArgument):
        blockade_radius(c6, delta)


def test_tabulated_c6_reproduces_blockade_anchor(data_dir):
    c6 = c6_coefficient(80, data_dir)
    assert blockade_radius(c6, ANCHOR_DELTA) == pytest.approx(BLOCKADE_ANCHOR_RADIUS, rel=1e-4)


def test_c6_follows_n11_scaling(data_dir):
    ratio = c6_coefficient(90, data_dir) / c6_coefficient(80, data_dir)
    assert ratio == pytest.approx((90 / 80) ** 11)


def test_c6_missing_table_raises(tmp_path):
    with pytest.raises(FileNotFoundError):
        c6_coefficient(80, tmp_path)


def test_params_report_blockade_radius(data_dir):
    params = DressingParams(ANCHOR_OMEGA_R, ANCHOR_DELTA, n=80, c6=c6_coefficient(80, data_dir))
    assert params.to_dict()["r_b"] == pytest.approx(BLOCKADE_ANCHOR_RADIUS, rel=1e-4)


def test_constant_profile_is_adiabatic():
    ramp = constant_profile(1.0, 2.0, duration=5.0)
    assert adiabaticity_ratio(ramp, 10) == 0.0


def test_anchor_ramp_adiabaticity(anchor_n_atoms):
    ramp = switch_on_ramp(ANCHOR_OMEGA_R, ANCHOR_DELTA, ANCHOR_RAMP_DURATION)
    assert adiabaticity_ratio(ramp, anchor_n_atoms) == pytest.approx(0.010, abs=0.002)


def test_adiabaticity_scales_with_inverse_duration(anchor_n_atoms):
    slow = switch_on_ramp(ANCHOR_OMEGA_R, ANCHOR_DELTA, ANCHOR_RAMP_DURATION)
    fast = switch_on_ramp(ANCHOR_OMEGA_R, ANCHOR_DELTA, ANCHOR_RAMP_DURATION / 10)
    ratio = adiabaticity_ratio(fast, anchor_n_atoms) / adiabaticity_ratio(slow, anchor_n_atoms)
    assert ratio == pytest.approx(10.0, rel=1e-6)


def test_anchor_cycle_returns_to_ground(anchor_n_atoms):
    ramp = switch_on_ramp(ANCHOR_OMEGA_R, ANCHOR_DELTA, ANCHOR_RAMP_DURATION, shape=ANCHOR_RETURN_RAMP)
    assert ground_return_probability(ramp, anchor_n_atoms) >= 0.9999
    assert ground_return_probability(ramp, anchor_n_atoms, hold=ANCHOR_TAU_C) >= 0.9999


def test_linear_anchor_ramp_loses_more_than_cosine(anchor_n_atoms):
    linear = switch_on_ramp(ANCHOR_OMEGA_R, ANCHOR_DELTA, ANCHOR_RAMP_DURATION, shape="linear")
    cosine = switch_on_ramp(ANCHOR_OMEGA_R, ANCHOR_DELTA, ANCHOR_RAMP_DURATION, shape="cosine")
    assert dressed_ground_population(linear, anchor_n_atoms) < dressed_ground_population(cosine, anchor_n_atoms)


def test_sudden_quench_projects_onto_dressed_ground():
    n_e, omega, delta = 8, 1.0, 1.0
    ramp = switch_on_ramp(omega, delta, duration=1e-7)
    theta = np.arctan(np.sqrt(n_e) * omega / delta)
    assert dressed_ground_population(ramp, n_e) == pytest.approx(np.cos(theta / 2) ** 2, abs=1e-5)


def test_sudden_cycle_is_a_rabi_oscillation():
    n_e, omega, delta, hold = 8, 1.0, 1.0, 1.0
    ramp = switch_on_ramp(omega, delta, duration=1e-7)
    assert ground_return_probability(ramp, n_e) == pytest.approx(1.0, abs=1e-5)
    # generalized Rabi frequency sqrt(delta^2 + N_e omega^2) = 3, mixing sin^2(theta) = 8/9
    expected = 1 - 8 / 9 * np.sin(3 * hold / 2) ** 2
    assert ground_return_probability(ramp, n_e, hold=hold) == pytest.approx(expected, abs=1e-5)


def test_dressed_ground_population_improves_with_ramp_time():
    values = [
        dressed_ground_population(switch_on_ramp(1.0, 1.0, duration), 8)
        for duration in (100.0, 200.0, 400.0)
    ]
    assert values[0] < values[1] < values[2] < 1.0


def test_perturbative_population_estimate():
    ramp = switch_on_ramp(1.0, 1.0, duration=100.0)
    ratio = adiabaticity_ratio(ramp, 8)
    assert ratio < 0.03
    lost = 1 - dressed_ground_population(ramp, 8)
    assert ratio ** 2 / 3 < lost < 3 * ratio ** 2


def test_cycle_without_coupling_returns_everything():
    ramp = switch_on_ramp(1.0, 1.0, duration=50.0)
    assert ground_return_probability(ramp, 0, hold=10.0) == 1.0


def test_slow_cycle_returns_to_ground():
    ramp = switch_on_ramp(1.0, 1.0, duration=400.0, shape="cosine")
    assert ground_return_probability(ramp, 4, hold=30.0) > 0.9999


def test_cycle_rejects_negative_hold():
    with pytest.raises(InvalidArgument):
        ground_return_probability(switch_on_ramp(1.0, 1.0, duration=50.0), 4, hold=-1.0)


def test_ramp_validation():
    with pytest.raises(InvalidArgument):
        switch_on_ramp(1.0, 1.0, duration=0.0)
    with pytest.raises(InvalidArgument):
        switch_on_ramp(1.0, 1.0, duration=1.0, points=10)
    with pytest.raises(InvalidArgument):
        switch_on_ramp(1.0, 1.0, duration=1.0, shape="gaussian")
    with pytest.raises(InvalidArgument):
        RampProfile(1.0, lambda t: np.ones_like(t), lambda t: np.ones_like(t))
