"""
Subcommands
Each command turns a RunConfig into a DataFrame (tabular figure data) or a dict (reports).
Physical inputs are validated by the constructors of the owning modules.
"""
import logging

import numpy as np
import pandas as pd

from src.atomic import bbr_rate, channel_table, lifetime, rydberg_level
from src.cli.run_config import RunConfig, parse_float_list, parse_int_list
from src.config import (
    ANCHOR_N_ATOMS,
    ANCHOR_PRINCIPAL_N,
    ANCHOR_RAMP_DURATION,
    DEFAULT_F_DC_TARGET,
    DEFAULT_F_IH_TARGET,
    EXACT_ORACLE_MAX_ATOMS,
    LATTICE_SPACING,
)
from src.decoherence import (
    BranchingModel,
    DecayParams,
    dephasing_branch,
    event_probabilities,
    f_dc,
    f_dc_total,
    f_de,
    f_lost,
    no_event_amplitudes,
    p_bbr_zero,
)
from src.dressing import DressingParams, c6_for_blockade
from src.errors import InvalidArgument
from src.evaluation import realization_report
from src.inhomogeneity import Lattice, build_interactions, f_ih_exact, f_ih_perturbative
from src.kerr import best_z_rotation, evolve, revival_fidelity, w_for_target_fnl
from src.metrology import (
    EnergyCatSpec,
    MotionParams,
    NoiseModel,
    phonon_leakage,
    phonon_leakage_perturbative,
    phonon_population_average,
    sigma_bound,
)
from src.scaling import FidelityBudget, WStarTable, build_w_star_table, max_cat_size
from src.scaling.optimizer import decay_rates
from src.spinsim import (
    CSSParams,
    IdealCatParams,
    css_state,
    energy_cat,
    fidelity,
    ghz_weight,
    husimi_grid,
    ideal_cat,
    rotate_z,
)

logger = logging.getLogger("ecat.cli.commands")

MHZ = 2 * np.pi * 1e6
KHZ = 2 * np.pi * 1e3
HZ = 2 * np.pi


def _dressing(config: RunConfig) -> DressingParams:
    return DressingParams(
        omega_r=config.get("omega_r_mhz", 15.0) * MHZ,
        delta=config.get("delta_mhz", 270.0) * MHZ,
    )


def _kerr_cat(n_atoms: int, w: float, delta: float):
    """Kerr cat grown from the CSS on +y, in the frame without the linear light shift."""
    params = DressingParams.from_w(w, delta)
    start = css_state(n_atoms, CSSParams(np.pi / 2, np.pi / 2))
    cat = evolve(start, params, params.tau_c, model="kerr")
    return start, rotate_z(cat, np.mod(np.pi / (2 * params.w ** 2), 2 * np.pi)), params


def _rates(config: RunConfig) -> tuple[float, float] | None:
    gamma_s, gamma_bbr = config.get("gamma_s"), config.get("gamma_bbr")
    if gamma_s is None and gamma_bbr is None:
        return None
    return float(gamma_s or 0.0), float(gamma_bbr or 0.0)


def cat_evolve(config: RunConfig) -> pd.DataFrame:
    """Exact or Kerr evolution of |eta=1>, sampled at multiples of tau_c."""
    n_atoms = int(config.get("n_atoms", 100))
    model = config.get("model", "exact")
    params = _dressing(config)
    start = css_state(n_atoms, CSSParams(np.pi / 2, 0.0))
    target = ideal_cat(n_atoms, IdealCatParams(np.pi / 2, -np.pi / (2 * params.w ** 2), np.pi / 2))

    rows = []
    for scale in parse_float_list(config.get("tau_scales", "0,0.25,0.5,0.75,1,1.5,2")):
        state = evolve(start, params, scale * params.tau_c, model=model)
        revival, _ = best_z_rotation(start, state)
        rows.append({
            "tau_scale": scale,
            "t": scale * params.tau_c,
            "cat_fidelity": fidelity(state, target),
            "revival_fidelity": revival,
            "ghz_weight_after_pulse": ghz_weight(energy_cat(state)),
        })
    return pd.DataFrame(rows)


def fnl_scan(config: RunConfig) -> pd.DataFrame:
    target = float(config.get("target", 0.8))
    rows = [
        {"N": n, "f_target": target, "w_star": w_for_target_fnl(n, target)}
        for n in parse_int_list(config.get("n_range", "20..200:20"))
    ]
    return pd.DataFrame(rows)


def revival(config: RunConfig) -> pd.DataFrame:
    w = float(config.get("w", 0.05))
    scale = float(config.get("tau_scale", 2.0))
    rows = [
        {"N": n, "w": w, "tau_scale": scale, "revival_fidelity": revival_fidelity(n, w, scale)}
        for n in parse_int_list(config.get("n_atoms", "10,50,200"))
    ]
    return pd.DataFrame(rows)


def inhomogeneity(config: RunConfig) -> pd.DataFrame:
    """F_IH of cubic blocks against D / R_b, with the exact oracle where it fits."""
    spacing = float(config.get("spacing_nm", LATTICE_SPACING * 1e9)) * 1e-9
    exact = bool(config.get("exact", False))
    reference = _dressing(config)

    rows = []
    for side in parse_int_list(config.get("sides", "2,3")):
        if side < 2:
            raise InvalidArgument("sides", f"cubes need at least 2 atoms per edge, got {side}")
        lattice = Lattice.cubic(side, spacing)
        for ratio in parse_float_list(config.get("ratios", "0.1,0.2,0.3,0.4")):
            if ratio <= 0:
                raise InvalidArgument("ratios", f"D/R_b must be positive, got {ratio}")
            c6 = c6_for_blockade(lattice.diagonal / ratio, reference.delta)
            params = DressingParams(reference.omega_r, reference.delta, c6=c6)
            m = build_interactions(lattice, params)
            pert = f_ih_perturbative(m, params.tau_c)
            oracle = f_ih_exact(m, params.tau_c) if exact and lattice.n_atoms <= EXACT_ORACLE_MAX_ATOMS else np.nan
            rows.append({
                "N": lattice.n_atoms,
                "D_over_Rb": ratio,
                "F_IH_pert": pert.fidelity,
                "F_IH_exact": oracle,
                "order_ratio": pert.order_ratio,
            })
    return pd.DataFrame(rows)


def lifetimes(config: RunConfig) -> pd.DataFrame:
    """Radiative rate and blackbody rates of 5sns 3S1 across n."""
    temperatures = parse_float_list(config.get("temperatures", "3,95,300"))
    rows = []
    for n in parse_int_list(config.get("n_range", "40..100:10")):
        level = rydberg_level("3S1", n, config.data_dir)
        channels = channel_table(level, data_dir=config.data_dir)
        tau, _ = lifetime(level, channels)
        row = {"n": n, "gamma_s": 1.0 / tau, "tau": tau}
        for t in temperatures:
            row[f"gamma_bbr_{t:g}K"] = bbr_rate(level, t, channels)[0]
        rows.append(row)
    return pd.DataFrame(rows)


def bbr(config: RunConfig) -> pd.DataFrame:
    """Per-channel spontaneous and blackbody rates of one level."""
    n = int(config.get("n", ANCHOR_PRINCIPAL_N))
    temperature = float(config.get("temperature", 300.0))
    level = rydberg_level("3S1", n, config.data_dir)
    rows = [
        {
            "final": record.final.label,
            "omega": record.omega,
            "dipole_rate": record.dipole_rate,
            "a_coeff": record.a_coeff,
            "b_coeff": record.b_coeff(temperature),
        }
        for record in channel_table(level, data_dir=config.data_dir)
    ]
    return pd.DataFrame(rows)


def decoherence(config: RunConfig) -> dict:
    n_atoms = int(config.get("n_atoms", ANCHOR_N_ATOMS))
    n = int(config.get("n", ANCHOR_PRINCIPAL_N))
    temperature = float(config.get("temperature", 3.0))
    params = _dressing(config)
    gamma_s, gamma_bbr = _rates(config) or decay_rates(n, temperature, config.data_dir)

    branching = BranchingModel()
    decay = DecayParams.from_dressing(gamma_s + gamma_bbr, params, n_atoms)
    p0, p_loss, p_de = event_probabilities(decay, branching)
    f_de_value = f_de(n_atoms, params)
    f_lost_value = f_lost(n_atoms, params)
    return {
        "n": n,
        "temperature": temperature,
        "gamma_s": gamma_s,
        "gamma_bbr": gamma_bbr,
        "decay": decay.to_dict(),
        "branching": branching.to_dict(),
        "probabilities": {"no_event": p0, "loss": p_loss, "deexcitation": p_de},
        "f_dc": f_dc(decay, branching),
        "f_de": f_de_value,
        "f_lost": f_lost_value,
        "f_dc_total": f_dc_total(decay, branching, f_de_value, f_lost_value),
        "no_event_amplitudes": no_event_amplitudes(decay, branching),
        "dephasing": dephasing_branch(n_atoms, decay, branching),
        "p_bbr_zero": p_bbr_zero(n_atoms, params.w, gamma_bbr, params.tau_c),
    }


def catsize(config: RunConfig) -> pd.DataFrame:
    budget = FidelityBudget(
        f_nl_target=float(config.get("budget_nl", 0.7)),
        f_ih_target=float(config.get("fih", DEFAULT_F_IH_TARGET)),
        f_dc_target=float(config.get("fdc", DEFAULT_F_DC_TARGET)),
        temperature=float(config.get("temperature", 3.0)),
    )
    if config.get("w_prefactor") is not None:
        table = WStarTable.from_power_law(
            budget.f_nl_target, float(config.get("w_prefactor")), float(config.get("w_exponent", -0.84))
        )
    else:
        table = build_w_star_table(budget.f_nl_target)
    spacing = float(config.get("spacing_nm", LATTICE_SPACING * 1e9)) * 1e-9

    rows = []
    for n in parse_int_list(config.get("n_range", "40..140:5")):
        result = max_cat_size(n, budget, table, config.data_dir, spacing, rates=_rates(config))
        rows.append({
            "n": result.n,
            "N_max": result.n_max,
            "delta": result.delta,
            "w": result.w,
            "tau_c": result.tau_c,
            "binding": result.binding,
            "T": result.temperature,
            "unconstrained": result.unconstrained,
        })
    return pd.DataFrame(rows)


def sigma_bound_command(config: RunConfig) -> dict:
    spec = EnergyCatSpec.from_ev(int(config.get("n_atoms", ANCHOR_N_ATOMS)), float(config.get("delta_e_ev", 1.8)))
    noise = NoiseModel(
        trap_loss_rate=float(config.get("trap_loss_rate", 10e-3)),
        correlated_linewidth=float(config.get("correlated_linewidth_hz", 10e-3)) * HZ,
        uncorrelated_linewidth=float(config.get("uncorrelated_linewidth_hz", 0.0)) * HZ,
    )
    if config.get("bbr_temperature") is not None:
        noise = noise.with_thermal_noise(float(config.get("bbr_temperature")), float(config.get("bbr_delta_t", 1.0)))
    return {"spec": spec.to_dict(), "noise": noise.to_dict(), **sigma_bound(spec, noise)}


def husimi(config: RunConfig) -> pd.DataFrame:
    """Husimi Q of the input CSS, the Kerr cat or the energy cat, in long format."""
    n_atoms = int(config.get("n_atoms", 100))
    kind = config.get("state", "cat")
    start, cat, _ = _kerr_cat(n_atoms, float(config.get("w", 0.05)), _dressing(config).delta)
    states = {"css": start, "cat": cat, "ghz": energy_cat(cat)}
    if kind not in states:
        raise InvalidArgument("state", f"must be one of {sorted(states)}, got {kind!r}")
    thetas = np.linspace(0.0, np.pi, int(config.get("n_theta", 61)))
    phis = np.linspace(0.0, 2 * np.pi, int(config.get("n_phi", 121)), endpoint=False)
    q = husimi_grid(states[kind], thetas, phis)
    theta_grid, phi_grid = np.meshgrid(thetas, phis, indexing="ij")
    return pd.DataFrame({"theta": theta_grid.ravel(), "phi": phi_grid.ravel(), "q": q.ravel()})


def phonon(config: RunConfig) -> dict:
    motion = MotionParams(
        omega_e=float(config.get("omega_e_khz", 1.0)) * KHZ,
        lamb_dicke=float(config.get("lamb_dicke", 0.1)),
        omega_tr=float(config.get("trap_khz", 400.0)) * KHZ,
    )
    return {
        "motion": motion.to_dict(),
        "leakage": phonon_leakage(motion),
        "perturbative": phonon_leakage_perturbative(motion),
        "time_averaged_population": phonon_population_average(motion),
    }


def energy_cat_command(config: RunConfig) -> dict:
    n_atoms = int(config.get("n_atoms", 100))
    w = float(config.get("w", 0.05))
    _, cat, params = _kerr_cat(n_atoms, w, _dressing(config).delta)
    return {
        "n_atoms": n_atoms,
        "w": w,
        "tau_c": params.tau_c,
        "ghz_weight_before_pulse": ghz_weight(cat),
        "ghz_weight_after_pulse": ghz_weight(energy_cat(cat)),
    }


def realization(config: RunConfig) -> dict:
    params = _dressing(config)
    n = config.get("n")
    return realization_report(
        params.omega_r,
        params.delta,
        int(config.get("n_atoms", ANCHOR_N_ATOMS)),
        float(config.get("ramp_ns", ANCHOR_RAMP_DURATION * 1e9)) * 1e-9,
        n=int(n) if n is not None else None,
        temperature=float(config.get("temperature", 3.0)),
        data_dir=config.data_dir,
        rates=_rates(config),
    )


COMMANDS = {
    "cat-evolve": cat_evolve,
    "fnl-scan": fnl_scan,
    "revival": revival,
    "inhomogeneity": inhomogeneity,
    "lifetimes": lifetimes,
    "bbr": bbr,
    "decoherence": decoherence,
    "catsize": catsize,
    "sigma-bound": sigma_bound_command,
    "husimi": husimi,
    "phonon": phonon,
    "energy-cat": energy_cat_command,
    "realization": realization,
}
