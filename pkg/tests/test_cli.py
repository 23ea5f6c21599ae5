import json

import numpy as np
import pandas as pd
import pytest

from src.cli import RunConfig, main, run
from src.cli.main import EXIT_INVALID, EXIT_MISSING_FILE, EXIT_NUMERICAL, EXIT_OK
from src.cli.run_config import merge_params, parse_int_list
from src.errors import InvalidArgument

FAST_CATSIZE = ["catsize", "--n-range", "80", "--w-prefactor", "2.0", "--w-exponent", "-0.84",
                "--gamma-s", "2000", "--gamma-bbr", "100"]


def _run(tmp_path, name: str, argv: list[str], fmt: str | None = None) -> tuple[int, str]:
    out = tmp_path / name
    prefix = ["--output", str(out)] + (["--format", fmt] if fmt else [])
    code = main(prefix + argv)
    return code, out.read_text(encoding="utf-8") if out.exists() else ""


def _csv(text: str) -> pd.DataFrame:
    from io import StringIO
    return pd.read_csv(StringIO(text), comment="#")


def test_parse_int_list():
    assert parse_int_list("20..60:20") == [20, 40, 60]
    assert parse_int_list("3..5") == [3, 4, 5]
    assert parse_int_list("40,60") == [40, 60]
    assert parse_int_list([1, 2]) == [1, 2]
    with pytest.raises(InvalidArgument):
        parse_int_list("9..3")


def test_flags_win_over_file_values():
    merged = merge_params({"lamb-dicke": 0.2, "trap_khz": 300.0}, {"lamb_dicke": 0.1, "omega_e_khz": None})
    assert merged == {"lamb_dicke": 0.1, "trap_khz": 300.0}


def test_phonon_report(tmp_path):
    code, text = _run(tmp_path, "phonon.json", ["phonon"])
    assert code == EXIT_OK
    payload = json.loads(text)
    assert payload["header"]["subcommand"] == "phonon"
    assert 1e-8 <= payload["data"]["leakage"] <= 1e-7


def test_phonon_to_stdout(capsys):
    assert main(["phonon", "--lamb-dicke", "0.05"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["data"]["motion"]["lamb_dicke"] == 0.05


def test_config_file_and_flag_override(tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"lamb_dicke": 0.2, "trap_khz": 300.0}), encoding="utf-8")
    code, text = _run(tmp_path, "out.json", ["--config", str(config), "phonon", "--lamb-dicke", "0.1"])
    assert code == EXIT_OK
    params = json.loads(text)["header"]["config"]["params"]
    assert params["lamb_dicke"] == 0.1
    assert params["trap_khz"] == 300.0


def test_sigma_bound_report(tmp_path):
    code, text = _run(tmp_path, "sigma.json", ["sigma-bound"])
    assert code == EXIT_OK
    data = json.loads(text)["data"]
    assert 1e-35 <= data["sigma_min"] <= 1e-33
    assert set(data["factors"]) == {"energy_decoherence", "trap_loss", "correlated_phase", "uncorrelated_phase"}


def test_energy_cat_reaches_ghz(tmp_path):
    code, text = _run(tmp_path, "ghz.json", ["energy-cat", "--n-atoms", "20", "--w", "0.05"])
    assert code == EXIT_OK
    assert json.loads(text)["data"]["ghz_weight_after_pulse"] >= 1 - 1e-9


def test_cat_evolve_kerr_revival(tmp_path):
    code, text = _run(tmp_path, "evolve.csv", [
        "cat-evolve", "--n-atoms", "20", "--model", "kerr", "--tau-scales", "0,2",
    ])
    assert code == EXIT_OK
    frame = _csv(text)
    assert list(frame["tau_scale"]) == [0.0, 2.0]
    assert frame["revival_fidelity"].iloc[1] == pytest.approx(1.0, abs=1e-8)


def test_husimi_cat_has_two_equatorial_lobes(tmp_path):
    code, text = _run(tmp_path, "q.csv", [
        "husimi", "--state", "cat", "--n-atoms", "40", "--n-theta", "31", "--n-phi", "64",
    ])
    assert code == EXIT_OK
    frame = _csv(text)
    assert len(frame) == 31 * 64
    peak = frame.loc[frame["q"].idxmax()]
    assert peak["theta"] == pytest.approx(np.pi / 2, abs=0.15)
    equator = frame[np.isclose(frame["theta"], np.pi / 2)]
    strong = equator[equator["q"] > 0.5 * equator["q"].max()]
    # two lobes half a turn apart
    assert np.ptp(strong["phi"]) > np.pi / 2


def test_husimi_json_format(tmp_path):
    code, text = _run(tmp_path, "q.json", ["husimi", "--state", "css", "--n-atoms", "10",
                                           "--n-theta", "5", "--n-phi", "4"], fmt="json")
    assert code == EXIT_OK
    assert len(json.loads(text)["data"]) == 20


def test_inhomogeneity_with_exact_oracle(tmp_path):
    code, text = _run(tmp_path, "ih.csv", ["inhomogeneity", "--sides", "2", "--ratios", "0.1,0.2", "--exact"])
    assert code == EXIT_OK
    frame = _csv(text)
    assert list(frame["N"]) == [8, 8]
    assert np.allclose(frame["F_IH_pert"], frame["F_IH_exact"], atol=1e-3)


def test_catsize_with_overrides(tmp_path):
    code, text = _run(tmp_path, "catsize.csv", FAST_CATSIZE)
    assert code == EXIT_OK
    frame = _csv(text)
    assert list(frame.columns) == ["n", "N_max", "delta", "w", "tau_c", "binding", "T", "unconstrained"]
    assert 2 <= frame["N_max"].iloc[0] < 1000
    assert "# data_sha256 c6.dat" in text
    assert "# data_sha256 quantum_defects.dat" in text


def test_decoherence_report(tmp_path):
    code, text = _run(tmp_path, "dc.json", [
        "decoherence", "--n-atoms", "20", "--gamma-s", "2600", "--gamma-bbr", "150",
    ])
    assert code == EXIT_OK
    data = json.loads(text)["data"]
    assert data["f_dc"] <= data["f_dc_total"] <= 1.0
    assert sum(data["probabilities"].values()) <= 1.0


def test_realization_report(tmp_path):
    code, text = _run(tmp_path, "real.json", ["realization"])
    assert code == EXIT_OK
    data = json.loads(text)["data"]
    assert data["timing"]["tau_c"] == pytest.approx(1.4e-3, rel=0.15)
    assert data["switching"]["ground_return"] >= 0.9999


@pytest.mark.parametrize("argv", [
    ["phonon"],
    ["sigma-bound", "--n-atoms", "100"],
    ["inhomogeneity", "--sides", "2", "--ratios", "0.3"],
    FAST_CATSIZE,
])
def test_reruns_are_byte_identical(tmp_path, argv):
    first = _run(tmp_path, "first.out", argv)
    second = _run(tmp_path, "second.out", argv)
    assert first[0] == second[0] == EXIT_OK
    assert first[1] == second[1]


def test_timestamp_only_on_request(tmp_path):
    _, plain = _run(tmp_path, "plain.csv", ["inhomogeneity", "--sides", "2", "--ratios", "0.3"])
    code = main(["--timestamp", "--output", str(tmp_path / "stamped.csv"), "inhomogeneity", "--sides", "2",
                 "--ratios", "0.3"])
    assert code == EXIT_OK
    assert "# generated" not in plain
    assert "# generated" in (tmp_path / "stamped.csv").read_text(encoding="utf-8")


def test_missing_data_file_exit_code(tmp_path, caplog):
    code, _ = _run(tmp_path, "bbr.csv", ["--data-dir", str(tmp_path / "missing"), "bbr"])
    assert code == EXIT_MISSING_FILE
    assert "Missing file" in caplog.text


def test_missing_config_exit_code(tmp_path):
    code, _ = _run(tmp_path, "x.json", ["--config", str(tmp_path / "none.json"), "phonon"])
    assert code == EXIT_MISSING_FILE


def test_invalid_input_exit_code(tmp_path, caplog):
    code, _ = _run(tmp_path, "x.json", ["phonon", "--lamb-dicke", "0.5"])
    assert code == EXIT_INVALID
    assert "lamb_dicke" in caplog.text


def test_numerical_failure_exit_code(tmp_path, caplog):
    argv = FAST_CATSIZE[:-4] + ["--gamma-s", "1e15", "--gamma-bbr", "0"]
    code, _ = _run(tmp_path, "x.csv", argv)
    assert code == EXIT_NUMERICAL
    assert "scaling.max_cat_size" in caplog.text


@pytest.mark.slow
def test_fnl_scan_w_decreases(tmp_path):
    code, text = _run(tmp_path, "fnl.csv", ["fnl-scan", "--n-range", "20..200:20", "--target", "0.8"])
    assert code == EXIT_OK
    w = _csv(text)["w_star"].to_numpy()
    assert np.all(np.diff(w) < 0)


@pytest.mark.slow
def test_catsize_scan_peaks_near_165(tmp_path):
    code, text = _run(tmp_path, "scan.csv", ["catsize", "--n-range", "40..140:5", "--budget-nl", "0.7", "--fdc", "0.8"])
    assert code == EXIT_OK
    assert _csv(text)["N_max"].max() == pytest.approx(165, abs=25)


def test_run_with_built_config(tmp_path):
    out = tmp_path / "direct.json"
    config = RunConfig(subcommand="phonon", params={"lamb_dicke": 0.05}, output=str(out), fmt="json")
    assert run(config) == EXIT_OK
    assert json.loads(out.read_text(encoding="utf-8"))["header"]["config_sha256"] == config.sha256


def test_unknown_format_rejected():
    with pytest.raises(InvalidArgument):
        RunConfig(subcommand="phonon", fmt="xml")
