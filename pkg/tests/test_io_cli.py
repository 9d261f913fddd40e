import json
import math

import numpy as np
import pytest

from casimir_kerr import io
from casimir_kerr.cli import main
from casimir_kerr.dce_rates import RateCurve
from casimir_kerr.mode_coupling import integrate_recursion
from casimir_kerr.quantum_states import SqueezedCoherentParams


@pytest.fixture(autouse=True)
def _isolated(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("CASIMIR_KERR_OUT", raising=False)


def test_csv_round_trip(tmp_path):
    x = np.linspace(0, 1, 7)
    rate = np.sin(x) / 3.0
    curve = RateCurve(SqueezedCoherentParams(1 + 2j, 0.5, 1.0), x, rate, "demo")
    path = io.write_rate_curve_csv(curve, tmp_path / "c.csv")
    comments, columns, data = io.read_csv(path)
    assert comments[0].startswith("label=demo")
    assert columns == ["tau", "rate"]
    assert np.array_equal(data[:, 0], x) and np.array_equal(data[:, 1], rate)


def test_coefficients_csv(tmp_path):
    tabs = integrate_recursion(0.1, 5, 1e-3, 2)
    _, columns, data = io.read_csv(io.write_coefficients_csv(tabs, tmp_path / "k.csv"))
    assert columns == ["tau", "n", "xi_re", "xi_im", "eta_re", "eta_im"]
    assert data.shape == (6, 6)
    assert data[0, 2] == 1.0


def test_config_parser(tmp_path):
    f = tmp_path / "a.cfg"
    f.write_text("# comment\n\ntau-max = 0.5  # trailing\nsamples=3\n")
    assert io.parse_config_file(f) == {"tau_max": "0.5", "samples": "3"}
    f.write_text("just words\n")
    with pytest.raises(io.ConfigError):
        io.parse_config_file(f)
    with pytest.raises(io.ConfigError):
        io.parse_config_file(tmp_path / "missing.cfg")


def test_svg(tmp_path):
    path = io.write_svg(tmp_path / "p.svg", [("a<b", [0, 1], [0, 1]), ("c", [0, 1], [1, 1])], title="t")
    text = path.read_text()
    assert text.startswith("<svg") and text.count("<polyline") == 2 and "a&lt;b" in text


def test_dce_rate_custom(tmp_path, capsys):
    assert main(["dce-rate", "--zeta", "1", "--alpha", "0", "--tau-max", "1", "--samples", "11"]) == 0
    files = list((tmp_path / "out").glob("*.csv"))
    assert len(files) == 1
    comments, columns, data = io.read_csv(files[0])
    assert comments[0].startswith("label=")
    assert len(data) == 11
    assert abs(data[0, 1] - math.sinh(2)) < 1e-12
    assert "rate(tau=0.5)" in capsys.readouterr().out


def test_dce_rate_figures(tmp_path):
    assert main(["dce-rate", "--fig", "4", "--samples", "11", "--out", "f4"]) == 0
    files = sorted((tmp_path / "f4").glob("*.csv"))
    assert len(files) == 5
    vac = io.read_csv(tmp_path / "f4" / "fig4_vacuum.csv")[2]
    assert vac[0, 1] == 0.0
    assert main(["dce-rate", "--fig", "1", "--samples", "11", "--out", "f1", "--svg"]) == 0
    assert len(list((tmp_path / "f1").glob("*.csv"))) == 5
    assert (tmp_path / "f1" / "fig1.svg").exists()


def test_outputs_are_deterministic(tmp_path):
    main(["dce-rate", "--fig", "1", "--samples", "11", "--out", "a"])
    main(["dce-rate", "--fig", "1", "--samples", "11", "--out", "b"])
    for f in (tmp_path / "a").iterdir():
        assert f.read_bytes() == (tmp_path / "b" / f.name).read_bytes()


def test_absorption_commands(tmp_path):
    assert main(["absorption", "--fig", "5", "--points", "201"]) == 0
    files = sorted((tmp_path / "out").glob("fig5_*.csv"))
    assert len(files) == 5
    top = [f for f in files if "zeta_1.5" in f.name][0]
    comments, columns, data = io.read_csv(top)
    assert columns == ["omega", "rate", "rate_normalized"]
    assert data[:, 2].max() == 1.0
    assert main(["absorption", "--state", "coherent", "--alpha2", "7", "--points", "201", "--out", "one"]) == 0
    (single,) = (tmp_path / "one").glob("*.csv")
    data = io.read_csv(single)[2]
    assert abs(data[np.argmax(data[:, 1]), 0] - 2 * math.pi * 1e14) < 1e-6 * 2 * math.pi * 1e14


def test_usage_errors(capsys):
    assert main(["absorption", "--nonsense"]) == 2
    assert "usage" in capsys.readouterr().err
    assert main(["dce-rate", "--samples", "zero"]) == 2
    assert main(["dce-rate", "--fig", "1", "--zeta", "1"]) == 2
    assert main(["absorption"]) == 2
    assert main([]) == 2


def test_infeasible_match_exit_code():
    assert main(["dce-rate", "--zeta", "2.9", "--target-n", "7"]) == 3


def test_config_and_precedence(tmp_path, monkeypatch):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("zeta = 1\nalpha = 0\nsamples = 5\nout = from_config\n")
    assert main(["dce-rate", "--config", str(cfg), "--samples", "3"]) == 0
    (f,) = (tmp_path / "from_config").glob("*.csv")
    assert len(io.read_csv(f)[2]) == 3  # flag beats config
    monkeypatch.setenv("CASIMIR_KERR_OUT", str(tmp_path / "from_env"))
    assert main(["dce-rate", "--config", str(cfg)]) == 0
    (f,) = (tmp_path / "from_env").glob("*.csv")
    assert len(io.read_csv(f)[2]) == 5
    assert main(["dce-rate", "--config", str(cfg), "--out", "from_flag"]) == 0
    assert (tmp_path / "from_flag").is_dir()


def test_bad_config_exit_code(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("unknown_key = 1\n")
    assert main(["dce-rate", "--config", str(cfg)]) == 2
    cfg.write_text("fig = 9\n")
    assert main(["dce-rate", "--config", str(cfg)]) == 2


def test_verify_small_truncation_fails(tmp_path, capsys):
    assert main(["verify", "--nmax", "21", "--json", "report.json"]) == 1
    out = capsys.readouterr().out
    assert "sum_identities" in out and "FAIL" in out
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["passed"] is False
    by_name = {c["name"]: c for c in report["checks"]}
    assert by_name["sum_identities"]["status"] == "FAIL"
    assert by_name["elliptic_vs_quadrature"]["status"] == "PASS"
