import json
import math
import subprocess
import sys

import numpy as np
import pytest

from ouspin.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from ouspin.noise import Regime
from ouspin.scenarios import Scenario
from ouspin.sweep import CSV_FIELDS, SweepSpec, figure_spec, rows_to_csv, rows_to_json, run_sweep
from ouspin.verify import figure_margin, run_checks

HEADER = "t,Gamma_t,mu,tau3_ratio_numeric,tau3_ratio_analytic,discord_numeric,discord_analytic"


@pytest.fixture(scope="module")
def ghz_markov_rows():
    return run_sweep(SweepSpec(Scenario.GHZ, Regime.MARKOV, t_max=10.0, points=101))


def column(rows, name):
    return np.array([r[name] for r in rows], dtype=float)


def test_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec(points=1)
    with pytest.raises(ValueError):
        SweepSpec(t_max=0.0)
    with pytest.raises(ValueError):
        SweepSpec(measures=("purity",))
    with pytest.raises(ValueError):
        SweepSpec(gamma=0.0, regime=Regime.EXACT)
    assert SweepSpec(scenario="w").scenario is Scenario.W


def test_csv_layout():
    rows = run_sweep(SweepSpec(t_max=2.0, points=3, measures=("tau3",)))
    text = rows_to_csv(rows)
    lines = text.split("\n")
    assert lines[0] == HEADER
    assert ",".join(CSV_FIELDS) == HEADER
    assert "\r" not in text and text.endswith("\n") and lines[-1] == ""
    assert len(lines) == 5
    for line in lines[1:-1]:
        fields = line.split(",")
        assert len(fields) == 7
        assert fields[5] == "" and fields[6] == ""
    # mu at t=1 is e^{-1/2}, printed with 12 significant digits
    assert lines[2].split(",")[2] == format(math.exp(-0.5), ".12g") == "0.606530659713"


def test_json_layout():
    rows = run_sweep(SweepSpec(t_max=1.0, points=2, measures=("tau3",)))
    data = json.loads(rows_to_json(rows))
    assert [list(d) for d in data] == [list(CSV_FIELDS)] * 2
    assert data[1]["discord_numeric"] is None
    assert data[0]["tau3_ratio_numeric"] == 1.0


def test_ghz_markov_decay(ghz_markov_rows):
    first = ghz_markov_rows[0]
    assert first["t"] == 0.0
    for c in ("tau3_ratio_numeric", "tau3_ratio_analytic", "discord_numeric", "discord_analytic"):
        assert abs(first[c] - 1.0) <= 1e-12
    d = column(ghz_markov_rows, "discord_numeric")
    assert d[-1] < 0.01
    # mpmath at 40 digits: closed-form discord at mu = e^{-5}
    assert abs(ghz_markov_rows[-1]["discord_analytic"] - 6.750098125827294702e-14) <= 1e-25
    assert np.all(np.diff(d) <= 0)


@pytest.mark.parametrize("name", ["tau3_ratio_numeric", "discord_numeric"])
def test_rows_monotone(ghz_markov_rows, name):
    assert np.all(np.diff(column(ghz_markov_rows, name)) <= 0)


def test_numeric_columns_match_analytic(ghz_markov_rows):
    for a, b in (("tau3_ratio_numeric", "tau3_ratio_analytic"), ("discord_numeric", "discord_analytic")):
        assert np.max(np.abs(column(ghz_markov_rows, a) - column(ghz_markov_rows, b))) <= 1e-6


def test_w_memory_prolongs_correlations():
    kw = dict(scenario=Scenario.W, Gamma=1.0, gamma=0.01, t_max=2.0, points=2)
    slow = run_sweep(SweepSpec(regime=Regime.NONMARKOV, **kw))[-1]
    fast = run_sweep(SweepSpec(regime=Regime.MARKOV, **kw))[-1]
    assert abs(slow["mu"] - math.exp(-0.01)) <= 1e-15
    assert abs(fast["mu"] - math.exp(-1.0)) <= 1e-15
    for c in ("tau3_ratio_numeric", "discord_numeric"):
        assert slow[c] > fast[c]


def test_w_raw_discord():
    rows = run_sweep(SweepSpec(Scenario.W, t_max=1.0, points=2, normalized=False, measures=("discord",)))
    assert abs(rows[0]["discord_numeric"] - 1.5) <= 1e-9
    assert abs(rows[0]["discord_analytic"] - 1.5) <= 1e-12


@pytest.mark.parametrize("which,expected", [("fig1a", math.exp(-3)), ("fig2a", math.exp(-2))])
def test_figure_ratios_at_gamma_t_2(which, expected):
    rows = run_sweep(figure_spec(which, measures=("tau3",)))
    row = next(r for r in rows if abs(r["Gamma_t"] - 2.0) < 1e-12)
    assert abs(row["tau3_ratio_numeric"] - expected) <= 1e-9
    assert abs(row["tau3_ratio_analytic"] - expected) <= 1e-15


@pytest.mark.parametrize("which", ["fig1b", "fig2b"])
def test_memory_panels_intercept(which):
    spec = figure_spec(which, measures=("tau3",))
    assert spec.gamma == 0.01 and spec.Gamma == 1.0 and spec.regime is Regime.NONMARKOV
    assert run_sweep(spec)[0]["tau3_ratio_numeric"] == pytest.approx(1.0, abs=1e-12)


def test_figure_rejects_unknown_panel():
    with pytest.raises(ValueError):
        figure_spec("fig3")


def test_figure_margin_detects_violations():
    rows = {w: run_sweep(figure_spec(w, points=7, measures=("tau3",))) for w in ("fig1a", "fig1b")}
    for r in rows["fig1a"] + rows["fig1b"]:
        r["discord_numeric"] = r["discord_analytic"] = r["tau3_ratio_numeric"] ** 2
        r["tau3_ratio_analytic"] = r["tau3_ratio_numeric"]
    panels = {"fig1a": rows["fig1a"], "fig1b": rows["fig1b"], "fig2a": rows["fig1a"], "fig2b": rows["fig1b"]}
    assert figure_margin(panels) < 0
    panels["fig1b"][3]["discord_numeric"] = 0.0
    assert figure_margin(panels) > 0


def test_cli_sweep_bit_identical(tmp_path):
    args = ["sweep", "--scenario", "w", "--regime", "exact", "--t-max", "3", "--points", "5"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(a)]) == EXIT_OK
    assert main(args + ["--out", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().splitlines()[0] == HEADER


def test_cli_json_stdout(capsys):
    assert main(["sweep", "--points", "2", "--t-max", "1", "--measures", "tau3", "--format", "json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert len(data) == 2 and data[0]["tau3_ratio_numeric"] == 1.0


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["sweep", "--scenario", "bell"],
        ["sweep", "--measures", "purity"],
        ["sweep", "--points", "one"],
        ["figure", "fig9"],
        ["verify", "--level", "medium"],
    ],
)
def test_cli_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == EXIT_USAGE


def test_cli_invalid_spec_exit_code(capsys):
    assert main(["sweep", "--points", "1"]) == EXIT_USAGE
    assert "points" in capsys.readouterr().err


def test_cli_figure_writes_csv_and_script(tmp_path, capsys):
    out = tmp_path / "panel.csv"
    assert main(["figure", "fig2b", "--points", "4", "--t-max", "3", "--out", str(out)]) == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == HEADER and len(lines) == 5
    script = (tmp_path / "panel.gp").read_text()
    assert '"panel.csv"' in script and "plot" in script


def test_cli_verify_exit_codes(monkeypatch, capsys):
    import ouspin.verify as verify
    from ouspin.verify import Check

    monkeypatch.setattr(verify, "run_checks", lambda level, seed=0: [Check("x", True, 0.0, 1.0)])
    assert main(["verify"]) == EXIT_OK
    monkeypatch.setattr(verify, "run_checks", lambda level, seed=0: [Check("x", False, 2.0, 1.0)])
    assert main(["verify", "--level", "full"]) == EXIT_FAIL
    assert "[FAIL] x" in capsys.readouterr().out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ouspin", "--help"], capture_output=True, text=True)
    assert res.returncode == 0
    for cmd in ("sweep", "verify", "figure"):
        assert cmd in res.stdout


@pytest.mark.slow
def test_verify_fast_level(capsys, tmp_path):
    report = tmp_path / "report.txt"
    assert main(["verify", "--level", "fast", "--out", str(report)]) == EXIT_OK
    text = report.read_text()
    assert "11/11 checks passed" in text
    assert "FAIL" not in text


def test_tampering_fails_verification():
    checks = run_checks("fast", tamper=1e-3)
    failed = {c.name for c in checks if not c.passed}
    assert "channel completeness and closed-form states" in failed
    assert "global discord vs closed forms" in failed
    assert not all(c.passed for c in checks)
