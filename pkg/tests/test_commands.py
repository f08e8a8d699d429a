"""
Integration Tests - Command line

Runs the sectorsec commands end to end through main() and checks outputs,
exit codes and byte-stable CSV.
"""
import csv
from unittest.mock import patch

import pytest

from sectorsec.main import main
from sectorsec.services.report import CSV_HEADER, crossing_snr

SMALL_COLLUDING = """
adversary = "colluding"
n_sectors = 4
m_right = 4
rate_threshold = 2.0
mu_s = 0.69
sigma_s = 1.1
mu_k = 0.69
sigma_k = 1.1
vary = "U1"
vary_values = [1, 3]
snr_grid = [10.0, 18.0]
seed = 77
"""

SMALL_PASSIVE = """
adversary = "passive"
m_right = 4
rate_threshold = 3.0
mu_s = 1.0
sigma_s = 0.95
mu_k = 1.0
sigma_k = 0.95
vary = "N"
vary_values = [4]
snr_grid = [10.0, 15.0]
"""


def read_curves(path):
    curves = {}
    with open(path, newline="") as f:
        reader = csv.DictReader(f)
        assert reader.fieldnames == CSV_HEADER
        for row in reader:
            curves.setdefault(row["axis"], []).append(row)
    return curves


def test_analytic_passive_sectors(passive_path, tmp_path):
    out = tmp_path / "passive.csv"
    assert main(["analytic", "--config", str(passive_path), "--out", str(out)]) == 0

    curves = read_curves(out)
    assert sorted(curves, key=int) == ["1", "2", "4", "8"]
    for axis, rows in curves.items():
        assert len(rows) == 31
        assert [float(r["snr_db"]) for r in rows] == [float(s) for s in range(31)]
        for r in rows:
            assert r["sop_mc"] == "" and r["ci_low"] == ""
            assert 0.0 <= float(r["sop_analytic"]) <= 1.0
            assert 0.0 <= float(r["sop_exact"]) <= 1.0

    crossings = {}
    for axis in ("4", "8"):
        rows = curves[axis]
        sops = [float(r["sop_analytic"]) for r in rows]
        assert all(b <= a + 1e-12 for a, b in zip(sops, sops[1:]))
        crossings[axis] = crossing_snr([float(r["snr_db"]) for r in rows], sops)
    assert crossings["4"] is not None and crossings["8"] is not None
    # Doubling the sector count buys roughly 6 dB at SOP = 1e-2
    assert crossings["8"] < crossings["4"]
    assert crossings["4"] - crossings["8"] == pytest.approx(6.0, abs=2.0)


def test_analytic_to_stdout(colluding_path, capsys):
    assert main(["analytic", "--config", str(colluding_path), "--out", "-", "--weights", "paper-printed"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 1 + 2 * 25


def test_analytic_is_deterministic(colluding_path, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["analytic", "--config", str(colluding_path), "--out", str(a)]) == 0
    assert main(["analytic", "--config", str(colluding_path), "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_simulate_byte_identical_across_thread_counts(write_config, tmp_path, monkeypatch):
    config = write_config(SMALL_COLLUDING)
    outputs = []
    for threads in ("1", "4", "0"):
        monkeypatch.setenv("SECTORSEC_THREADS", threads)
        out = tmp_path / f"sim_{threads}.csv"
        assert main(["simulate", "--config", str(config), "--out", str(out), "--trials", "100000", "--seed", "5"]) == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]

    curves = read_curves(tmp_path / "sim_1.csv")
    for rows in curves.values():
        for r in rows:
            assert r["sop_analytic"] == ""
            assert float(r["ci_low"]) <= float(r["sop_mc"]) <= float(r["ci_high"])


def test_simulate_seed_changes_output(write_config, tmp_path):
    config = write_config(SMALL_COLLUDING)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["simulate", "--config", str(config), "--out", str(a), "--trials", "20000", "--seed", "1"]) == 0
    assert main(["simulate", "--config", str(config), "--out", str(b), "--trials", "20000", "--seed", "2"]) == 0
    assert a.read_bytes() != b.read_bytes()


def test_simulate_zero_trials_exit_2(write_config, tmp_path, capsys):
    config = write_config(SMALL_COLLUDING)
    code = main(["simulate", "--config", str(config), "--out", str(tmp_path / "x.csv"), "--trials", "0", "--seed", "1"])
    assert code == 2
    assert "validation_error" in capsys.readouterr().err
    assert not (tmp_path / "x.csv").exists()


def test_empty_grid_exit_2(write_config, tmp_path):
    config = write_config(SMALL_PASSIVE.replace("snr_grid = [10.0, 15.0]", "snr_grid = []"))
    assert main(["analytic", "--config", str(config), "--out", str(tmp_path / "x.csv")]) == 2


def test_parse_error_exit_2(write_config, tmp_path, capsys):
    config = write_config("m_right = = 4\n")
    assert main(["analytic", "--config", str(config), "--out", str(tmp_path / "x.csv")]) == 2
    assert "config_parse_error" in capsys.readouterr().err


def test_invalid_thread_setting_exit_2(write_config, tmp_path, monkeypatch):
    monkeypatch.setenv("SECTORSEC_THREADS", "-1")
    config = write_config(SMALL_PASSIVE)
    assert main(["analytic", "--config", str(config), "--out", str(tmp_path / "x.csv")]) == 2


def test_numeric_failure_exit_3(write_config, tmp_path, capsys):
    config = write_config(SMALL_PASSIVE)
    with patch("sectorsec.tasks.sweep.sop", side_effect=ArithmeticError("overflow in threshold")):
        code = main(["analytic", "--config", str(config), "--out", str(tmp_path / "x.csv")])
    assert code == 3
    assert "numeric_error" in capsys.readouterr().err


def test_unknown_command_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["plot"])
    assert exc.value.code == 2


def test_compare_writes_report(write_config, tmp_path, capsys):
    config = write_config(SMALL_PASSIVE)
    out = tmp_path / "cmp.csv"
    gp = tmp_path / "cmp.gp"
    code = main([
        "compare", "--config", str(config), "--out", str(out),
        "--trials", "50000", "--seed", "3", "--tolerance", "0.3", "--gnuplot", str(gp),
    ])
    assert code == 0

    rows = read_curves(out)["4"]
    assert all(r["sop_analytic"] and r["sop_exact"] and r["sop_mc"] for r in rows)

    deviations = (tmp_path / "cmp.deviations.csv").read_text().splitlines()
    assert deviations[0] == "snr_db,axis,sop_analytic,sop_mc,abs_dlog10,flagged"
    assert len(deviations) == 3

    summary = capsys.readouterr().out
    assert "Scenario: scenario" in summary
    assert "N=4" in summary
    assert "better fit = " in summary
    assert "'" + str(out) + "'" in gp.read_text()
