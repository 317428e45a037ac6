import subprocess
import sys

import pytest

from ddrand import cli
from ddrand import experiments as xp
from ddrand.linalg import NumericalContractError


def run_main(argv):
    return cli.main(argv)


def test_hahn_sweep_writes_csv(tmp_path, capsys):
    out = tmp_path / "hahn.csv"
    code = run_main(["hahn", "--grid", "1e-3,1e-2,2", "--states", "1",
                     "--out", str(out)])
    assert code == 0
    assert "wrote 4 records" in capsys.readouterr().out
    recs = xp.read_csv(out)
    assert len(recs) == 4
    assert all(r.protocol == "hahn" for r in recs)


def test_fig2_sweep_and_slopes_round_trip(tmp_path, capsys):
    out = tmp_path / "fig2.csv"
    code = run_main(["fig2", "--axis", "t", "--grid", "0.1,0.4,3",
                     "--orders", "1", "--states", "2", "--out", str(out)])
    assert code == 0
    capsys.readouterr()
    assert run_main(["slopes", "--in", str(out)]) == 0
    table = capsys.readouterr().out
    assert "curve" in table and "slope" in table
    assert "udd1" in table and "rand-udd1" in table
    # tau varies in lockstep with total_t here and wins the inference order
    assert " tau" in table


def test_fig1_sweep_tiny(tmp_path):
    out = tmp_path / "fig1.csv"
    code = run_main(["fig1", "--axis", "j", "--protocols", "xy4",
                     "--grid", "1e-3,1e-2,2", "--states", "1",
                     "--out", str(out)])
    assert code == 0
    recs = xp.read_csv(out)
    assert {r.j for r in recs} == {1e-3, 1e-2}


def test_cli_output_is_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["fig2", "--axis", "j", "--grid", "0.01,0.1,2", "--orders", "1",
            "--states", "2", "--seed", "7"]
    assert run_main(args + ["--out", str(a)]) == 0
    assert run_main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_slopes_annotates_power_law(tmp_path, capsys):
    recs = [xp.SweepRecord("xy4", False, 1, j, 1e-3, 4e-3, 0, 0,
                           "joint_state", j ** 2)
            for j in xp.log_grid(1e-3, 1e-1, 5)]
    path = tmp_path / "sq.csv"
    xp.write_csv(recs, path)
    assert run_main(["slopes", "--in", str(path), "--floor", "0"]) == 0
    out = capsys.readouterr().out
    assert "2.000" in out


def test_slopes_empty_input(tmp_path, capsys):
    path = tmp_path / "empty.csv"
    xp.write_csv([], path)
    assert run_main(["slopes", "--in", str(path)]) == 1
    assert "no records" in capsys.readouterr().err


def test_slopes_missing_file(tmp_path, capsys):
    assert run_main(["slopes", "--in", str(tmp_path / "nope.csv")]) == 1
    assert "error" in capsys.readouterr().err


def test_slopes_reports_unfittable_curves(tmp_path, capsys):
    recs = [xp.SweepRecord("xy4", False, 1, j, 1e-3, 4e-3, 0, 0,
                           "joint_state", 1e-15)
            for j in xp.log_grid(1e-3, 1e-1, 4)]
    path = tmp_path / "floor.csv"
    xp.write_csv(recs, path)
    assert run_main(["slopes", "--in", str(path)]) == 0
    assert "n/a" in capsys.readouterr().out


def test_bad_arguments_exit_1():
    for argv in (["bogus"],
                 ["fig1", "--axis", "q", "--out", "x.csv"],
                 ["fig1", "--axis", "j"],
                 ["fig2", "--axis", "t", "--grid", "1,2", "--out", "x.csv"],
                 ["fig2", "--axis", "t", "--orders", "0", "--out", "x.csv"],
                 ["hahn", "--grid", "1e-2,1e-3,2", "--out", "x.csv"],
                 ["hahn"],
                 []):
        with pytest.raises(SystemExit) as exc:
            run_main(argv)
        assert exc.value.code == 1


def test_invalid_values_exit_1(tmp_path, capsys):
    code = run_main(["hahn", "--j", "-1", "--states", "1",
                     "--out", str(tmp_path / "y.csv")])
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_contract_violation_exit_2(monkeypatch, tmp_path, capsys):
    def boom(*a, **kw):
        raise NumericalContractError("unitarity defect 1.0")
    monkeypatch.setattr(xp, "run_hahn_sweep", boom)
    code = run_main(["hahn", "--states", "1", "--out", str(tmp_path / "x.csv")])
    assert code == 2
    assert "numerical contract violation" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    out = tmp_path / "cli.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "ddrand.cli", "hahn", "--grid", "1e-3,1e-2,2",
         "--states", "1", "--out", str(out)],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert out.exists()
    proc = subprocess.run(
        [sys.executable, "-m", "ddrand.cli", "slopes", "--in", "/nonexistent.csv"],
        capture_output=True, text=True)
    assert proc.returncode == 1
