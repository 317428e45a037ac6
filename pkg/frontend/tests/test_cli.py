import re
import subprocess
import sys

import pytest

from ddplots import cli
from ddplots.render import PlotSpec, build_figure

from conftest import power_law_rows


def test_plot_writes_svg(make_csv, tmp_path, capsys):
    out = tmp_path / "fig.svg"
    code = cli.main(["plot", "--in", str(make_csv(power_law_rows())),
                     "--x", "j", "--out", str(out)])
    assert code == 0
    assert "wrote" in capsys.readouterr().out
    assert out.read_bytes().startswith(b"<?xml")


def test_plot_x_t_selects_total_t(make_csv, tmp_path):
    rows = []
    for t in ("0.1", "0.2", "0.4"):
        rows.append(("udd", "false", 1, "1.0", repr(float(t) / 2), t, 0, 0,
                     "subsystem", repr(float(t) ** 2)))
    out = tmp_path / "t.svg"
    code = cli.main(["plot", "--in", str(make_csv(rows)), "--x", "t",
                     "--out", str(out)])
    assert code == 0
    assert out.exists()


def test_plot_constant_axis_exit_1(make_csv, tmp_path, capsys):
    code = cli.main(["plot", "--in", str(make_csv(power_law_rows())),
                     "--x", "tau", "--out", str(tmp_path / "x.svg")])
    assert code == 1
    assert "constant" in capsys.readouterr().err


def test_plot_empty_csv_exit_1(make_csv, tmp_path, capsys):
    code = cli.main(["plot", "--in", str(make_csv([])), "--x", "j",
                     "--out", str(tmp_path / "x.svg")])
    assert code == 1
    assert "empty selection" in capsys.readouterr().err


def test_plot_missing_file_exit_1(tmp_path, capsys):
    code = cli.main(["plot", "--in", str(tmp_path / "nope.csv"), "--x", "j",
                     "--out", str(tmp_path / "x.svg")])
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_bad_arguments_exit_1(tmp_path):
    for argv in ([],
                 ["plot"],
                 ["plot", "--in", "a.csv", "--x", "q", "--out", "b.svg"],
                 ["render", "--in", "a.csv", "--x", "j", "--out", "b.svg"]):
        with pytest.raises(SystemExit) as exc:
            cli.main(argv)
        assert exc.value.code == 1


def test_annotations_match_simulator_slopes(make_csv, tmp_path):
    """The legend slopes must agree with the simulator's own slope table
    to 2 decimals on the same file (shared floor rule and aggregation)."""
    pytest.importorskip("ddrand")
    csv_path = tmp_path / "sweep.csv"
    gen = subprocess.run(
        [sys.executable, "-m", "ddrand.cli", "hahn", "--grid", "1e-3,1e-1,5",
         "--states", "3", "--seed", "0", "--out", str(csv_path)],
        capture_output=True, text=True)
    assert gen.returncode == 0, gen.stderr
    tab = subprocess.run(
        [sys.executable, "-m", "ddrand.cli", "slopes", "--in", str(csv_path)],
        capture_output=True, text=True)
    assert tab.returncode == 0, tab.stderr
    expected = {}
    for line in tab.stdout.splitlines()[1:]:
        parts = line.split()
        if len(parts) >= 2 and parts[0] != "curve" and "n/a" not in line:
            expected[parts[0]] = float(parts[2])

    spec = PlotSpec(str(csv_path), "tau", str(tmp_path / "h.svg"),
                    annotate_slopes=True)
    fig, ax = build_figure(spec)
    try:
        texts = [t.get_text() for t in ax.get_legend().get_texts()]
    finally:
        import matplotlib.pyplot as plt
        plt.close(fig)
    got = {}
    for text in texts:
        m = re.match(r"(\S+) \(slope (-?\d+\.\d{2})\)", text)
        if m:
            got[m.group(1)] = float(m.group(2))
    assert set(got) == set(expected)
    for label, slope in expected.items():
        assert abs(got[label] - slope) < 0.005 + 1e-9, label
