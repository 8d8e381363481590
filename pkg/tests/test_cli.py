import subprocess
import sys

import pytest

from pcdde.cli import main
from pcdde.scenario import ScenarioError, load, loads

ROW1_I = ["--a1", "0.5", "--a2", "0.1", "--a3", "-0.1", "--p1", "3", "--p2", "1", "--p3", "0.5"]
ROW1_II = ["--a1", "0.5", "--a2", "0.1", "--a3", "-0.1", "--p1", "0.5", "--p2", "1", "--p3", "0.5"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_fixed_point_type1(capsys):
    code, out, _ = run(capsys, "fixed-point", *ROW1_I, "--variant", "I")
    assert code == 0
    assert "h_star: 0.28125" in out
    assert "stability: asymptotically-stable" in out
    assert "valid: yes" in out


def test_fixed_point_type2(capsys):
    code, out, _ = run(capsys, "fixed-point", *ROW1_II, "--variant", "II")
    assert code == 0
    fields = dict(ln.split(": ", 1) for ln in out.splitlines() if ": " in ln)
    assert float(fields["h_star"]) == pytest.approx(0.1875, rel=1e-14)
    assert float(fields["period"]) == 4.0


def test_fixed_point_degenerate(capsys):
    code, _, err = run(capsys, "fixed-point", "--a1", "1", "--a2", "1", "--a3", "-1",
                       "--p1", "3", "--p2", "1", "--p3", "1")
    assert code == 1
    assert "degenerate" in err


def test_fixed_point_invalid_shape_exits_1(capsys):
    code, out, _ = run(capsys, "fixed-point", *ROW1_II, "--variant", "I")
    assert code == 1
    assert "valid: no" in out


def test_missing_params_is_usage_error(capsys):
    code, _, err = run(capsys, "fixed-point", "--a1", "1")
    assert code == 2
    assert "missing" in err


def test_simulate_exact(capsys, tmp_path):
    traj = tmp_path / "traj.csv"
    ev = tmp_path / "events.txt"
    code, out, _ = run(capsys, "simulate", *ROW1_I, "--history", "0.28125", "-o", str(traj),
                       "--events", str(ev))
    assert code == 0
    assert "zeros: 0.5625 2.5625 5.0625 7.0625" in out
    assert "verdict: period-T" in out
    assert traj.read_text().startswith("t,x,slope,segment_index\n")
    assert "kind=delayed-zero-crossing" in ev.read_text()


def test_simulate_zero_history(capsys):
    code, out, _ = run(capsys, "simulate", *ROW1_I, "--history", "0")
    assert code == 0
    assert "verdict: degenerate" in out


def test_simulate_smoothed(capsys):
    code, out, _ = run(capsys, "simulate", *ROW1_I, "--history", "0.28125", "--solver",
                       "numeric", "--delta", "0.01", "--step", "0.001")
    assert code == 0
    assert "verdict: period-T" in out


def test_simulate_needs_history(capsys):
    code, _, err = run(capsys, "simulate", *ROW1_I)
    assert code == 2
    assert "history" in err


def test_simulate_non_transversal_history(capsys):
    code, _, err = run(capsys, "simulate", *ROW1_I, "--history", "-1:1, -0.5:0, 0:1")
    assert code == 1
    assert "transversal" in err


def test_verify_tables(capsys, tmp_path):
    report = tmp_path / "report.csv"
    code, out, _ = run(capsys, "verify-tables", "--which", "I", "-o", str(report))
    assert code == 0
    assert "passed: 20" in out
    assert len(report.read_text().splitlines()) == 21


def test_sweep_a2(capsys, tmp_path):
    grid = tmp_path / "grid.csv"
    code, out, _ = run(capsys, "sweep", *ROW1_I, "--grid", "a2=0.05:0.45:10", "-o", str(grid))
    assert code == 0
    rows = grid.read_text().splitlines()
    assert rows[0].endswith("classification")
    assert len(rows) == 11
    kinds = [r.rsplit(",", 1)[1] for r in rows[1:]]
    assert set(kinds) <= {"stable-valid", "invalid-shape"}
    assert "stable-valid=" in out


def test_sweep_degenerate_and_invalid(capsys):
    code, out, _ = run(capsys, "sweep", *ROW1_I, "--grid", "a2=0.5:0.5:1",
                       "--grid", "p1=1.5:1.5:1")
    assert code == 0
    assert out.strip().endswith("degenerate")
    code, out, _ = run(capsys, "sweep", *ROW1_I, "--grid", "p1=1.5:1.9:3")
    assert out.count("invalid-shape") == 3


def test_sweep_empty_grid(capsys):
    code, _, err = run(capsys, "sweep", *ROW1_I)
    assert code == 2
    assert "empty grid" in err
    code, _, _ = run(capsys, "sweep", *ROW1_I, "--grid", "a2=0.1:0.2:0")
    assert code == 2


def test_smooth_compare(capsys, tmp_path):
    out_csv = tmp_path / "smooth.csv"
    code, out, _ = run(capsys, "smooth-compare", *ROW1_I, "--deltas", "0,0.1", "-o", str(out_csv))
    assert code == 0
    assert out.startswith("h_star: 0.28125")
    assert out_csv.read_text().startswith("delta,h_hat,h_raw,err\n")


def test_export_stdout_and_stride(capsys):
    code, out, _ = run(capsys, "export", *ROW1_I, "--history", "0.3", "--solver", "numeric",
                       "--delta", "0.1", "--step", "0.01", "--t-end", "1", "--stride", "10")
    assert code == 0
    assert out.splitlines()[0] == "t,x"
    assert len(out.splitlines()) == 12


def test_scenario_file_and_dump_roundtrip(capsys, tmp_path):
    src = tmp_path / "in.scn"
    src.write_text("# table row\na1 = 0.5\na2 = 0.1\na3_signed = -0.1\n"
                   "p1 = 3\np2 = 1\np3 = 0.5\nhistory = -1:0.4, -0.5:-0.2, 0:0.3\n")
    dumped = tmp_path / "dump.scn"
    code, _, _ = run(capsys, "simulate", "--scenario", str(src), "--delta", "0.05",
                     "--dump-scenario", str(dumped))
    assert code == 0
    again = load(str(dumped))
    assert again == loads(dumped.read_text())
    assert again.delta == 0.05
    assert again.history.knots == ((-1.0, 0.4), (-0.5, -0.2), (0.0, 0.3))
    assert loads(again.dumps()) == again


def test_scenario_unknown_key(capsys, tmp_path):
    src = tmp_path / "bad.scn"
    src.write_text("a1 = 0.5\nalpha = 3\n")
    code, _, err = run(capsys, "fixed-point", "--scenario", str(src))
    assert code == 2
    assert "alpha" in err
    with pytest.raises(ScenarioError):
        loads("a1 = 1\na1 = 2\n")


def test_outputs_are_byte_identical(capsys, tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        run(capsys, "simulate", *ROW1_I, "--history", "0.4", "-o", str(p))
    assert paths[0].read_bytes() == paths[1].read_bytes()
    grids = [tmp_path / "g1.csv", tmp_path / "g2.csv"]
    for g in grids:
        run(capsys, "sweep", *ROW1_I, "--grid", "a1=0.3:0.8:4", "--grid", "p2=0.5:1.5:3",
            "-o", str(g))
    assert grids[0].read_bytes() == grids[1].read_bytes()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pcdde", "fixed-point", *ROW1_I,
                           "--variant", "I"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "h_star: 0.28125" in proc.stdout


def test_bad_subcommand_exits_2():
    proc = subprocess.run([sys.executable, "-m", "pcdde", "nope"], capture_output=True)
    assert proc.returncode == 2
