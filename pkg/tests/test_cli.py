import subprocess
import sys

import pytest

from fracrm import cli
from fracrm.output import csv_text, fmt_float, parse_csv, parse_solution_dump


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_fmt_float():
    assert fmt_float(0.0) == "0"
    assert fmt_float(1.3) == "1.3"
    assert fmt_float(2.0) == "2"
    assert float(fmt_float(0.1 + 0.2)) == 0.1 + 0.2


def test_csv_round_trip():
    text = csv_text(["t", "x"], [[0.0, 0.5], [1.3, 1.0 / 3.0]])
    header, rows = parse_csv(text)
    assert header == ["t", "x"]
    assert rows == [[0.0, 1.3], [0.5, 1.0 / 3.0]]
    with pytest.raises(ValueError):
        csv_text(["t", "x"], [[0.0], [1.0, 2.0]])


def test_series_order_zero(capsys):
    code, out, _ = run(capsys, "series", "--order", "0")
    assert code == 0
    assert "## x 0\n0 0 1.3000000000000000e+00\n" in out
    assert "## y 0\n0 0 5.9999999999999998e-01\n" in out
    terms = [line for line in out.splitlines() if line and not line.startswith("#")]
    assert len(terms) == 2


def test_series_fractional_order_three(capsys):
    code, out, _ = run(capsys, "series", "--m", "1/2", "--n", "1/2")
    assert code == 0
    groups, params = parse_solution_dump(out)
    assert params["m"] == "0.5" and params["order"] == "3"
    assert sorted(groups["x"][3]) == [(1, 2), (2, 1), (3, 0)]
    assert sorted(groups["y"][3]) == [(0, 3), (1, 2), (2, 1)]


def test_trajectory_first_row(capsys):
    code, out, _ = run(capsys, "trajectory", "--t-max", "1", "--points", "11")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "t,x,y"
    assert lines[1] == "0,1.3,0.6"
    assert len(lines) == 12


@pytest.mark.parametrize("method", ["fabm", "rk4"])
def test_trajectory_oracles_start_at_initial_values(capsys, method):
    code, out, _ = run(capsys, "trajectory", "--method", method, "--t-max", "1", "--points", "5")
    assert code == 0
    _, rows = parse_csv(out)
    assert rows[0] == [0.0, 1.3, 0.6]
    assert [r[0] for r in rows] == [0.0, 0.25, 0.5, 0.75, 1.0]


def test_rk4_with_fractional_order_is_an_error(capsys):
    code, _, err = run(capsys, "trajectory", "--method", "rk4", "--m", "1/2")
    assert code == 2
    assert "rk4 requires m = n = 1" in err


def test_series_and_fabm_agree_early(capsys):
    common = ("--m", "1/2", "--n", "1/2", "--t-max", "0.5", "--points", "3")
    _, hpm_out, _ = run(capsys, "trajectory", *common)
    _, fabm_out, _ = run(capsys, "trajectory", "--method", "fabm", *common)
    _, hpm_rows = parse_csv(hpm_out)
    _, fabm_rows = parse_csv(fabm_out)
    row_h = next(r for r in hpm_rows if r[0] == 0.25)
    row_f = next(r for r in fabm_rows if r[0] == 0.25)
    assert abs(row_h[1] - row_f[1]) <= 1e-3 and abs(row_h[2] - row_f[2]) <= 1e-3


def test_output_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert run(capsys, "trajectory", "--m", "2/3", "--out", str(path))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "model.cfg"
    cfg.write_text("# experiment\nx0 = 2.0\ny0 = 0.5\norder = 0\n")
    _, out, _ = run(capsys, "trajectory", "--config", str(cfg), "--y0", "0.25", "--points", "2")
    _, rows = parse_csv(out)
    assert rows[0] == [0.0, 2.0, 0.25]
    assert rows[1][1:] == [2.0, 0.25]  # order 0 from the file


def test_config_errors(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("nonsense = 1\n")
    code, _, err = run(capsys, "series", "--config", str(cfg))
    assert code == 2 and "unknown key" in err
    code, _, err = run(capsys, "series", "--config", str(tmp_path / "missing.cfg"))
    assert code == 2


def test_invalid_parameters_are_reported(capsys):
    code, _, err = run(capsys, "series", "--m", "0")
    assert code == 2 and "m must lie" in err


def test_fraction_arguments(capsys):
    assert cli.number("1/3") == pytest.approx(1 / 3)
    with pytest.raises(SystemExit):
        cli.main(["series", "--m", "one"])
    capsys.readouterr()


def test_figures_single_bundle(capsys, tmp_path):
    out = tmp_path / "figs"
    code, text, _ = run(capsys, "figures", "--figure", "1i", "--no-diagnostics", "--out", str(out), "--points", "11")
    assert code == 0
    names = sorted(p.name for p in out.glob("*.csv"))
    assert names == ["fig1i_m1.csv", "fig1i_m1_2.csv", "fig1i_m1_3.csv", "fig1i_m2_3.csv"]
    assert "wrote fig1i_m1_3.csv" in text
    header, rows = parse_csv((out / "fig1i_m1_2.csv").read_text())
    assert header == ["t", "x"] and rows[0] == [0.0, 1.3]


def test_validate_negative_control(capsys):
    code, out, _ = run(capsys, "validate", "--corrupt-gamma")
    assert code == 1
    assert "closed-form(0..2): FAIL" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fracrm", "series", "--order", "1"],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout.startswith("# fracrm HPM series dump")
