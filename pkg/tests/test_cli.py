import csv
import json
import math
import subprocess
import sys

import mpmath
import pytest

from unibessel.cli import (EXIT_NOT_CONVERGED, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED,
                           TABLE_Z, main)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_json(capsys):
    code, out, _ = run(capsys, "eval", "--family", "J", "--c", "1", "--nu", "0", "--z", "1")
    record = json.loads(out)
    assert code == EXIT_OK
    assert record["value"] == pytest.approx(float(mpmath.besselj(0, 1)), rel=1e-14)
    assert record["converged"] is True
    assert record["family"] == "GenBesselJ"


def test_eval_csv_and_derivative(capsys):
    code, out, _ = run(capsys, "eval", "--family", "I", "--nu", "1", "--z", "2",
                       "--derivative", "1", "--format", "csv")
    rows = list(csv.DictReader(out.splitlines()))
    assert code == EXIT_OK and len(rows) == 1
    expected = float(mpmath.diff(lambda x: mpmath.besseli(1, x), 2))
    assert float(rows[0]["value"]) == pytest.approx(expected, rel=1e-12)


def test_eval_clifford_lambda_alias(capsys):
    code, out, _ = run(capsys, "eval", "--family", "C", "--b", "-1", "--lambda", "1",
                       "--nu", "0", "--z", "0.25")
    assert code == EXIT_OK
    assert json.loads(out)["value"] == pytest.approx(float(mpmath.besseli(0, 1)), rel=1e-13)


def test_eval_output_file(capsys, tmp_path):
    target = tmp_path / "sub" / "v.json"
    code, out, _ = run(capsys, "eval", "--z", "0.5", "--output", str(target))
    assert code == EXIT_OK and out == ""
    assert json.loads(target.read_text())["z"] == 0.5


@pytest.mark.parametrize("argv", [
    ("eval", "--nu", "-1.5", "--z", "1"),
    ("eval", "--family", "X", "--z", "1"),
    ("eval", "--family", "g", "--c", "1.5", "--z", "0"),
    ("eval", "--rho", "-1", "--z", "1"),
    ("eval",),
    ("frobnicate",),
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        raise SystemExit(main(list(argv)))
    assert info.value.code == EXIT_USAGE


def test_eval_not_converged_keeps_partial(capsys):
    code, out, err = run(capsys, "eval", "--b", "0.7", "--rho", "0.3", "--z", "30")
    assert code == EXIT_NOT_CONVERGED
    assert json.loads(out)["converged"] is False
    assert "not converged" in err


def test_verify_subset(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "--only", "Reflect21,Recur31", "--only", "TableRow(IX)",
                     "--output", str(out))
    ids = [r["id"] for r in json.loads(out.read_text())]
    assert code == EXIT_OK
    assert sorted(ids) == ["Recur31", "Reflect21", "TableRow(IX)"]


def test_verify_failure_exit_code(capsys):
    code, _, err = run(capsys, "verify", "--only", "Recur31", "--tolerance", "1e-30")
    assert code == EXIT_VERIFY_FAILED
    assert "FAIL Recur31" in err


def test_verify_env_tolerance(capsys, monkeypatch):
    monkeypatch.setenv("UNIBESSEL_TOL", "1e-30")
    assert run(capsys, "verify", "--only", "Recur32")[0] == EXIT_VERIFY_FAILED
    monkeypatch.setenv("UNIBESSEL_TOL", "abc")
    assert run(capsys, "verify", "--only", "Recur32")[0] == EXIT_USAGE


def test_verify_random_points_are_seeded(capsys):
    argv = ("verify", "--only", "Recur34", "--random-points", "3", "--seed", "11", "--with-seed")
    first = json.loads(run(capsys, *argv)[1])
    second = json.loads(run(capsys, *argv)[1])
    assert first == second
    assert first["seed"] == 11
    assert len(first["reports"][0]["residuals"]) == 3 + 3


def test_verify_unknown_id(capsys):
    assert run(capsys, "verify", "--only", "Nope")[0] == EXIT_USAGE


def test_verify_custom_catalogue(capsys, tmp_path):
    cat = tmp_path / "bad.catalogue"
    cat.write_text("Recur31 | a | d | b=1,c=2,nu=1,rho=0,z=1 | 1e-8\nbroken line\n")
    code, _, err = run(capsys, "verify", "--catalogue", str(cat))
    assert code == EXIT_USAGE
    assert "line 2" in err


def test_table(capsys, tmp_path):
    out = tmp_path / "t.csv"
    code, _, _ = run(capsys, "table", "--nu", "1", "--output", str(out))
    rows = list(csv.DictReader(out.open()))
    assert code == EXIT_OK
    assert {r["row"] for r in rows} >= {"I", "XIII", "XIV"}
    xi = [r for r in rows if r["row"] == "XI" and float(r["z"]) == pytest.approx(math.pi / 2)]
    assert float(xi[0]["right"]) == pytest.approx(math.sqrt(4 / math.pi ** 2), rel=1e-14)
    assert all(float(r["relative_residual"]) <= 1e-8 for r in rows)
    assert len({float(r["z"]) for r in rows}) == len(TABLE_Z)


def test_plotdata_small(capsys, tmp_path):
    code, _, _ = run(capsys, "plotdata", "--outdir", str(tmp_path), "--samples", "5",
                     "--script")
    files = sorted(p.name for p in tmp_path.iterdir())
    assert code == EXIT_OK
    assert files[:18] == [f"figure-{i:02d}.csv" for i in range(1, 19)]
    assert "plot.gp" in files
    rows = list(csv.DictReader((tmp_path / "figure-10.csv").open()))
    assert float(rows[0]["x"]) == 0.01 and len(rows) == 5
    assert run(capsys, "plotdata", "--outdir", str(tmp_path), "--samples", "1")[0] == EXIT_USAGE


def test_window_stdout(capsys):
    code, out, _ = run(capsys, "window", "--N", "5", "--alpha", "0")
    assert code == EXIT_OK
    assert out.split() == ["w", "1", "1", "1", "1", "1"]


def test_window_design(capsys, tmp_path):
    code, _, _ = run(capsys, "window", "--N", "31", "--alpha", "2", "--c", "2",
                     "--design-lowpass", "0.2", "--response", "64", "--outdir", str(tmp_path))
    assert code == EXIT_OK
    taps = [float(r["tap"]) for r in csv.DictReader((tmp_path / "taps.csv").open())]
    resp = list(csv.DictReader((tmp_path / "response.csv").open()))
    assert len(taps) == 31 and math.fsum(taps) == pytest.approx(1.0)
    assert len(resp) == 64 and float(resp[0]["magnitude_db"]) == pytest.approx(0, abs=1e-9)


def test_window_even_length_lowpass_rejected(capsys, tmp_path):
    code, _, _ = run(capsys, "window", "--N", "30", "--alpha", "2", "--design-lowpass", "0.2",
                     "--outdir", str(tmp_path))
    assert code == EXIT_USAGE


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "unibessel", "eval", "--z", "0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == 1.0
