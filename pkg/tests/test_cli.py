import csv
import io
import json
import math

import pytest

from finfourier import cli, oracle
from finfourier.verification import SuiteResult


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_transform_all_legendre_methods(capsys):
    code, out, _ = run(capsys, "transform", "--family", "legendre", "--n", "1",
                       "--lambda", "3.14159265358979", "--method", "all", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "finfourier/1"
    rows = doc["rows"]
    assert [r["method"] for r in rows] == ["L-coeff", "L-bessel", "L-hyp", "L-closed"]
    ims = [r["im"] for r in rows]
    assert all(abs(v - 0.636620) < 1e-6 for v in ims)
    assert max(ims) - min(ims) < 1e-10
    assert all(r["re"] == 0 for r in rows)


def test_jacobi_lambda_zero_row(capsys):
    code, out, _ = run(capsys, "transform", "--family", "jacobi", "--alpha", "1", "--beta", "0",
                       "--n", "1", "--lambda", "0", "--format", "json")
    row = json.loads(out)["rows"][0]
    assert code == 0
    assert (row["re"], row["im"]) == (1, 0)
    assert row["method"] == "J-lambda0"
    assert "paper-formula-discrepancy" in row["flags"].split(";")


def test_table_row_count_and_csv_round_trip(capsys):
    code, out, _ = run(capsys, "table", "--family", "legendre", "--n", "0..2",
                       "--lambda-grid", "0:4:3", "--method", "all", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert out.splitlines()[0] == ",".join(cli.TABLE_FIELDS)
    assert len(rows) == 9 * 4
    zero_rows = [r for r in rows if r["n"] == "2" and float(r["lambda"]) == 0.0]
    assert all(float(r["re"]) == 0.0 and float(r["im"]) == 0.0 for r in zero_rows)
    # values re-parse to the numbers that were printed
    for r in rows:
        for key in ("re", "im", "est_rel_err", "lambda"):
            assert cli.fmt(float(r[key])) == r[key] or float(cli.fmt(float(r[key]))) == float(r[key])


def test_legendre_degree_four_at_zero(capsys):
    code, out, _ = run(capsys, "table", "--family", "legendre", "--n", "4", "--lambda", "0",
                       "--format", "json")
    row = json.loads(out)["rows"][0]
    assert code == 0 and row["re"] == 0 and row["im"] == 0


def test_seventeen_significant_digits(capsys):
    _, out, _ = run(capsys, "transform", "--family", "chebyshev-u", "--n", "3", "--lambda", "2.5",
                    "--format", "csv")
    row = next(csv.DictReader(io.StringIO(out)))
    value = float(row["im"])
    assert row["im"] == f"{value:.17g}"
    assert len(row["im"].lstrip("-").replace(".", "").lstrip("0")) == 17


def test_output_is_deterministic(capsys):
    argv = ("table", "--family", "gegenbauer", "--nu", "2.5", "--n", "0..3",
            "--lambda-grid", "-5:5:4", "--format", "text")
    first = run(capsys, *argv)[1]
    assert run(capsys, *argv)[1] == first


def test_text_output_has_header(capsys):
    _, out, _ = run(capsys, "transform", "--family", "chebyshev-t", "--n", "2", "--lambda", "1.5")
    assert out.split()[:3] == ["family", "n", "params"]


@pytest.mark.parametrize("argv", [
    ("transform", "--family", "hermite", "--n", "1", "--lambda", "1"),
    ("transform", "--family", "jacobi", "--n", "1", "--lambda", "1"),
    ("transform", "--family", "gegenbauer", "--n", "1", "--lambda", "1"),
    ("transform", "--family", "legendre", "--n", "1", "--lambda", "1", "--tol", "1"),
    ("transform", "--family", "legendre", "--n", "1", "--lambda", "1", "--method", "J-Ek"),
    ("transform", "--family", "legendre", "--n", "1", "--lambda", "1", "--method", "nope"),
    ("transform", "--family", "legendre", "--n", "1,2", "--lambda", "1"),
    ("transform", "--family", "legendre", "--n", "1", "--lambda", "inf"),
    ("table", "--family", "legendre", "--n", "1", "--lambda-grid", "3:1:4"),
    ("table", "--family", "legendre", "--n", "1", "--lambda-grid", "0:1:1"),
    ("transform", "--family", "jacobi", "--alpha", "-1", "--beta", "0", "--n", "1",
     "--lambda", "1"),
    ("parseval", "--n", "1", "--jmax", "0"),
    (),
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_degree_cap_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("FINFOURIER_MAX_DEGREE", "10")
    code, _, err = run(capsys, "transform", "--family", "legendre", "--n", "11", "--lambda", "1")
    assert code == 2 and "cap" in err


def test_numerical_failure_exit_3(capsys, monkeypatch):
    monkeypatch.setattr(oracle, "EVALUATION_BUDGET", 100)
    code, _, err = run(capsys, "transform", "--family", "legendre", "--n", "30", "--lambda", "50",
                       "--method", "oracle")
    assert code == 3 and "numerical failure" in err


def test_verify_pass_and_fail(capsys, monkeypatch):
    code, out, _ = run(capsys, "verify", "--suite", "bessel-recurrence",
                       "--suite", "binomial-identity", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] is True
    assert [s["suite"] for s in doc["suites"]] == ["bessel-recurrence", "binomial-identity"]

    def broken(**_):
        return SuiteResult("binomial-identity", False, 1.0, 0.0, 1)

    monkeypatch.setitem(cli.run_suites.__globals__["SUITES"], "binomial-identity", broken)
    code, out, err = run(capsys, "verify", "--suite", "binomial-identity")
    assert code == 1 and "FAIL" in out and "binomial-identity" in err


def test_verify_tolerance_override(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "bessel-recurrence", "--tol", "1e-8",
                       "--format", "csv")
    row = next(csv.DictReader(io.StringIO(out)))
    assert code == 0 and float(row["tolerance"]) == 1e-8


def test_parseval_command(capsys):
    code, out, _ = run(capsys, "parseval", "--family", "legendre", "--n", "2", "--jmax", "64",
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["summary"]["target"] == pytest.approx(0.4)
    assert [r["J"] for r in doc["octaves"]] == [1, 2, 4, 8, 16, 32, 64]
    assert math.isclose(doc["octaves"][-1]["partial_sum"], doc["summary"]["partial_sum"])


def test_module_entry_point():
    import subprocess
    import sys

    p = subprocess.run([sys.executable, "-m", "finfourier", "transform", "--family", "legendre",
                        "--n", "0", "--lambda", "0", "--format", "csv"],
                       capture_output=True, text=True)
    assert p.returncode == 0
    assert p.stdout.splitlines()[1].startswith("legendre,0,,0,small-lambda-series,2,0,")
