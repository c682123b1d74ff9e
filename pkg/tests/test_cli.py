from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from srwidth.cli import OutputFormat, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(scope="module")
def table_csv():
    buf = io.StringIO()
    old, sys.stdout = sys.stdout, buf
    try:
        assert main(["table", "--format", "csv"]) == 0
    finally:
        sys.stdout = old
    return buf.getvalue()


def test_table_csv_layout(table_csv):
    rows = list(csv.reader(io.StringIO(table_csv)))
    assert rows[0] == ["quantity", "s0", "s2", "s3", "s-1", "s+1"]
    assert len(rows) == 28
    b = next(r for r in rows if r[0] == "b")
    assert b[1:] == ["1.48780", "1.56103", "1.02476", "1.80245", "1.39681"]
    assert "\r" not in table_csv
    assert not any(line.endswith(",") for line in table_csv.splitlines())


def test_csv_round_trip(table_csv):
    fmt = OutputFormat("csv", 6)
    rows = list(csv.reader(io.StringIO(table_csv)))
    rebuilt = ",".join(rows[0]) + "\n"
    for row in rows[1:]:
        rebuilt += ",".join([row[0]] + [fmt.text(float(v)) for v in row[1:]]) + "\n"
    assert rebuilt == table_csv


def test_table_json_numbers(capsys):
    code, out, _ = run(capsys, "table", "--format", "json", "--precision", "8")
    assert code == 0
    data = json.loads(out)
    assert list(data) == ["s0", "s2", "s3", "s-1", "s+1"]
    assert isinstance(data["s0"]["b"], float)
    assert data["s0"]["b"] == pytest.approx(1.4878, rel=1e-4)


def test_precision_is_stable(capsys):
    first = run(capsys, "width", "--component", "pi", "--precision", "8")
    second = run(capsys, "width", "--component", "pi", "--precision", "8")
    assert first == second
    assert first[1].splitlines()[1].startswith("s3,0.010850")


def test_spectrum_grid(capsys):
    code, out, _ = run(capsys, "spectrum", "--y-max", "3", "--step", "0.005")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["y", "s0", "s2", "s3", "s-1", "s+1"]
    assert len(rows) - 1 == 601
    assert all(float(v) == 0.0 for v in rows[1])
    assert float(rows[-1][0]) == pytest.approx(3.0)


def test_spectrum_single_component(capsys):
    code, out, _ = run(capsys, "spectrum", "--y-min", "0.285812", "--y-max", "0.3",
                       "--step", "1", "--component", "0")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["y", "s0"]
    assert rows[1][1] == "0.284696"


def test_half_width_json(capsys):
    code, out, _ = run(capsys, "width", "--mode", "half", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["s0"]["d"] == pytest.approx(2.19781, rel=1e-5)


def test_exact_summary(capsys, tmp_path):
    target = tmp_path / "exact.csv"
    code, out, _ = run(capsys, "exact", "--beta", "0.866025403784", "--what", "summary",
                       "--out", str(target))
    assert code == 0 and out == ""
    rows = list(csv.reader(target.open()))
    s0 = next(r for r in rows if r[0] == "s0")
    assert (s0[3], s0[4]) == ("3", "13")


def test_exact_harmonics_json(capsys):
    code, out, _ = run(capsys, "exact", "--beta", "0.5", "--nu-max", "10", "--format", "json")
    data = json.loads(out)
    assert data["nu"] == list(range(1, 11))
    assert len(data["s3"]) == 10


@pytest.mark.parametrize("argv", [
    ["spectrum", "--y-min", "2", "--y-max", "1"],
    ["spectrum", "--step", "0"],
    ["table", "--precision", "3"],
    ["exact", "--beta", "1.2"],
    ["exact", "--beta", "0.5", "--nu-max", "0"],
    ["width", "--component", "s9"],
    ["nonsense"],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_numerical_failure_exit_1(capsys):
    code, _, err = run(capsys, "exact", "--beta", "0.95", "--nu-max", "20", "--what", "summary")
    assert code == 1
    assert "error" in err


def test_verify_fast_deterministic():
    cmd = [sys.executable, "-m", "srwidth", "verify", "--level", "fast"]
    first = subprocess.run(cmd, capture_output=True, text=True, check=False)
    second = subprocess.run(cmd, capture_output=True, text=True, check=False)
    assert first.returncode == 0, first.stderr
    assert first.stdout == second.stdout
    assert "exact total fractions,0.00000,1.00000e-12,true" in first.stdout


def test_output_format_validation():
    with pytest.raises(ValueError):
        OutputFormat("xml")
    with pytest.raises(ValueError):
        OutputFormat("csv", 16)
    assert OutputFormat("csv", 4).text(1234567.0) == "1.235e+06"
