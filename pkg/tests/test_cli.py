import csv
import io
import json
import os
import subprocess
import sys

import pytest

from shapovalov.cli import EXIT_CONFIG, EXIT_FAIL, EXIT_OK, EXIT_RESOURCE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows_of(out):
    return json.loads(out)["rows"]


def test_dims_free_algebra_A1(capsys):
    code, out, _ = run(capsys, "dims", "--cartan", "A1", "--l", "5", "--algebra", "f", "--depth-max", "6")
    assert code == EXIT_OK
    assert [r["dim_quotient"] for r in rows_of(out)] == [1, 1, 1, 1, 1, 0, 0]


def test_dims_irreducible_A1(capsys):
    code, out, _ = run(capsys, "dims", "--cartan", "A1", "--module", "irreducible", "--weight", "2", "--depth-max", "5")
    assert code == EXIT_OK
    assert [r["dim_quotient"] for r in rows_of(out)] == [1, 1, 1, 0, 0, 0]


def test_depth_zero_gives_one_row(capsys):
    code, out, _ = run(capsys, "dims", "--cartan", "A2", "--depth-max", "0")
    assert code == EXIT_OK
    assert len(rows_of(out)) == 1 and rows_of(out)[0]["nu"] == [0, 0]


def test_json_is_canonical(capsys):
    _, out, _ = run(capsys, "shapovalov", "--cartan", "A2", "--weight", "-2,-3", "--depth-max", "2")
    assert json.dumps(json.loads(out), indent=2) + "\n" == out
    meta = json.loads(out)["meta"]
    assert meta["weights"] == [[-2, -3]] and "jobs" not in meta and "format" not in meta


def test_output_independent_of_jobs(capsys):
    argv = ("shapovalov", "--cartan", "A2", "--generic", "--depth-max", "3")
    outs = [run(capsys, *argv, "--jobs", j)[1] for j in ("1", "2")]
    assert outs[0] == outs[1]


def test_gram_csv_and_table(capsys):
    code, out, _ = run(capsys, "gram", "--cartan", "A2", "--nu", "1,1", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["value"] for r in rows] == ["1", "-z^3 - z^2 - z - 1", "-z^3 - z^2 - z - 1", "1"]
    code, out, _ = run(capsys, "gram", "--cartan", "A2", "--nu", "1,1", "--format", "table")
    assert code == EXIT_OK
    assert out.splitlines()[0].split() == ["nu", "row", "col", "x", "y", "value"]


def test_hochschild_degree_zero(capsys):
    code, out, _ = run(capsys, "hochschild", "--cartan", "A1", "--weight", "2", "--depth-max", "1")
    assert code == EXIT_OK
    assert rows_of(out)[0] == {"r": 0, "nu": [0], "dim_C": 1, "dim_H": 1}


@pytest.mark.parametrize(
    "argv",
    [
        ("dims", "--l", "4"),
        ("dims", "--cartan", "Q7"),
        ("gram", "--cartan", "A2"),
        ("hochschild", "--generic", "--module", "irreducible", "--weight", "1"),
        ("shapovalov", "--cartan", "A2", "--weight", "1"),
    ],
)
def test_config_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_CONFIG and "config error" in err


def test_unknown_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["dims", "--bogus"])
    assert exc.value.code == EXIT_CONFIG


def test_resource_guard_exits_3(capsys):
    assert run(capsys, "dims", "--cartan", "A2", "--depth-max", "8", "--max-dim", "10")[0] == EXIT_RESOURCE
    weights = [x for _ in range(5) for x in ("--weight", "1")]
    assert run(capsys, "hochschild", "--cartan", "A1", *weights)[0] == EXIT_RESOURCE


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "all", "--cartan", "A2", "--weight", "1,0", "--depth-max", "2")
    assert code == EXIT_OK
    assert all(r["pass"] for r in rows_of(out))


def test_verify_negative_control_exits_1():
    env = dict(os.environ, SHAPOVALOV_CORRUPT_COACTION_SIGN="1")
    argv = ["verify", "coaction", "--cartan", "A1", "--weight", "1", "--depth-max", "3"]
    proc = subprocess.run(
        [sys.executable, "-m", "shapovalov.cli", *argv], env=env, capture_output=True, text=True
    )
    assert proc.returncode == EXIT_FAIL
    rows = json.loads(proc.stdout)["rows"]
    assert any(not r["pass"] and "counterexample" in r for r in rows)
    assert "failed" in proc.stderr
