import csv
import io
import json
import subprocess
import sys

import pytest

from eulersums import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def strip_seconds(text):
    rows = [json.loads(line) for line in text.splitlines()]
    for r in rows:
        r.pop("seconds")
    return rows


def test_verify_one(capsys):
    code, out, _ = run(capsys, "verify", "T1.k4", "--format", "json")
    row = json.loads(out)
    assert code == 0
    assert list(row) == list(cli.FIELDS)
    assert row["rhs"] == "67/8*zeta(3) - 2*pi*Cl2(1/2*pi)"
    assert row["pass"] is True


def test_verify_text_and_csv(capsys):
    code, out, _ = run(capsys, "verify", "P3")
    assert code == 0 and "PASS" in out and out.startswith("P3")
    code, out, _ = run(capsys, "verify", "P3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == list(cli.FIELDS) and rows[0]["rhs"] == "1"


def test_verify_failure_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "T1.k6", "--tol", "1e-30", "--format", "json")
    assert code == 1 and json.loads(out)["pass"] is False


def test_theorem1(capsys):
    code, out, _ = run(capsys, "theorem1", "--k", "1")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "2*zeta(3)" and lines[1].startswith("2.404113806")
    code, out, _ = run(capsys, "theorem1", "--k", "2", "--alternating")
    assert out.splitlines()[0] == "23/16*zeta(3) - pi*Cl2(1/2*pi)"


def test_constants(capsys):
    code, out, _ = run(capsys, "constants")
    assert code == 0
    assert "0.577215664901533" in out and "printed 0.577216" in out
    assert out.count(" ok") == 5


def test_list_and_show(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0 and len(out.splitlines()) == 31
    code, out, _ = run(capsys, "show", "G1")
    assert code == 0 and "-8/3*zeta(3) + 4/3*pi*Cl2(1/3*pi)" in out
    code, out, _ = run(capsys, "show", "theorem.k5.alt")
    assert code == 0 and "(-1)^n" in out


@pytest.mark.parametrize("name", sorted(cli.ORACLE_CHECKS))
def test_oracles(capsys, name):
    code, out, _ = run(capsys, "oracle", name)
    assert code == 0 and json.loads(out)["pass"] is True


def test_mellin(capsys):
    assert run(capsys, "mellin", "forward", "--k", "3", "--z", "0.5")[0] == 0
    assert run(capsys, "mellin", "inverse", "--k", "2", "--x", "10")[0] == 0
    code, out, _ = run(capsys, "mellin", "factorization", "--A1", "1j", "--A2", "1j", "--A3", "1j",
                       "--p", "3", "--c1", "0.5", "--c2", "0.5")
    assert code == 0 and json.loads(out)["abs_diff"] < 1e-3


@pytest.mark.parametrize("argv", [
    ["verify", "ZZ"],
    ["verify"],
    ["bogus"],
    ["verify", "T1.k1", "--nope"],
    ["oracle", "missing"],
    ["theorem1", "--k", "0"],
    ["mellin", "forward", "--k", "1", "--z", "-1"],
    ["mellin", "inverse", "--k", "0", "--x", "2", "--T", "5"],
    ["mellin", "factorization", "--A1", "1", "--A2", "1j", "--A3", "1j", "--p", "3", "--c1", ".5", "--c2", ".5"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "usage" in err


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# tolerances\nformat = json\ntol.T1.k6 = 1e-30\n")
    code, out, _ = run(capsys, "verify", "T1.k6", "--config", str(cfg))
    assert code == 1 and json.loads(out)["tol"] == 1e-30
    code, out, _ = run(capsys, "verify", "T1.k6", "--config", str(cfg), "--tol", "1e-9")
    assert code == 0 and json.loads(out)["tol"] == 1e-9
    bad = tmp_path / "bad.cfg"
    bad.write_text("cutoff_typo = 3\n")
    assert run(capsys, "verify", "T1.k1", "--config", str(bad))[0] == 2


def test_verify_all_json_deterministic(capsys):
    code, first, _ = run(capsys, "verify", "--all", "--format", "json", "--jobs", "1")
    assert code == 0
    rows = strip_seconds(first)
    assert len(rows) == 47 and all(r["pass"] for r in rows)
    code, second, _ = run(capsys, "verify", "--all", "--format", "json", "--jobs", "2")
    assert code == 0 and strip_seconds(second) == rows


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "eulersums", "theorem1", "--k", "3"],
                       capture_output=True, text=True, check=True)
    assert p.stdout.splitlines()[0] == "5*zeta(3) - 2/3*pi*Cl2(1/3*pi)"
