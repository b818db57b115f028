import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from liouvillian_ep.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("model,variant,fname", [
    ("CL", "primary", "cl_primary.txt"), ("mKL", "primary", "mkl_primary.txt"),
    ("CL", "alternative", "cl_alternative.txt"), ("mKL", "alternative", "mkl_alternative.txt"),
])
def test_chain_tables_match_goldens(model, variant, fname, capsys):
    code, out, _ = run(["chains", "--model", model, "--variant", variant, "--n-max", "3"], capsys)
    assert code == 0
    assert out == (GOLDEN / fname).read_text()


def test_chains_json_and_csv(capsys):
    code, out, _ = run(["chains", "--model", "HPZ", "--n-max", "2", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["lambda"] == {"0": "0", "1": "1", "2": "2"}
    code, out, _ = run(["chains", "--model", "CL", "--n-max", "1", "--format", "csv"], capsys)
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["N", "z", "degQ", "degS", "coeff"]
    assert ["1", "1", "0", "1", "-1"] in rows


def test_spectrum_csv(capsys):
    code, out, _ = run(["spectrum", "--m-max", "1", "--omegas", "1,0.5i"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 2 * 4
    r = next(r for r in rows if r["omega"] == "1" and r["m"] == "1" and r["n"] == "1" and r["sign"] == "+")
    assert (float(r["re"]), float(r["im"])) == (0.5, 1.0)
    r = next(r for r in rows if r["omega"] == "0.5i" and r["n"] == "1" and r["sign"] == "-")
    assert (float(r["re"]), float(r["im"])) == (1.0, 0.0)


def test_verify_passes(capsys):
    code, out, _ = run(["verify", "--n-max", "3"], capsys)
    assert code == 0 and out.strip().endswith("ALL PASS")


def test_injected_fault_is_reported(capsys):
    code, out, _ = run(["verify", "--suite", "chains", "--n-max", "3", "--inject-fault"], capsys)
    assert code == 1
    assert "FAIL" in out and "VERIFICATION FAILED" in out


@pytest.mark.parametrize("argv", [
    ["chains", "--n-max", "-1"],
    ["chains", "--model", "HPZ", "--variant", "alternative"],
    ["chains", "--model", "XYZ"],
    ["evolve", "--grid", "1:0:5"],
    ["spectrum", "--omegas", "abc"],
    ["frobnicate"],
])
def test_usage_errors(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_evolve_is_deterministic_and_writes_file(tmp_path, capsys):
    args = ["evolve", "--times", "0,3", "--grid", "-1:1:5"]
    a = run(args, capsys)[1]
    b = run(args, capsys)[1]
    assert a == b
    target = tmp_path / "fig.csv"
    assert main(["--out", str(target)] + args) == 0
    assert target.read_text() == a
    rows = list(csv.DictReader(io.StringIO(a)))
    assert len(rows) == 3 * 2 * 2 * 5


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "liouvillian_ep", "chains", "--n-max", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("[N=0 z=0]")
