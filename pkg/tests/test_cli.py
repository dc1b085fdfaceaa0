import json
import subprocess
import sys

import pytest

from constnormal.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_member(capsys):
    code, out, _ = run(capsys, "member", "--x", "0,1,0,1,0")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1
    assert doc["verdict"] == "ParaboloidInterior" and doc["P"] == "1"


def test_mul_exact_and_double(capsys):
    _, out, _ = run(capsys, "mul", "--x", "1,0,0,0,0", "--y", "0,1,0,0,0")
    assert json.loads(out)["product"] == ["1", "1", "-1", "1/2", "1/2"]
    _, out, _ = run(capsys, "mul", "--x", "1,0,0,0,0", "--y", "0,1,0,0,0", "--double")
    assert json.loads(out)["product"] == [1.0, 1.0, -1.0, 0.5, 0.5]
    _, out, _ = run(capsys, "mul", "--x", "1,0,0,0,0", "--y", "0,1,0,0,0", "--coords", "first")
    assert json.loads(out)["product"] == ["1", "1", "-1/2", "1/12", "-1/12"]


def test_coords_flow_wedge(capsys):
    _, out, _ = run(capsys, "coords", "--x", "1,2,0,0,0", "--to", "first")
    assert json.loads(out)["result"] == ["1", "2", "1", "1/6", "-1/3"]
    _, out, _ = run(capsys, "flow", "--a", "1", "--t", "1")
    assert json.loads(out)["end"] == ["1", "1", "-1/2", "1/6", "1/3"]
    _, out, _ = run(capsys, "wedge", "--a", "0,2,-1,1/2,0")
    doc = json.loads(out)
    assert doc["in_wedge"] is True and doc["P_tilde"] == "2"


def test_zigzag(capsys):
    _, out, _ = run(capsys, "zigzag", "--steps", "1:0;0:1")
    assert json.loads(out)["endpoint"] == ["1", "1", "-1", "1/2", "1/2"]
    _, out, _ = run(capsys, "zigzag", "--factor", "0,1,0,1,0")
    assert json.loads(out)["reproduces"] is True
    code, _, err = run(capsys, "zigzag", "--factor", "0,-1,0,0,0")
    assert code == 2 and err.startswith("error:")


def test_verify_identities(capsys):
    code, out, _ = run(capsys, "verify-identities")
    lines = out.strip().splitlines()
    assert code == 0
    assert all(l.startswith("PASS") for l in lines[:-1])


def test_density_example(capsys):
    code, out, _ = run(capsys, "density", "--set", "E2", "--r", "1", "--n", "1000000", "--seed", "7")
    est = json.loads(out)["estimates"][0]
    assert code == 0 and abs(est["mean"] - 0.25) <= est["half_width_95"] * 2


def test_csv_output(capsys):
    _, out, _ = run(capsys, "cantor", "--depth", "6", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "n,q,p,q_prime,slope,bound" and len(lines) == 7


def test_monotone_check_exit_codes(capsys):
    assert run(capsys, "monotone-check", "--set", "E1", "--samples", "100")[0] == 0
    assert run(capsys, "monotone-check", "--set", "unknown", "--samples", "100")[0] == 2


def test_rectify(capsys):
    _, out, _ = run(capsys, "rectify", "--algebra", "F24")
    doc = json.loads(out)
    assert doc["verdict"] == "VerticalHalfSpace" and isinstance(doc["log"], list)
    _, out, _ = run(capsys, "rectify", "--algebra", "free:2:5", "--brief")
    assert json.loads(out)["verdict"] == "Stuck"
    assert run(capsys, "rectify", "--algebra", "nonsense")[0] == 2


def test_usage_errors(capsys):
    assert run(capsys, "member", "--x", "1,2")[0] == 2
    assert run(capsys, "member", "--x", "a,b,c,d,e")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2


@pytest.mark.parametrize("argv", [
    ["density", "--set", "pathE:8", "--r", "1/4,1", "--samples", "70000", "--seed", "3", "--workers", "3"],
    ["blowup", "--samples", "20000", "--seed", "1"],
    ["monotone-check", "--set", "coneAB:1:1", "--samples", "50"],
])
def test_byte_identical_reruns(argv):
    cmd = [sys.executable, "-m", "constnormal.cli", *argv]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
