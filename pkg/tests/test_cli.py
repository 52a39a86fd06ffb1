import io
import json
import subprocess
import sys

import pytest

from pdwbc.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_g_simple():
    code, out, _ = call("g", "--m", "1", "--s", "1", "--t", "1/2")
    assert code == 0
    assert out.splitlines()[0] == "1/2"


def test_g_representations_agree():
    values = set()
    for r in ("series", "residue", "jacobi"):
        code, out, _ = call("g", "--m", "4", "--s", "3", "--t", "0.25", "--repr", r, "--format", "json")
        assert code == 0
        values.add(json.loads(out)["value"])
    assert len(values) == 1


def test_g_polynomial():
    code, out, _ = call("g", "--m", "3", "--s", "1")
    assert json.loads(out)["coefficients"] == ["0", "0", "1", "-1"]


def test_g_finite_lattice():
    code, out, _ = call("g", "--m", "1", "--s", "1", "--t-list", "1/2", "--repr", "finite-n", "--nu-count", "2")
    assert code == 0 and out.splitlines()[0] == "2/3"
    code, out, _ = call("g", "--m", "1", "--s", "1", "--t", "1/2", "--repr", "finite-n", "--nu-count", "2")
    assert code == 0 and out.splitlines()[0] == "2/3"


def test_digits():
    _, out, _ = call("g", "--m", "2", "--s", "1", "--t", "1/3", "--digits", "4")
    assert out.splitlines() == ["2/9", "0.2222"]


def test_z_formulas_agree():
    _, a, _ = call("z", "--s", "2", "--n", "2", "--t", "1/3", "--formula", "bruteforce")
    _, b, _ = call("z", "--s", "2", "--n", "2", "--t", "1/3", "--formula", "hankel")
    assert a == b
    _, c, _ = call("z", "--n", "3", "--formula", "fw", "--lambdas", "3,7/2", "--nus", "0,1/3,-5", "--format", "json")
    _, d, _ = call("z", "--n", "3", "--formula", "kostov", "--lambdas", "3,7/2", "--nus", "0,1/3,-5", "--format", "json")
    assert json.loads(c)["value"] == json.loads(d)["value"]


def test_exit():
    code, a, _ = call("exit", "--pattern", "2,3,5", "--t-list", "1/4,1/3,1/5", "--format", "json")
    _, b, _ = call("exit", "--pattern", "2,3,5", "--t-list", "1/4,1/3,1/5", "--method", "bruteforce", "--format", "json")
    assert code == 0 and json.loads(a)["value"] == json.loads(b)["value"]
    _, c, _ = call("exit", "--pattern", "1,3", "--t", "1/2", "--format", "json")
    _, d, _ = call("exit", "--pattern", "1,3", "--t", "1/2", "--method", "bruteforce", "--format", "json")
    assert json.loads(c)["value"] == json.loads(d)["value"]


def test_verify_ode():
    code, out, _ = call("verify", "--suite", "ode", "--max-s", "6")
    assert code == 0
    assert out.strip() == "ode: 36/36 residuals zero"


def test_verify_failure_exit_code(monkeypatch):
    from pdwbc import verification

    def broken(max_s):
        rep = verification.SuiteReport("ode", noun="residuals zero")
        rep.run("always wrong", lambda: False)
        return rep

    monkeypatch.setitem(verification.SUITES, "ode", broken)
    code, out, _ = call("verify", "--suite", "ode")
    assert code == 1 and "FAILED always wrong" in out


def test_mc_deterministic():
    a = call("mc", "--s", "2", "--t", "1/2", "--samples", "3000", "--seed", "7")
    b = call("mc", "--s", "2", "--t", "1/2", "--samples", "3000", "--seed", "7")
    assert a == b
    lines = a[1].splitlines()
    assert lines[0] == "# schema=1" and lines[2] == "m,count,estimate,stderr"


def test_asym_csv():
    code, out, _ = call("asym", "--mode", "rate", "--s", "100", "--t", "1/3", "--grid", "1/2,2")
    assert code == 0
    lines = out.splitlines()
    assert lines[:2] == ["# schema=1", "mu,t,phi1,phi0,log_exact,log_predicted"]
    for row in lines[2:]:
        *_, exact, predicted = row.split(",")
        assert abs(float(exact) - float(predicted)) <= 0.1
    code, out, _ = call("asym", "--mode", "window", "--s", "100", "--t", "1/2")
    assert out.splitlines()[1] == "v,t,s,g_exact,erfc_limit" and len(out.splitlines()) == 7


def test_table():
    code, out, _ = call("table", "--quantity", "g", "--m-range", "1:3", "--s-range", "1:2", "--t", "1/2")
    lines = out.splitlines()
    assert code == 0 and lines[1] == "m,s,g_exact,g_decimal" and len(lines) == 2 + 6
    assert lines[2] == "1,1,1/2,0.5"
    code, out, _ = call("table", "--quantity", "z", "--m-range", "3", "--s-range", "1:3", "--t", "1/2")
    assert len(out.splitlines()) == 2 + 3


@pytest.mark.parametrize("argv,code,kind", [
    (["g", "--m", "1"], 2, "usage"),
    (["g", "--m", "1", "--s", "1", "--t", "abc"], 2, "usage"),
    (["g", "--m", "1", "--s", "1", "--t", "3/2", "--repr", "residue"], 2, "DomainError"),
    (["z", "--s", "8", "--n", "8", "--t", "1/3", "--formula", "bruteforce"], 3, "ResourceGuardError"),
    (["z", "--n", "2", "--formula", "fw"], 2, "usage"),
    (["exit", "--pattern", "2,3,5", "--t-list", "1/4,1/3"], 2, "DomainError"),
    (["asym", "--mode", "rate", "--grid", "1"], 2, "WindowError"),
])
def test_error_records(argv, code, kind):
    got, out, err = call(*argv)
    assert got == code and out == ""
    record = json.loads(err)
    assert record["error"] == kind and record["exit_code"] == code


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "pdwbc.cli", "g", "--m", "2", "--s", "2", "--t", "1/2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.splitlines()[0] == "1/2"
