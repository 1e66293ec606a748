import json
import subprocess
import sys

import pytest

from drinfeld_nhf.cli import UsageError, build_form, main


def run(capsys, *argv):
    rc = main(list(argv))
    cap = capsys.readouterr()
    return rc, cap.out, cap.err


def test_goss(capsys):
    assert run(capsys, "goss", "--q", "3", "--k", "1")[:2] == (0, "X\n")
    assert run(capsys, "goss", "--q", "3", "--k", "3")[:2] == (0, "X^3\n")
    rc, _, err = run(capsys, "goss", "--q", "3", "--k", "0")
    assert rc == 2 and "k must be" in err
    rc, out, _ = run(capsys, "--q", "2", "goss", "--k", "5", "--check")
    assert rc == 0 and "oracle agrees" in out


def test_global_flags_either_side(capsys):
    a = run(capsys, "--q", "3", "--json", "goss", "--k", "4")
    b = run(capsys, "goss", "--k", "4", "--q", "3", "--json")
    assert a == b and a[0] == 0
    assert json.loads(a[1])["q"] == 3


def test_expand(capsys):
    rc, out, _ = run(capsys, "expand", "--form", "E", "--q", "3", "--order", "5")
    assert rc == 0 and out.splitlines()[1].strip().startswith("t + ")
    rc, out, _ = run(capsys, "expand", "--form", "delta", "--route", "both")
    assert rc == 0 and "routes agree: true" in out
    rc, out, _ = run(capsys, "expand", "--form", "Ek", "--k", "1", "--q", "3")
    assert rc == 0 and "O(t^20)" in out and "note: (q−1) ∤ k" in out
    rc, out, _ = run(capsys, "expand", "--form", "delta", "--route", "sideways")
    assert rc == 2


def test_expand_json_is_deterministic(capsys):
    a = run(capsys, "--json", "expand", "--form", "g1", "--q", "2", "--order", "12")[1]
    b = run(capsys, "--json", "expand", "--form", "g1", "--q", "2", "--order", "12")[1]
    assert a == b
    d = json.loads(a)
    assert d["val"] == 0 and d["prec"] == 12 and d["coeffs"][1] == "T^2+T"


def test_tate_ms_nhf(capsys):
    rc, out, _ = run(capsys, "tate", "--q", "2", "--order", "8")
    assert rc == 0 and out.startswith("g1 = 1 + (T^2+T)*X")
    rc, out, _ = run(capsys, "ms", "--form", "delta", "--q", "3", "--order", "15")
    assert rc == 0 and out.startswith("weight 10, type 1, depth 1")
    rc, out, _ = run(capsys, "nhf", "--form", "g1*E2^2", "--q", "3", "--order", "15")
    assert rc == 0 and "recomposition matches: true" in out
    rc, _, err = run(capsys, "nhf", "--form", "g7", "--q", "3")
    assert rc == 2 and "unknown factor" in err


def test_eval(capsys):
    pt = json.dumps({"m": 2, "e": 1, "terms": [[0, "zeta"], [1, "1"]]})
    rc, out, _ = run(capsys, "eval", "--form", "E2", "--q", "3", "--point", pt, "--gamma", "[[0,1],[1,0]]")
    assert rc == 0
    assert "PASS functional_equation" in out and "PASS u_transformation" in out
    rc, out, _ = run(capsys, "--json", "eval", "--form", "g1", "--q", "3", "--point", pt)
    d = json.loads(out)
    assert rc == 0 and d["value"]["m"] == 2
    assert run(capsys, "eval", "--form", "g1", "--q", "3", "--point", "{bad")[0] == 2
    assert run(capsys, "eval", "--form", "g1", "--q", "3", "--point", pt, "--gamma", "1,2,3")[0] == 2
    assert run(capsys, "eval", "--form", "g1", "--q", "4", "--point", pt)[0] == 2


def test_check_tate(capsys):
    rc, out, _ = run(capsys, "check", "--suite", "tate", "--q", "2")
    assert rc == 0 and "g2 lowest order = 1 (= q-1)" in out and out.rstrip().endswith("ALL PASS")


def test_check_numeric(capsys):
    rc, out, _ = run(capsys, "check", "--suite", "numeric", "--q", "3", "--prec", "30")
    assert rc == 0
    assert "E_2 functional equation" in out and "g1(zeta) = 0" in out


def test_validation(capsys):
    assert run(capsys, "--q", "6", "goss", "--k", "1")[0] == 2
    assert run(capsys, "--q", "1", "goss", "--k", "1")[0] == 2
    assert run(capsys, "--prec", "0", "goss", "--k", "1")[0] == 2


def test_build_form():
    f = build_form("g1^2*delta", 3, 10)
    assert (f.weight, f.type) == (12, 0)
    F = build_form("E2*g1", 3, 10)
    assert F.depth == 1
    with pytest.raises(UsageError):
        build_form("Ek", 3, 10)


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "drinfeld_nhf.cli", "goss", "--q", "2", "--k", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "X^2\n"
