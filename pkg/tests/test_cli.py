import json
import subprocess
import sys

import pytest

from qdual.catalog import catalog_get
from qdual.cli import dispatch, main
from qdual.cli.presfile import serialize
from qdual.qcoeff import NotDivisible


def run(*argv):
    return dispatch(list(argv))


def test_catalog_list():
    code, out = run("catalog", "list")
    assert code == 0
    assert "Uq_sl2_hat" in out.split()


def test_normalize():
    code, out = run("normalize", "--algebra", "Fq_SL2_hat", "--expr", "a*d - d*a")
    assert code == 0
    assert out.strip() == "(q - q^-1)*b*c"


def test_member_not_member():
    code, out = run("member", "--algebra", "Uq_sl2_hat", "--expr", "E", "--max-n", "4")
    assert code == 1
    assert "NOT-MEMBER" in out


def test_member_member():
    code, out = run("member", "--algebra", "Uq_sl2_hat", "--expr", "(q-1)*E", "--max-n", "4")
    assert code == 0
    assert "MEMBER-UP-TO-BOUND" in out


def test_verify_all_heisenberg_dual():
    code, out = run("verify", "--algebra", "Fq_Hn_hat(1)", "--suite", "all")
    assert code == 0, out
    assert out.splitlines()[-1] == "verify all: PASS"


@pytest.mark.parametrize("suite", ["hopf", "pbw", "drinfeld", "limits"])
def test_verify_suites(suite):
    assert run("verify", "--algebra", "Uq_sl2_hat", "--suite", suite)[0] == 0


def test_verify_classical():
    assert run("verify", "--algebra", "U_sl2star", "--suite", "all")[0] == 0


def test_coproduct_and_delta():
    code, out = run("coproduct", "--algebra", "Fq_SL2_hat", "--expr", "b")
    assert code == 0 and "a @ b" in out
    c1, d1 = run("delta", "--algebra", "Uq_sl2_hat", "--expr", "E", "--n", "3")
    c2, d2 = run("delta", "--algebra", "Uq_sl2_hat", "--expr", "E", "--n", "3", "--subsets")
    assert c1 == c2 == 0
    assert d1 == d2


def test_tilde_commands():
    assert run("tilde", "--algebra", "Uq_sl2_hat")[0] == 0
    assert run("tilde-f", "--algebra", "Fq_SL2_hat")[0] == 0
    # wrong direction for the entry kind
    assert run("tilde-f", "--algebra", "Uq_sl2_hat")[0] == 2
    assert run("double-tilde", "--algebra", "Uq_e2_s_hat", "--max-n", "2")[0] == 0


def test_limit_tables():
    code, out = run("limit", "--algebra", "Fq_SL2_hat", "--poisson-table")
    assert code == 0 and out
    assert run("limit", "--algebra", "Fq_SL2_hat", "--cobracket-table")[0] == 2
    assert run("limit", "--algebra", "Fq_SL2_hat", "--poisson-table", "--cobracket-table")[0] == 2


def test_checkmap():
    assert run("checkmap", "--algebra", "Uq_hn_s_hat(2)")[0] == 0


def test_parse_error_exit():
    assert run("normalize", "--algebra", "Uq_sl2_hat", "--expr", "E*")[0] == 2
    assert run("normalize", "--algebra", "Uq_sl2_hat", "--expr", "Z")[0] == 2
    assert run("normalize", "--algebra", "No_such", "--expr", "E")[0] == 2
    assert run("frobnicate")[0] == 2


def test_bad_numbers_exit():
    assert run("normalize", "--algebra", "Uq_sl2_hat", "--expr", "E/(q-q)")[0] == 2
    assert run("delta", "--algebra", "Uq_sl2_hat", "--expr", "E", "--n", "-1")[0] == 2


def test_math_error_exit(monkeypatch):
    climain = sys.modules["qdual.cli.main"]

    def boom(*_):
        raise NotDivisible("q is not divisible by (q-1)")

    monkeypatch.setattr(climain, "cmd_normalize", boom)
    code, out = run("normalize", "--algebra", "Uq_sl2_hat", "--expr", "E")
    assert code == 3
    assert "NotDivisible" in out


def test_structured_output_is_deterministic():
    argv = ["--format", "structured", "delta", "--algebra", "Uq_sl2_hat", "--expr", "E", "--n", "2"]
    c1, a = run(*argv)
    c2, b = run(*argv)
    assert c1 == c2 == 0
    assert a == b
    doc = json.loads(a)
    assert set(doc) == {"command", "algebra", "inputs", "result", "diagnostics"}
    assert doc["command"] == "delta"
    assert doc["algebra"] == "Uq_sl2_hat"


def test_structured_flag_after_command():
    code, out = run("member", "--algebra", "Uq_sl2_hat", "--expr", "E", "--format", "structured")
    assert code == 1
    assert json.loads(out)["result"]["verdict"] == "NOT-MEMBER"


def test_structured_error():
    code, out = run("--format", "structured", "normalize", "--algebra", "Nope", "--expr", "x")
    assert code == 2
    doc = json.loads(out)
    assert doc["result"] is None and doc["diagnostics"]


def test_file_algebra(tmp_path):
    path = tmp_path / "e2.qd"
    path.write_text(serialize(catalog_get("Fq_E2_hat").presentation))
    code, out = run("verify", "--algebra", str(path), "--suite", "hopf")
    assert code == 0, out


def test_file_missing_antipode(tmp_path):
    text = serialize(catalog_get("Fq_SL2_hat").presentation)
    path = tmp_path / "bad.qd"
    path.write_text("\n".join(ln for ln in text.splitlines() if not ln.startswith("antipode b ")))
    assert run("normalize", "--algebra", str(path), "--expr", "a")[0] == 2


def test_main_returns_code(capsys):
    assert main(["normalize", "--algebra", "Fq_SL2_hat", "--expr", "a*b"]) == 0
    assert capsys.readouterr().out.strip() == "q*b*a"


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "qdual", "normalize", "--algebra", "Uq_sl2_hat",
                        "--expr", "E*F"], capture_output=True, text=True, timeout=60)
    assert r.returncode == 0
    assert r.stdout.strip() == "F*E + Gamma"
