import json

import pytest

from ackbo.cli import Certificate, main
from ackbo.orders import OrderId
from ackbo.orient import orient_check
from ackbo.tpdb import parse_trs
from helpers import SEVEN_RULE_TRS_TEXT, BINADD_TRS_TEXT


@pytest.fixture
def r3(tmp_path):
    path = tmp_path / "r3.trs"
    path.write_text(SEVEN_RULE_TRS_TEXT, encoding="utf-8")
    return str(path)


@pytest.fixture
def binary_addition(tmp_path):
    path = tmp_path / "binadd.trs"
    path.write_text(BINADD_TRS_TEXT, encoding="utf-8")
    return str(path)


def test_check_oriented_exit_zero(r3, capsys):
    code = main(
        [
            "check",
            r3,
            "--order",
            "ackbo",
            "--prec",
            "f>+>g>a>b>h",
            "--weights",
            "+=0,h=0,f=1,a=1,b=1,g=2;w0=1",
        ]
    )
    out = capsys.readouterr().out
    assert code == 0
    assert "oriented" in out
    assert "ackbo:case3a" in out


def test_check_not_oriented_exit_one(r3, capsys):
    code = main(
        [
            "check",
            r3,
            "--order",
            "kv-prime",
            "--prec",
            "f>+>g>a>b>h",
            "--weights",
            "+=0,h=0,f=1,a=1,b=1,g=2;w0=1",
        ]
    )
    assert code == 1
    assert "none" in capsys.readouterr().out


def test_compare_counterexample_exit_one(capsys):
    code = main(
        [
            "compare",
            "--order",
            "kv",
            "--weights",
            "f=0,+=0,a=1;w0=1",
            "f(x)+y",
            "x+y",
        ]
    )
    assert code == 1
    assert "none" in capsys.readouterr().out


def test_compare_gt_exit_zero(capsys):
    code = main(
        [
            "compare",
            "--order",
            "kv-prime",
            "--weights",
            "f=0,+=0;w0=1",
            "f(x)+y",
            "x+y",
        ]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert out.startswith("gt")
    assert "kv-prime:case3c" in out


def test_canon_agrees_on_permuted_inputs(capsys):
    assert main(["canon", "(a+b)+c"]) == 0
    first = capsys.readouterr().out
    assert main(["canon", "c+(b+a)"]) == 0
    second = capsys.readouterr().out
    assert first == second


def test_orient_emits_replayable_certificate(r3, tmp_path, capsys):
    cert_path = tmp_path / "cert.json"
    code = main(
        [
            "orient",
            r3,
            "--order",
            "ackbo",
            "--max-weight",
            "2",
            "--out",
            str(cert_path),
        ]
    )
    assert code == 0
    cert = Certificate.from_json(cert_path.read_text(encoding="utf-8"))
    prec = {tuple(p) for p in cert.precedence}
    assert ("f", "+") in prec and ("+", "g") in prec
    assert all(r["relation"] == "gt" for r in cert.rules)
    # replay through check with the certificate: identical verdicts
    capsys.readouterr()
    code = main(["check", r3, "--order", "ackbo", "--certificate", str(cert_path)])
    out = capsys.readouterr().out
    assert code == 0
    for r in cert.rules:
        assert f"[{r['case']}]" in out
    # and through the library
    trs = parse_trs(SEVEN_RULE_TRS_TEXT)
    params = cert.order_params(trs.signature)
    verdicts = orient_check(OrderId.from_string(cert.order), params, trs)
    assert [v.top_case() for v in verdicts] == [r["case"] for r in cert.rules]


def test_orient_failure_exit_one(binary_addition, capsys):
    code = main(
        ["orient", binary_addition, "--order", "s", "--max-weight", "1"]
    )
    assert code == 1


def test_gen_targets(tmp_path, capsys):
    dimacs = tmp_path / "phi.cnf"
    dimacs.write_text("p cnf 2 2\n1 -2 0\n2 0\n", encoding="utf-8")
    assert main(["gen", "--target", "kv-orient", str(dimacs)]) == 0
    out = capsys.readouterr().out
    trs = parse_trs(out)
    assert any(sym.is_ac for sym in trs.signature)
    assert main(["gen", "--target", "ackbo-orient", str(dimacs)]) == 0
    out2 = capsys.readouterr().out
    assert len(parse_trs(out2).rules) > len(trs.rules)
    assert main(["gen", "--target", "kvprime-member", str(dimacs)]) == 0
    out3 = capsys.readouterr().out
    assert "(LHS" in out3 and "(RHS" in out3 and "prec o > c" in out3


def test_export_smt(r3, capsys):
    assert main(["export-smt", r3, "--order", "ackbo"]) == 0
    out = capsys.readouterr().out
    assert "(set-logic QF_LIA)" in out
    assert "(check-sat)" in out


def test_parse_error_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.trs"
    bad.write_text("(RULES f(x -> x)", encoding="utf-8")
    assert main(["check", str(bad), "--order", "ackbo"]) == 2
    assert "error" in capsys.readouterr().err


def test_missing_file_exit_two(capsys):
    assert main(["check", "/nonexistent.trs", "--order", "ackbo"]) == 2


def test_params_file(tmp_path, r3, capsys):
    params = tmp_path / "r3.params"
    params.write_text(
        "# parameters for the seven-rule system\n"
        "w0 1\n"
        "w + 0\nw h 0\nw f 1\nw a 1\nw b 1\nw g 2\n"
        "prec f > + > g > a > b > h\n",
        encoding="utf-8",
    )
    code = main(["check", r3, "--order", "ackbo", "--params", str(params)])
    assert code == 0


def test_status_and_sc_flags(tmp_path, capsys):
    trs = tmp_path / "sc.trs"
    trs.write_text(
        "(VAR x y)(THEORY (AC ∘))(RULES f(x ∘ y, 0) -> f(x, 0) ∘ f(y, 0))",
        encoding="utf-8",
    )
    code = main(
        [
            "check",
            str(trs),
            "--order",
            "ackbo-sc",
            "--prec",
            "f>∘>0",
            "--weights",
            "f=5,∘=3,0=1;w0=1",
            "--sc",
            "f:1=4,f:2=4",
        ]
    )
    assert code == 0
