from pathlib import Path

import pytest

import msoequiv as me

CORPUS = Path(__file__).resolve().parents[2] / "corpus"


def load(name):
    return me.Transducer.load(str(CORPUS / name))


def dom(name):
    return me.Domain.load(str(CORPUS / name))


def test_run_strings_and_trees():
    assert load("reverse.mso-t").run("ab") == ["ba"]
    assert load("root-child-swap.mso-t").run("f(a,b)") == ["f(b,a)"]
    assert load("root-child-swap.mso-t").run("f(a,b)", flatten=True) == ["fba"]
    assert load("identity-nonempty.mso-t").run("") == []


def test_identity_against_reverse():
    v = me.decide(load("identity.mso-t"), load("reverse.mso-t"), dom("sigma-star.cfg"), witness=True)
    assert v.kind == "output-mismatch"
    assert v.exit_code == 1
    assert len(v.witness) <= 2
    assert me.find_counterexample(load("identity.mso-t"), load("reverse.mso-t"), dom("sigma-star.cfg")) == "ab"
    assert me.decide(load("identity.mso-t"), load("reverse.mso-t"), dom("palindromes.cfg")).equivalent


def test_default_domain_and_trees():
    v = me.decide(load("tree-identity.mso-t"), load("root-child-swap.mso-t"), witness=True)
    assert v.witness == "f(a,b)"
    assert me.decide(load("tree-identity.mso-t"), load("root-child-swap.mso-t"), dom("child-symmetric.rtg")).equivalent


def test_verdict_json_round_trip():
    v = me.decide(load("identity.mso-t"), load("identity-nonempty.mso-t"), me.Domain.regular("(a|b)*"), witness=True)
    assert str(v) == "INEQUIVALENT reason=domain-mismatch witness=ε"
    assert me.Verdict.from_json(v.to_json()) == v


def test_budget_and_errors():
    v = me.decide(load("identity.mso-t"), load("reverse.mso-t"), budget="states=2")
    assert v.kind == "resource-exceeded"
    assert v.exit_code == 2
    b = me.Budget.parse("witness=4")
    assert (b.witness_bound, b.state_cap) == (4, 200000)
    with pytest.raises(me.ParseError):
        me.Transducer.parse("copies: 1\nbogus")
    with pytest.raises(me.SignatureError):
        me.decide(load("identity.mso-t"), load("tree-identity.mso-t"))
    with pytest.raises(me.Error):
        me.Domain.regular("(a")


def test_domains_compile_and_parikh():
    d = me.Domain.regular("(ab)*")
    assert d.contains("abab") and not d.contains("ba")
    assert d.members(4) == ["ε", "ab", "abab"]
    assert me.parikh("start: S\nS -> a S b | \n") == "base (0,0); periods {(1,1)}"
    assert me.compile_summary("true").endswith("universal")
    checks, failures, _ = me.selftest(3)
    assert checks > 0 and failures == 0
