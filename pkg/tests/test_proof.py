import random

import pytest

from conftest import random_proof
from mllp_goi.formula import Atom, Down, NegAtom, Tensor, Up
from mllp_goi.proof import (
    Ax,
    CutRule,
    DownRule,
    Exchange,
    ParRule,
    RuleViolation,
    Sequent,
    TensorRule,
    UpRule,
    check,
    enumerate_proofs,
    exchange,
    format_proof,
    is_focused,
    parse_proof,
    proofs_by_level,
    rule_count,
)

X, Y = Atom("X"), Atom("Y")
XN, YN = NegAtom("X"), NegAtom("Y")
ETA = "(dn (up (ax X^) 1) 0)"


def test_axiom():
    s = check(Ax(XN))
    assert s == Sequent((XN, X), ())
    assert str(s) == "|- [], X^, X"


def test_axiom_requires_negative():
    with pytest.raises(RuleViolation):
        check(Ax(X))


def test_axiom_on_compound_negative():
    s = check(Ax(Up(X)))
    assert s.gamma == (Up(X), Down(XN))


def test_example_23_sequents(corpus):
    pi1 = parse_proof(corpus["ex23_pi1"])
    s = check(pi1)
    assert str(s) == "|- [up X, dn X^, up X, dn X^], dn X^, up X"
    assert len(s.delta) == 2
    for a, b in s.delta:
        from mllp_goi.formula import negate
        assert b == negate(a)
    pi3 = parse_proof(corpus["ex23_pi3"])
    assert len(check(pi3).delta) == 2  # 4 cut formulas


def test_cut_free_has_empty_delta():
    assert check(parse_proof(ETA)).delta == ()


def test_tensor_requires_negative_contexts():
    # a premise whose context carries a second positive is rejected
    up_proof = UpRule(Ax(XN), 1)           # |- X^, up X
    par = ParRule(Ax(XN), 0, 1)            # |- (X^ | X)
    with pytest.raises(RuleViolation):
        check(TensorRule(par, par))        # last formulas not positive
    t = TensorRule(Ax(XN), Ax(YN))
    assert check(t).gamma == (XN, YN, Tensor(X, Y))
    assert up_proof  # checked above


def test_cut_demands_dual_formulas():
    with pytest.raises(RuleViolation):
        check(CutRule(Ax(XN), Ax(YN)))
    # negative cut formula on the left premise, as the rule is printed
    with pytest.raises(RuleViolation):
        check(CutRule(Ax(XN), exchange(Ax(XN), (1, 0))))


def test_down_needs_all_negative():
    with pytest.raises(RuleViolation):
        check(DownRule(Ax(XN), 0))  # context holds the positive X
    d = DownRule(UpRule(Ax(XN), 1), 0)
    assert check(d).gamma == (Down(XN), Up(X))


def test_focusedness():
    assert is_focused(check(parse_proof(ETA)))
    assert not is_focused(check(UpRule(Ax(XN), 1)))


def test_exchange_round_trip():
    p = TensorRule(Ax(XN), Ax(YN))
    perm = (2, 0, 1)
    inverse = (1, 2, 0)
    assert check(exchange(exchange(p, perm), inverse)) == check(p)
    assert exchange(p, (0, 1, 2)) is p


def test_exchange_validation():
    with pytest.raises(RuleViolation):
        check(Exchange(Ax(XN), (0, 0)))


def test_proof_format_round_trip(corpus):
    for text in corpus.values():
        p = parse_proof(text)
        assert parse_proof(format_proof(p)) == p


def test_enumeration_level_one():
    levels = proofs_by_level(1, ["X", "Y"])
    assert levels[0] == [Ax(XN), Ax(YN)]


def test_enumeration_contains_eta_expansion():
    found = list(enumerate_proofs(3, ["X"]))
    assert parse_proof(ETA) in found


def test_enumeration_all_check_and_focalized():
    for p in enumerate_proofs(5, ["X", "Y"]):
        s = check(p)  # raises on any rule violation
        assert len(s.positives()) <= 1


def test_no_proof_of_two_positives():
    # exhaustive search: no derivation concludes |- X, Y in any order
    bad = {(X, Y), (Y, X), (X, X), (Y, Y)}
    for p in enumerate_proofs(4, ["X", "Y"]):
        assert check(p).gamma not in bad


def test_enumeration_sampling_is_seeded():
    a = list(enumerate_proofs(6, ["X"], seed=5, sample=20))
    b = list(enumerate_proofs(6, ["X"], seed=5, sample=20))
    assert a == b and len(a) == 20


def test_rule_count_ignores_exchange():
    p = parse_proof(ETA)
    assert rule_count(p) == 3
    assert rule_count(exchange(p, (1, 0))) == 3


def test_random_proofs_check():
    rng = random.Random(11)
    for _ in range(200):
        p = random_proof(rng, 12)
        s = check(p)
        assert len(s.positives()) <= 1


def test_parse_proof_errors():
    from mllp_goi.formula import ParseError
    with pytest.raises(ParseError):
        parse_proof("(ax X")
    with pytest.raises(ParseError):
        parse_proof("(frob (ax X^))")
    with pytest.raises(ParseError):
        parse_proof("(ax X^) trailing")
