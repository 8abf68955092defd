import pytest

from mllp_goi.cutelim import Strategy
from mllp_goi.exec_formula import (
    NotFocused,
    build_sigma,
    check_converse,
    check_focus,
    check_invariance,
    ex,
    sigma_of,
)
from mllp_goi.goi import InterpCache, Mode, interp
from mllp_goi.proof import Ax, UpRule, check, enumerate_proofs, parse_proof
from mllp_goi.formula import NegAtom
from mllp_goi.relcore import (
    ID,
    POINT,
    ZERO,
    compose,
    id_rel,
    tensor,
    trace,
)

ANTIDIAG = ((ZERO, ID), (ID, ZERO))


def test_sigma_empty_for_cut_free(corpus):
    ip = interp(parse_proof(corpus["eta_axiom"]))
    sig = build_sigma(ip.layout)
    assert len(sig.upper.dom) == 0 and len(sig.lower.dom) == 0


def test_sigma_example_23(corpus):
    ip = interp(parse_proof(corpus["ex23_pi1"]))
    sig = build_sigma(ip.layout)
    # two cut pairs of single-1 formulas: two antidiagonal blocks
    assert sig.lower.entries == (
        (ZERO, ID, ZERO, ZERO),
        (ID, ZERO, ZERO, ZERO),
        (ZERO, ZERO, ZERO, ID),
        (ZERO, ZERO, ID, ZERO),
    )


def test_ex_of_cut_free_is_the_interpretation(corpus):
    ip, sig = sigma_of(parse_proof(corpus["eta_axiom"]))
    up, low = ex(ip, sig)
    assert up == ip.upper and low == ip.lower


def test_ex_example_23_all_equal(corpus):
    results = []
    for name in ("ex23_pi1", "ex23_pi2", "ex23_pi3"):
        ip, sig = sigma_of(parse_proof(corpus[name]))
        results.append(ex(ip, sig))
    for up, low in results:
        assert low.entries == ANTIDIAG
        assert up == results[0][0]
    # the common value is the interpretation of the eta-expanded axiom
    eta = interp(parse_proof("(dn (up (ax X^) 1) 0)"))
    assert results[0][0] == eta.upper and results[0][1] == eta.lower


def test_invariance_example_23(corpus):
    rep = check_invariance(parse_proof(corpus["ex23_pi1"]))
    assert rep.passed and rep.steps == 6


def test_invariance_cut_free_is_vacuous(corpus):
    rep = check_invariance(parse_proof(corpus["shift_tensor"]))
    assert rep.passed and rep.steps == 0


def test_invariance_both_strategies_and_modes():
    for p in enumerate_proofs(6, ["X"]):
        if not check(p).delta:
            continue
        for strategy in Strategy:
            for mode in Mode:
                assert check_invariance(p, mode, strategy).passed


def test_focus_eta_axiom_composite(corpus):
    rep = check_focus(parse_proof(corpus["eta_axiom"]))
    assert rep.passed and rep.nontrivial
    # the common composite is the single point into the up-shift wire
    ip, sig = sigma_of(parse_proof(corpus["eta_axiom"]))
    up, _ = ex(ip, sig)
    from mllp_goi.exec_formula import _mp_into
    from mllp_goi.goi import build_layout
    from mllp_goi.proof import Sequent
    layout = build_layout(Sequent(check(parse_proof(corpus["eta_axiom"])).gamma, ()))
    lhs = compose(up, _mp_into(layout, [("gamma", 0)]))
    assert lhs.entries == ((ZERO,), (ZERO,), (ZERO,), (POINT,))


def test_focus_shift_tensor_composite(corpus):
    p = parse_proof(corpus["shift_tensor"])
    rep = check_focus(p)
    assert rep.passed and rep.nontrivial
    ip, sig = sigma_of(p)
    up, _ = ex(ip, sig)
    from mllp_goi.exec_formula import _mp_into
    from mllp_goi.goi import build_layout
    from mllp_goi.proof import Sequent
    layout = build_layout(Sequent(check(p).gamma, ()))
    pos = check(p).positives()[0]
    lhs = compose(up, _mp_into(layout, [("gamma", pos)]))
    # two points, one per par component
    assert lhs.entries == ((ZERO,), (ZERO,), (ZERO,), (ZERO,), (POINT,), (POINT,))


def test_focus_requires_focused_conclusion():
    with pytest.raises(NotFocused):
        check_focus(UpRule(Ax(NegAtom("X")), 1))


def test_focused_axioms_commute():
    for name in ("X", "Y"):
        rep = check_focus(Ax(NegAtom(name)))
        assert rep.passed


def test_converse_up_terminal_is_trivial(corpus):
    p = parse_proof(corpus["nonfocused_up"])
    reports = [r for r in check_converse(2, ["X"]) if r.proof == str(p)]
    assert reports and all(r.trivial for r in reports)
    assert all(not r.violation for r in reports)


def test_converse_budget_six_no_violations():
    reports = check_converse(6, ["X"])
    assert reports
    assert not [r for r in reports if r.violation]


def test_ex_associativity_on_two_cut_proofs():
    # peeling the last cut pair off sigma and tracing in two stages agrees
    # with the one-shot execution formula
    cache = InterpCache()
    seen = 0
    for p in enumerate_proofs(8, ["X"]):
        s = check(p)
        if len(s.delta) < 2:
            continue
        seen += 1
        if seen > 60:
            break
        ip, sig = sigma_of(p, cache=cache)
        full_up, full_low = ex(ip, sig)
        for layer, m, sg in (("upper", ip.upper, sig.upper),
                             ("lower", ip.lower, sig.lower)):
            gw = len(m.dom) - len(sg.dom)
            last_pair = _last_pair_width(ip.layout, layer)
            inner_iface = m.dom[:len(m.dom) - last_pair]
            s_last = _sub_block(sg, len(sg.dom) - last_pair)
            sigma_rest = _sub_block(sg, 0, len(sg.dom) - last_pair)
            stage1 = trace(compose(tensor(id_rel(inner_iface), s_last), m),
                           last_pair)
            stage2 = trace(compose(tensor(id_rel(m.dom[:gw]), sigma_rest), stage1),
                           len(sigma_rest.dom))
            want = full_up if layer == "upper" else full_low
            assert stage2 == want
    assert seen > 10


def _last_pair_width(layout, layer) -> int:
    k = len(layout.sequent.delta) - 1
    spans = [layout.span(("delta", k, 0)), layout.span(("delta", k, 1))]
    if layer == "upper":
        return sum(sp.u_len for sp in spans)
    return sum(sp.one_len for sp in spans)


def _sub_block(m, start, stop=None):
    stop = len(m.dom) if stop is None else stop
    from mllp_goi.relcore import blockrel
    return blockrel(m.dom[start:stop], m.cod[start:stop],
                    [row[start:stop] for row in m.entries[start:stop]])


def test_tensor_splitting():
    # Ex of a tensor of two independently cut proofs is the wire-routed
    # tensor of their Ex values
    from mllp_goi.proof import TensorRule, move_to_last
    cut_x = parse_proof(
        "(cut (dn (up (ax X^) 1) 0) (ex (dn (up (ax X^) 1) 0) [1 0]))")
    cut_y = parse_proof(
        "(cut (dn (up (ax Y^) 1) 0) (ex (dn (up (ax Y^) 1) 0) [1 0]))")
    t = TensorRule(move_to_last(cut_x, 0), move_to_last(cut_y, 0))
    ip_t, sig_t = sigma_of(t)
    up_t, _ = ex(ip_t, sig_t)
    ex_x = ex(*sigma_of(cut_x))
    ex_y = ex(*sigma_of(cut_y))
    # conclusion gamma (up X, up Y, dnX^ * dnY^); wire layout puts the
    # tensor first, split into the X block then the Y block
    maps_u = _tensor_wire_map(ip_t.layout)
    for r, (pr, rr) in maps_u.items():
        for c, (pc, cc) in maps_u.items():
            want = ZERO
            if pr == pc:
                want = (ex_x if pr == 0 else ex_y)[0].entries[rr][cc]
            assert up_t.entries[r][c] == want


def _tensor_wire_map(layout):
    # premise Ex wires are [dn span (2), up span (2)] for each factor
    out = {}
    tsp = layout.span(("gamma", 2))
    half = tsp.u_len // 2
    for i in range(half):
        out[tsp.u_start + i] = (0, i)            # dn X^ wires of proof 1
        out[tsp.u_start + half + i] = (1, i)     # dn Y^ wires of proof 2
    xsp = layout.span(("gamma", 0))
    for i in range(xsp.u_len):
        out[xsp.u_start + i] = (0, half + i)     # up X wires of proof 1
    ysp = layout.span(("gamma", 1))
    for i in range(ysp.u_len):
        out[ysp.u_start + i] = (1, half + i)     # up Y wires of proof 2
    return out


def test_invariance_reports_are_sorted_inputs():
    rep = check_invariance(parse_proof("(cut (dn (up (ax X^) 1) 0) "
                                       "(ex (dn (up (ax X^) 1) 0) [1 0]))"))
    assert rep.passed
    assert rep.to_json()["steps"] == rep.steps


def test_sigma_single_atomic_cut():
    # the left premise must end in the negative cut formula, so the axiom
    # is exchanged to |- X, X^ before cutting against |- X^, X
    p = parse_proof("(cut (ex (ax X^) [1 0]) (ax X^))")
    ip, sig = sigma_of(p)
    assert sig.upper.entries == ((ZERO, ID), (ID, ZERO))
    assert sig.lower.entries == ((ZERO, ID), (ID, ZERO))


def test_ex_lower_of_eta_ranges_over_the_context(corpus):
    from mllp_goi.relcore import ranges_over, restrict_cols
    p = parse_proof(corpus["eta_axiom"])
    ip, sig = sigma_of(p)
    _, low = ex(ip, sig)
    # restricted to the positive's lower wire, lands inside the up-shift one
    restricted = restrict_cols(low, [0])
    assert ranges_over(restricted, [1])
    # and a full-cod morphism trivially ranges over everything
    assert ranges_over(low, [0, 1])


def test_invariance_and_focus_on_large_random_proofs():
    import random
    from conftest import random_proof
    from mllp_goi.proof import is_focused
    rng = random.Random(2024)
    cut_seen = 0
    for _ in range(150):
        p = random_proof(rng, 15)
        s = check(p)
        if s.delta:
            cut_seen += 1
            assert check_invariance(p).passed
        if is_focused(s):
            assert check_focus(p).passed
    assert cut_seen > 30
