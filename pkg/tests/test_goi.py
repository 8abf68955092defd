import pytest

from mllp_goi.formula import Atom, Down, NegAtom, One, Par, Tensor, Up, parse
from mllp_goi.goi import (
    InterpCache,
    LeafRole,
    Mode,
    UnitUnsupported,
    interp,
    mp,
    one_pairing,
    retraction_rA,
    shape,
    u_pairing,
    u_width,
)
from mllp_goi.proof import Ax, check, enumerate_proofs, parse_proof
from mllp_goi.relcore import (
    ID,
    ONE,
    POINT,
    U,
    Window,
    ZERO,
    blockrel,
    compose,
    fold_eval,
    id_rel,
)

X, Y = Atom("X"), Atom("Y")
XN, YN = NegAtom("X"), NegAtom("Y")


def test_shape_up_atom():
    info = shape(Up(X))
    assert info.one_leaves == 1
    roles = [(l.role, l.in_au) for l in info.u_leaves]
    assert roles == [(LeafRole.LITERAL, False), (LeafRole.SHIFT_UP, True)]


def test_shape_par_of_negatoms():
    info = shape(Par(YN, XN))
    assert info.one_leaves == 2
    assert all(l.in_au for l in info.u_leaves)
    assert [l.pair_one for l in info.u_leaves] == [0, 1]


def test_shape_atom():
    info = shape(X)
    assert info.one_leaves == 1 and len(info.u_leaves) == 1
    assert info.u_leaves[0].in_au


def test_shape_down_demotes_body():
    info = shape(Down(Up(Tensor(X, Y))))
    assert info.one_leaves == 1
    assert [l.in_au for l in info.u_leaves] == [True, False, False, False]
    assert info.u_leaves[0].role is LeafRole.SHIFT_DOWN


def test_shape_rejects_units():
    with pytest.raises(UnitUnsupported):
        shape(One())
    with pytest.raises(UnitUnsupported):
        shape(Tensor(One(), X))


def test_mp_examples():
    m = mp(Up(X))  # point lands on the shift wire, not the literal
    assert m.entries == ((ZERO,), (POINT,))
    m2 = mp(Par(YN, XN))
    assert m2.entries == ((POINT, ZERO), (ZERO, POINT))
    assert mp(X).entries == ((POINT,),)


def test_retraction_is_a_retraction():
    for f in (X, Up(X), Par(YN, XN), Down(Up(Tensor(X, Y)))):
        r_a, bang_a = retraction_rA(f)
        m = shape(f).one_leaves
        assert compose(bang_a, r_a) == id_rel((U,) * m)


def test_pairing_is_involutive():
    from mllp_goi.formula import negate
    pool = [X, XN, Up(X), Down(XN), Tensor(X, Y), Par(YN, XN),
            Down(Up(Tensor(X, Y))), Up(Tensor(X, Down(YN)))]
    for f in pool:
        fwd = u_pairing(f)
        bwd = u_pairing(negate(f))
        assert sorted(fwd) == list(range(u_width(f)))
        for i, k in enumerate(fwd):
            assert bwd[k] == i
        ofwd = one_pairing(f)
        obwd = one_pairing(negate(f))
        for i, k in enumerate(ofwd):
            assert obwd[k] == i


GOLDEN_I_UPPER = (
    (ZERO, ZERO, ZERO, POINT),
    (ZERO, ZERO, ID, ZERO),
    (ZERO, ID, ZERO, ZERO),
    (POINT, ZERO, ZERO, ZERO),
)

GOLDEN_I_LOWER = ((ZERO, ID), (ID, ZERO))


def test_golden_eta_axiom(corpus):
    ip = interp(parse_proof(corpus["eta_axiom"]))
    assert ip.upper.entries == GOLDEN_I_UPPER
    assert ip.lower.entries == GOLDEN_I_LOWER
    # layout: positive dn X^ first ([shift, literal]), then up X
    layout = ip.layout.to_json()["interface"]
    assert layout[0]["formula"] == "dn X^"
    assert layout[0]["u_span"] == [0, 2]


GOLDEN_II_UPPER = (
    # wires [U_dn, U_X, U_Y, U_up | U_Yn, U_Xn]
    (ZERO, ZERO, ZERO, ZERO, POINT, POINT),
    (ZERO, ZERO, ZERO, ZERO, ZERO, ID),
    (ZERO, ZERO, ZERO, ZERO, ID, ZERO),
    (ZERO, ZERO, ZERO, ZERO, ZERO, ZERO),
    (POINT, ZERO, ID, ZERO, ZERO, ZERO),
    (POINT, ID, ZERO, ZERO, ZERO, ZERO),
)

GOLDEN_II_LOWER = (
    (ZERO, ID, ID),
    (ID, ZERO, ZERO),
    (ID, ZERO, ZERO),
)


def test_golden_shift_tensor(corpus):
    ip = interp(parse_proof(corpus["shift_tensor"]))
    assert ip.upper.entries == GOLDEN_II_UPPER
    assert ip.lower.entries == GOLDEN_II_LOWER


def test_axiom_interp_atomic():
    ip = interp(Ax(XN))
    # layout [X (positive first), X^]; identity swap
    assert ip.upper.entries == ((ZERO, ID), (ID, ZERO))
    assert ip.lower.entries == ((ZERO, ID), (ID, ZERO))


def test_axiom_on_shifted_formula_uses_identity_pairing():
    # a general axiom keeps Id on the shift wires where the eta-expansion
    # has points; both are supported
    ip = interp(Ax(Up(X)))
    assert ip.upper.entries == (
        (ZERO, ZERO, ZERO, ID),
        (ZERO, ZERO, ID, ZERO),
        (ZERO, ID, ZERO, ZERO),
        (ID, ZERO, ZERO, ZERO),
    )


def test_interp_rejects_units():
    with pytest.raises(UnitUnsupported):
        interp(Ax(parse("bot")))


def test_degenerate_mode_drops_cross_links(corpus):
    ip = interp(parse_proof(corpus["eta_axiom"]), Mode.PINJ_DEGENERATE)
    assert ip.upper.entries == (
        (ZERO, ZERO, ZERO, ZERO),
        (ZERO, ZERO, ID, ZERO),
        (ZERO, ID, ZERO, ZERO),
        (ZERO, ZERO, ZERO, ZERO),
    )
    assert ip.lower.entries == ((ZERO, ZERO), (ZERO, ZERO))


def test_interp_matrices_are_symmetric():
    for p in enumerate_proofs(6, ["X", "Y"]):
        ip = interp(p)
        for m in (ip.upper, ip.lower):
            n = len(m.dom)
            for r in range(n):
                for c in range(n):
                    assert m.entries[r][c] == m.entries[c][r]


def test_layout_widths_match_shapes():
    for p in enumerate_proofs(5, ["X", "Y"]):
        s = check(p)
        ip = interp(p)
        want_u = sum(u_width(f) for f in s.gamma) \
            + sum(u_width(a) + u_width(b) for a, b in s.delta)
        want_one = sum(shape(f).one_leaves for f in s.gamma) \
            + sum(shape(a).one_leaves + shape(b).one_leaves for a, b in s.delta)
        assert len(ip.upper.dom) == want_u == ip.layout.u_wires
        assert len(ip.lower.dom) == want_one == ip.layout.one_wires


def test_fold_eval_golden_eta(corpus):
    ip = interp(parse_proof(corpus["eta_axiom"]))
    w = Window(10, 0)
    # encoded n_alpha at the down-shift leaf maps to the up-shift leaf
    assert fold_eval(ip.upper, 0, w) == {1}
    # literal wires carry the identity: leaf 2 value 0 lands on leaf 1,
    # whose code for value 0 is 4
    assert fold_eval(ip.upper, 2, w) == {4}


def test_interp_cache_layers():
    p = parse_proof("(dn (up (ax X^) 1) 0)")
    base = InterpCache()
    ip1 = interp(p, cache=base)
    overlay = InterpCache(base)
    assert overlay.get(p) is ip1
    q = parse_proof("(up (ax X^) 1)")
    interp(q, cache=overlay)
    assert base.get(q) is None


def test_mp_factors_through_the_au_injection():
    # mp(A) is alpha^m into the in-A^U leaves padded by zero elsewhere,
    # for every formula of every enumerated sequent
    from mllp_goi.relcore import compose, quasi_inj, blockrel
    seen = set()
    for p in enumerate_proofs(5, ["X", "Y"]):
        s = check(p)
        for f in s.gamma + tuple(a for pair in s.delta for a in pair):
            if f in seen:
                continue
            seen.add(f)
            info = shape(f)
            m = info.one_leaves
            alpha_m = blockrel((ONE,) * m, (U,) * m,
                               [[POINT if r == c else ZERO for c in range(m)]
                                for r in range(m)])
            iface = (U,) * len(info.u_leaves)
            factored = compose(quasi_inj(iface, info.au_positions), alpha_m)
            assert factored == mp(f)


def test_retraction_atomic_is_the_primitive():
    from mllp_goi.relcore import r_alpha, bang_alpha
    r_x, bang_x = retraction_rA(X)
    assert r_x == r_alpha() and bang_x == bang_alpha()


def test_retraction_collapse_is_pointwise():
    # projecting the adjoined lower wires out of r_A leaves the leafwise
    # point collapse
    from mllp_goi.relcore import quasi_proj, compose
    for f in (Par(YN, XN), Down(Up(Tensor(X, Y)))):
        r_a, _ = retraction_rA(f)
        m = shape(f).one_leaves
        proj = quasi_proj(r_a.cod, list(range(m, 2 * m)))
        collapsed = compose(proj, r_a)
        for r in range(m):
            for c in range(m):
                assert collapsed.entries[r][c] == (POINT if r == c else ZERO)


def test_degenerate_down_rule_has_no_effect():
    # in the partial-injections reading the down rule only pads: the body
    # wires keep exactly the premise's entries and the fresh wire is cut off
    from mllp_goi.proof import DownRule, ParRule, UpRule, Ax
    prem = ParRule(UpRule(Ax(NegAtom("X")), 1), 0, 1)  # |- (X^ | up X)
    p = DownRule(prem, 0)
    ip_prem = interp(prem, Mode.PINJ_DEGENERATE)
    ip = interp(p, Mode.PINJ_DEGENERATE)
    n = len(ip_prem.upper.dom)
    # conclusion wires: fresh down wire first, then the premise wires
    for r in range(n):
        for c in range(n):
            assert ip.upper.entries[1 + r][1 + c] == ip_prem.upper.entries[r][c]
    assert all(e == ZERO for e in ip.upper.entries[0])
    assert all(row[0] == ZERO for row in ip.upper.entries)
