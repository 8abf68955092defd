"""Acceptance suite.

One test per criterion, each printing a single PASS/FAIL line; run with
``pytest tests/test_acceptance.py -v -s``.  The enumeration-driven checks
(criteria 4-6, 8, 10) are exhaustive at their stated rule budgets over the
atoms X, Y and take a few minutes in total; everything else is fast.
"""

import sys
import time

from mllp_goi.cutelim import RedexKind, reducible_cuts, step
from mllp_goi.exec_formula import check_focus, ex, sigma_of, _mp_into
from mllp_goi.goi import build_layout, interp
from mllp_goi.proof import Sequent, check, parse_proof
from mllp_goi.relcore import ID, POINT, ZERO
from mllp_goi.verify import (
    closure_suite,
    codec_suite,
    converse_suite,
    focus_suite,
    intrel_suite,
    invariance_suite,
    laws_suite,
)

ATOMS = ["X", "Y"]


def _report(num: int, label: str, ok: bool, started: float, note: str = ""):
    state = "PASS" if ok else "FAIL"
    extra = f" ({note})" if note else ""
    print(f"{state} criterion {num}: {label}{extra} "
          f"[{time.time() - started:.1f}s]", file=sys.stderr)
    assert ok, f"criterion {num} failed: {label} {note}"


def test_criterion_1_golden_eta_axiom(corpus):
    t0 = time.time()
    ip = interp(parse_proof(corpus["eta_axiom"]))
    want_upper = (
        (ZERO, ZERO, ZERO, POINT),
        (ZERO, ZERO, ID, ZERO),
        (ZERO, ID, ZERO, ZERO),
        (POINT, ZERO, ZERO, ZERO),
    )
    want_lower = ((ZERO, ID), (ID, ZERO))
    ok = ip.upper.entries == want_upper and ip.lower.entries == want_lower
    _report(1, "golden matrices for the eta-expanded axiom", ok, t0)


def test_criterion_2_golden_shift_tensor(corpus):
    t0 = time.time()
    ip = interp(parse_proof(corpus["shift_tensor"]))
    # wires [U_dn, U_X, U_Y, U_up | U_Yn, U_Xn]; the two displayed factors
    # are the complementary off-diagonal blocks, the rest is zero
    factor_into_par = [
        [ZERO, ZERO, ZERO],   # up-shift row: severed
        [POINT, ZERO, ID],    # Y^ from {dn, Y}
        [POINT, ID, ZERO],    # X^ from {dn, X}
    ]
    factor_into_tensor = [
        [ZERO, POINT, POINT],  # dn from {Y^, X^}
        [ZERO, ZERO, ID],      # X from X^
        [ZERO, ID, ZERO],      # Y from Y^
    ]
    rows_par = [3, 4, 5]
    cols_par = [0, 1, 2]
    got_a = [[ip.upper.entries[r][c] for c in cols_par] for r in rows_par]
    got_b = [[ip.upper.entries[r][c] for c in [3, 4, 5]] for r in [0, 1, 2]]
    zero_blocks = all(
        ip.upper.entries[r][c] == ZERO
        for r, c in [(r, c) for r in (0, 1, 2) for c in (0, 1, 2)]
        + [(r, c) for r in (3, 4, 5) for c in (3, 4, 5)])
    want_lower = ((ZERO, ID, ID), (ID, ZERO, ZERO), (ID, ZERO, ZERO))
    ok = (got_a == factor_into_par and got_b == factor_into_tensor
          and zero_blocks and ip.lower.entries == want_lower)
    _report(2, "golden matrices for the shifted tensor proof", ok, t0)


def _delta_pattern(i: int):
    # wires [dn1, up3 | up1, dn2, up2, dn3]; the box link moves with i
    m = [[ZERO] * 6 for _ in range(6)]
    for a, b in [(1, 5), (3, 4), (0, (None, 2, 4, 1)[i])]:
        m[a][b] = m[b][a] = ID
    return tuple(tuple(r) for r in m)


def test_criterion_3_box_extrusion(corpus):
    t0 = time.time()
    pis = [parse_proof(corpus[f"ex23_pi{i}"]) for i in (1, 2, 3)]
    box1 = [r for r in reducible_cuts(pis[0])
            if r.kind == RedexKind.BOX_EXTRUSION]
    box2 = [r for r in reducible_cuts(pis[1])
            if r.kind == RedexKind.BOX_EXTRUSION]
    ok = (len(box1) == 1 and step(pis[0], box1[0]) == pis[1]
          and len(box2) == 1 and step(pis[1], box2[0]) == pis[2])
    ref = None
    for i, p in enumerate(pis, start=1):
        ip, sigma = sigma_of(p)
        ok = ok and ip.lower.entries == _delta_pattern(i)
        up, low = ex(ip, sigma)
        ok = ok and low.entries == ((ZERO, ID), (ID, ZERO))
        ref = up if ref is None else ref
        ok = ok and up == ref
    _report(3, "box extrusion chain and delta-pattern matrices", ok, t0)


def test_criterion_4_invariance_budget_10():
    t0 = time.time()
    res = invariance_suite(10, ATOMS)
    _report(4, "execution formula invariance, all proofs <= 10 rules",
            res.passed, t0,
            f"{res.total} proofs, longest normalization "
            f"{res.detail['longest_normalization']} steps"
            + (f", failures {res.failures[:2]}" if res.failures else ""))


def test_criterion_5_focus_budget_10(corpus):
    t0 = time.time()
    res = focus_suite(10, ATOMS)
    ok = res.passed
    # the two worked instances: composite = one point / two points
    eta = parse_proof(corpus["eta_axiom"])
    ip, sigma = sigma_of(eta)
    up, _ = ex(ip, sigma)
    layout = build_layout(Sequent(check(eta).gamma, ()))
    lhs = compose_lhs(up, layout, 0)
    ok = ok and lhs == ((ZERO,), (ZERO,), (ZERO,), (POINT,))
    ok = ok and check_focus(eta).nontrivial
    st = parse_proof(corpus["shift_tensor"])
    ip2, sigma2 = sigma_of(st)
    up2, _ = ex(ip2, sigma2)
    layout2 = build_layout(Sequent(check(st).gamma, ()))
    lhs2 = compose_lhs(up2, layout2, check(st).positives()[0])
    ok = ok and lhs2 == ((ZERO,), (ZERO,), (ZERO,), (ZERO,), (POINT,), (POINT,))
    ok = ok and check_focus(st).nontrivial
    _report(5, "multipoint square for all focused proofs <= 10 rules",
            ok, t0, f"{res.total} focused proofs"
            + (f", failures {res.failures[:2]}" if res.failures else ""))


def compose_lhs(up, layout, pos):
    from mllp_goi.relcore import compose
    return compose(up, _mp_into(layout, [("gamma", pos)])).entries


def test_criterion_6_converse_budget_8():
    t0 = time.time()
    res = converse_suite(8, ATOMS)
    _report(6, "no nontrivial commutation around shifted negatives <= 8 rules",
            res.passed, t0, f"{res.total} squares")


def test_criterion_7_model_laws():
    t0 = time.time()
    res = laws_suite(seed=2026, samples=1000, window_size=16)
    _report(7, "trace and retraction laws vs the window oracle",
            res.passed, t0, f"{res.total} checks"
            + (f", failures {res.failures[:3]}" if res.failures else ""))


def test_criterion_8_entry_closure_budget_8():
    t0 = time.time()
    res = closure_suite(8, ATOMS, window_size=16)
    _report(8, "entry algebra lossless on the window, proofs <= 8 rules",
            res.passed, t0, f"{res.total} proofs")


def test_criterion_9_intrel_suite():
    t0 = time.time()
    res = intrel_suite(seed=2026, samples=500)
    ok = res.passed and res.elapsed < 60
    _report(9, "compact polarity suite (category laws, closure, adjunction)",
            ok, t0, f"{res.total} checks")


def test_criterion_10_codec_budget_6():
    t0 = time.time()
    res = codec_suite(6, ATOMS, window_size=16)
    _report(10, "folding codec and pointwise folded evaluation, <= 6 rules",
            res.passed, t0, f"{res.total} checks")
