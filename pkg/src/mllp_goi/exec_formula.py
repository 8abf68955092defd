"""Execution formulas over the two-layered interpretation, and the three
theorem checks built on them.

`ex` traces out the cut wires of `(Id (x) sigma) . m` at each layer, where
`sigma` swaps the two interfaces of every cut pair along the structural
duality pairing.  The checks:

- `check_invariance`: the execution formula is unchanged by every rewrite
  step, and on the normal form it *is* the interpretation (run per proof).
- `check_focus`: for a focused conclusion, pushing the positive formula's
  multipoint through the upper execution formula agrees with pushing the
  lower execution formula into the negative context's multipoint, and the
  lower result stays inside the context's wires.
- `check_converse`: on enumerated nonfocused provable sequents, the same
  square never commutes nontrivially around a shifted negative formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cutelim import Strategy, normalize
from .formula import Polarity, contains_shift, polarity
from .goi import (
    InterpCache,
    InterpPair,
    Layout,
    Mode,
    build_layout,
    interp,
    mp,
    one_pairing,
    u_pairing,
)
from .proof import Proof, Sequent, check, enumerate_proofs, format_proof, is_focused
from .relcore import (
    ID,
    BlockRel,
    ZERO,
    blockrel,
    compose,
    id_rel,
    quasi_inj,
    quasi_proj,
    ranges_over,
    restrict_cols,
    trace,
    zero,
)


class NotFocused(Exception):
    pass


@dataclass(frozen=True, slots=True)
class CutSymmetry:
    upper: BlockRel
    lower: BlockRel


def build_sigma(layout: Layout) -> CutSymmetry:
    """Per-pair swap of the cut interfaces along the duality pairing."""
    s = layout.sequent
    du = layout.u_wires - layout.gamma_u
    done = layout.one_wires - layout.gamma_one
    urows = [[ZERO] * du for _ in range(du)]
    lrows = [[ZERO] * done for _ in range(done)]
    for k, (a, _b) in enumerate(s.delta):
        sp_a = layout.span(("delta", k, 0))
        sp_b = layout.span(("delta", k, 1))
        for i, t in enumerate(u_pairing(a)):
            r = sp_b.u_start + t - layout.gamma_u
            c = sp_a.u_start + i - layout.gamma_u
            urows[r][c] = ID
            urows[c][r] = ID
        for i, t in enumerate(one_pairing(a)):
            r = sp_b.one_start + t - layout.gamma_one
            c = sp_a.one_start + i - layout.gamma_one
            lrows[r][c] = ID
            lrows[c][r] = ID
    ut = (layout.u_wires - layout.gamma_u)
    ot = (layout.one_wires - layout.gamma_one)
    from .relcore import U, ONE
    return CutSymmetry(
        blockrel((U,) * ut, (U,) * ut, urows),
        blockrel((ONE,) * ot, (ONE,) * ot, lrows),
    )


def sigma_of(p: Proof, mode: Mode = Mode.REL,
             cache: InterpCache | None = None) -> tuple[InterpPair, CutSymmetry]:
    ip = interp(p, mode, cache)
    return ip, build_sigma(ip.layout)


def ex(ip: InterpPair, sigma: CutSymmetry) -> tuple[BlockRel, BlockRel]:
    """Trace over the cut wires of (Id (x) sigma) . layer, per layer."""
    layout = ip.layout
    gu, go = layout.gamma_u, layout.gamma_one
    du = layout.u_wires - gu
    done = layout.one_wires - go
    if (len(sigma.upper.dom), len(sigma.lower.dom)) != (du, done):
        raise ValueError("cut symmetry does not match the layout")
    from .relcore import tensor as rtensor
    up = trace(compose(rtensor(id_rel(ip.upper.dom[:gu]), sigma.upper), ip.upper), du)
    low = trace(compose(rtensor(id_rel(ip.lower.dom[:go]), sigma.lower), ip.lower), done)
    return up, low


# --- reports ---

@dataclass(slots=True)
class InvarianceReport:
    proof: str
    passed: bool
    steps: int
    failure: dict | None = None

    def to_json(self) -> dict:
        out = {"proof": self.proof, "passed": self.passed, "steps": self.steps}
        if self.failure:
            out["failure"] = self.failure
        return out


@dataclass(slots=True)
class FocusReport:
    proof: str
    commutes: bool
    nontrivial: bool
    range_ok: bool
    witnesses: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.commutes and self.range_ok

    def to_json(self) -> dict:
        return {"proof": self.proof, "commutes": self.commutes,
                "nontrivial": self.nontrivial, "range_ok": self.range_ok,
                "passed": self.passed, "witnesses": self.witnesses}


@dataclass(slots=True)
class ConverseReport:
    proof: str
    formula: str
    trivial: bool
    commutes: bool

    @property
    def violation(self) -> bool:
        return self.commutes and not self.trivial

    def to_json(self) -> dict:
        return {"proof": self.proof, "formula": self.formula,
                "trivial": self.trivial, "commutes": self.commutes,
                "violation": self.violation}


def _first_diff(a: BlockRel, b: BlockRel) -> dict | None:
    if a.dom != b.dom or a.cod != b.cod:
        return {"reason": "interface mismatch"}
    for r in range(len(a.cod)):
        for c in range(len(a.dom)):
            if a.entries[r][c] != b.entries[r][c]:
                return {"row": r, "col": c,
                        "left": a.entries[r][c], "right": b.entries[r][c]}
    return None


def check_invariance(p: Proof, mode: Mode = Mode.REL,
                     strategy: Strategy = Strategy.LEFTMOST,
                     cache: InterpCache | None = None) -> InvarianceReport:
    """Prop-style invariance: Ex is constant along normalization and equals
    the interpretation of the (cut-free) normal form."""
    label = format_proof(p)
    local = InterpCache(cache)
    ip0, s0 = sigma_of(p, mode, local)
    ref_up, ref_low = ex(ip0, s0)
    nf, steps = normalize(p, strategy)
    for idx, (redex, q) in enumerate(steps):
        ipq, sq = sigma_of(q, mode, local)
        got_up, got_low = ex(ipq, sq)
        for layer, ref, got in (("upper", ref_up, got_up), ("lower", ref_low, got_low)):
            diff = _first_diff(ref, got)
            if diff:
                return InvarianceReport(label, False, idx + 1,
                                        {"step": idx, "redex": redex.label(),
                                         "layer": layer, **diff})
    ip_nf = interp(nf, mode, local)
    for layer, ref, got in (("upper", ref_up, ip_nf.upper), ("lower", ref_low, ip_nf.lower)):
        diff = _first_diff(ref, got)
        if diff:
            return InvarianceReport(label, False, len(steps),
                                    {"step": "normal-form", "layer": layer, **diff})
    return InvarianceReport(label, True, len(steps))


def _mp_into(layout: Layout, keys: list, total_u: BlockRel | None = None) -> BlockRel:
    """Multipoint of the named gamma slots, injected into the full U interface."""
    from .relcore import tensor as rtensor, U, ONE
    mats = [mp(layout.formula_at(k)) for k in keys]
    block = mats[0]
    for m in mats[1:]:
        block = rtensor(block, m)
    positions = []
    for k in keys:
        sp = layout.span(k)
        positions.extend(range(sp.u_start, sp.u_start + sp.u_len))
    iface = (U,) * layout.u_wires
    return compose(quasi_inj(iface, positions), block)


def check_focus(p: Proof, mode: Mode = Mode.REL,
                cache: InterpCache | None = None) -> FocusReport:
    """The multipoint square of a focused proof: Ex . mp(P) = mp(N) . Ex."""
    s = check(p)
    if not is_focused(s):
        raise NotFocused(f"conclusion is not focused: {s}")
    pos = s.positives()[0]
    label = format_proof(p)
    local = InterpCache(cache)
    ip, sigma = sigma_of(p, mode, local)
    up, low = ex(ip, sigma)
    gamma_layout = build_layout(Sequent(s.gamma, ()))
    pkey = ("gamma", pos)
    nkeys = [("gamma", i) for i in range(len(s.gamma)) if i != pos]

    psp = gamma_layout.span(pkey)
    lhs = compose(up, _mp_into(gamma_layout, [pkey]))

    restricted = restrict_cols(low, list(range(psp.one_start, psp.one_start + psp.one_len)))
    n_rows = []
    for k in nkeys:
        sp = gamma_layout.span(k)
        n_rows.extend(range(sp.one_start, sp.one_start + sp.one_len))
    range_ok = ranges_over(restricted, n_rows)

    witnesses = []
    if nkeys:
        proj = quasi_proj(low.cod, n_rows)
        rhs = compose(_mp_into(gamma_layout, nkeys), compose(proj, restricted))
    else:
        rhs = zero(restricted.dom, lhs.cod)
    diff = _first_diff(lhs, rhs)
    commutes = diff is None
    if diff:
        witnesses.append(diff)
    nontrivial = any(e != ZERO for row in lhs.entries for e in row)
    return FocusReport(label, commutes, nontrivial, range_ok, witnesses)


def check_converse(budget: int, atoms: list[str], mode: Mode = Mode.REL,
                   cache: InterpCache | None = None) -> list[ConverseReport]:
    """Scan enumerated nonfocused proofs: around every shifted negative
    formula the multipoint square must not commute nontrivially."""
    reports: list[ConverseReport] = []
    for p in enumerate_proofs(budget, atoms):
        s = check(p)
        if is_focused(s):
            continue
        for i, f in enumerate(s.gamma):
            if polarity(f) is not Polarity.NEGATIVE or not contains_shift(f):
                continue
            reports.append(_converse_square(p, i, mode, cache))
    return reports


def _converse_square(p: Proof, i: int, mode: Mode,
                     cache: InterpCache | None) -> ConverseReport:
    s = check(p)
    local = InterpCache(cache)
    ip, sigma = sigma_of(p, mode, local)
    up, low = ex(ip, sigma)
    gamma_layout = build_layout(Sequent(s.gamma, ()))
    akey = ("gamma", i)
    mkeys = [("gamma", k) for k in range(len(s.gamma)) if k != i]
    asp = gamma_layout.span(akey)
    lhs = compose(up, _mp_into(gamma_layout, [akey]))
    restricted = restrict_cols(low, list(range(asp.one_start, asp.one_start + asp.one_len)))
    m_rows = []
    for k in mkeys:
        sp = gamma_layout.span(k)
        m_rows.extend(range(sp.one_start, sp.one_start + sp.one_len))
    range_ok = ranges_over(restricted, m_rows)
    if mkeys:
        proj = quasi_proj(low.cod, m_rows)
        rhs = compose(_mp_into(gamma_layout, mkeys), compose(proj, restricted))
    else:
        rhs = zero(restricted.dom, lhs.cod)
    commutes = range_ok and _first_diff(lhs, rhs) is None
    trivial = all(e == ZERO for row in lhs.entries for e in row)
    return ConverseReport(format_proof(p), str(s.gamma[i]), trivial, commutes)
