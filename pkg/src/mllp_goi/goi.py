"""Two-layered relational interpretation of polarized proofs.

Every formula A is assigned an upper interface (one U wire per leaf of its
unfolded tensor-of-U translation) and a lower interface (one 1 wire per
multipoint component).  A checked proof of `|- [delta], gamma` denotes a
pair of endo-matrices, one on each layer, over the interface ordered as:
the focused positive formula first (if any), then the negative gamma
formulas in order, then the cut pairs of delta.

The translation tables: atoms contribute a single in-A^U leaf; tensor and
par concatenate; `dn N` prepends a fresh down-shift wire (the only in-A^U
leaf, everything below moves to A^D); `up P` appends a fresh up-shift wire
likewise.  The lower interface keeps one 1 wire per in-A^U leaf.

Proof rules act as follows.  Axioms denote the structural dual-leaf pairing
(identity entries).  Cut, tensor and par only re-route wires.  The up rule
adjoins a disconnected fresh wire on the upper layer and deletes the lower
wires of its premise's positive.  The down rule adjoins a fresh wire that
is point-linked to every in-A^U leaf of the *side* gamma formulas (identity
links on the lower layer); in the degenerate partial-injections mode these
cross links vanish and the rule only pads.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .formula import (
    Atom,
    Bot,
    Down,
    Formula,
    NegAtom,
    One,
    Par,
    Polarity,
    Tensor,
    Up,
    polarity,
)
from .proof import (
    Ax,
    CutRule,
    DownRule,
    Exchange,
    ParRule,
    Proof,
    Sequent,
    TensorRule,
    UpRule,
    check,
)
from .relcore import (
    ID,
    ONE,
    POINT,
    U,
    WireType,
    ZERO,
    BlockRel,
    blockrel,
)


class UnitUnsupported(Exception):
    """The interpretation has no clause for the multiplicative units."""


class Mode(Enum):
    REL = "rel"
    PINJ_DEGENERATE = "pinj-degenerate"


class LeafRole(Enum):
    LITERAL = "literal"
    SHIFT_DOWN = "down"
    SHIFT_UP = "up"


@dataclass(frozen=True, slots=True)
class ULeaf:
    role: LeafRole
    in_au: bool
    pair_one: int | None  # paired lower wire, when the leaf is in A^U


@dataclass(frozen=True, slots=True)
class ShapeInfo:
    formula: Formula
    one_leaves: int
    u_leaves: tuple[ULeaf, ...]

    @property
    def au_positions(self) -> list[int]:
        return [i for i, leaf in enumerate(self.u_leaves) if leaf.in_au]


_shape_cache: dict[Formula, ShapeInfo] = {}


def shape(a: Formula) -> ShapeInfo:
    """Interface shape of a formula; raises `UnitUnsupported` on one/bot."""
    hit = _shape_cache.get(a)
    if hit is not None:
        return hit
    if isinstance(a, (One, Bot)):
        raise UnitUnsupported(f"no interpretation for {a}")
    if isinstance(a, (Atom, NegAtom)):
        info = ShapeInfo(a, 1, (ULeaf(LeafRole.LITERAL, True, 0),))
    elif isinstance(a, (Tensor, Par)):
        l, r = shape(a.left), shape(a.right)
        shifted = tuple(
            ULeaf(u.role, u.in_au,
                  u.pair_one + l.one_leaves if u.pair_one is not None else None)
            for u in r.u_leaves
        )
        info = ShapeInfo(a, l.one_leaves + r.one_leaves, l.u_leaves + shifted)
    elif isinstance(a, Down):
        body = shape(a.body)
        demoted = tuple(ULeaf(u.role, False, None) for u in body.u_leaves)
        info = ShapeInfo(a, 1, (ULeaf(LeafRole.SHIFT_DOWN, True, 0),) + demoted)
    elif isinstance(a, Up):
        body = shape(a.body)
        demoted = tuple(ULeaf(u.role, False, None) for u in body.u_leaves)
        info = ShapeInfo(a, 1, demoted + (ULeaf(LeafRole.SHIFT_UP, True, 0),))
    else:
        raise TypeError(f"not a formula: {a!r}")
    _shape_cache[a] = info
    return info


def u_width(a: Formula) -> int:
    return len(shape(a).u_leaves)


def one_width(a: Formula) -> int:
    return shape(a).one_leaves


def u_pairing(a: Formula) -> tuple[int, ...]:
    """Leaf bijection between the upper interfaces of a and its dual.

    pair[i] is the leaf of negate(a) matched with leaf i of a; shifts swap
    their fresh end wires, everything else is matched componentwise.
    """
    if isinstance(a, (Atom, NegAtom)):
        return (0,)
    if isinstance(a, (Tensor, Par)):
        lp = u_pairing(a.left)
        rp = u_pairing(a.right)
        off = u_width(a.left)  # negation preserves leaf counts
        return lp + tuple(off + k for k in rp)
    if isinstance(a, Down):
        body = u_pairing(a.body)
        return (u_width(a.body),) + body
    if isinstance(a, Up):
        body = u_pairing(a.body)
        return tuple(1 + k for k in body) + (0,)
    raise UnitUnsupported(f"no interpretation for {a}")


def one_pairing(a: Formula) -> tuple[int, ...]:
    """Lower-layer analogue of `u_pairing` on multipoint wires."""
    if isinstance(a, (Atom, NegAtom)):
        return (0,)
    if isinstance(a, (Tensor, Par)):
        lp = one_pairing(a.left)
        rp = one_pairing(a.right)
        off = one_width(a.left)
        return lp + tuple(off + k for k in rp)
    if isinstance(a, (Down, Up)):
        return (0,)
    raise UnitUnsupported(f"no interpretation for {a}")


def mp(a: Formula) -> BlockRel:
    """Multipoint of A: one point per lower wire, landing on its in-A^U leaf."""
    info = shape(a)
    rows = [[ZERO] * info.one_leaves for _ in info.u_leaves]
    for i, leaf in enumerate(info.u_leaves):
        if leaf.in_au:
            rows[i][leaf.pair_one] = POINT
    return blockrel((ONE,) * info.one_leaves, (U,) * len(info.u_leaves), rows)


def retraction_rA(a: Formula) -> tuple[BlockRel, BlockRel]:
    """Leafwise lifted retraction (r_A, !_A) of A^U along the multipoint.

    r_A : A^U -> A^U (x) 1_A keeps each leaf and collapses it onto its
    paired lower wire; !_A is the converse, with !_A . r_A = Id.
    """
    info = shape(a)
    aus = info.au_positions
    m = info.one_leaves
    r_rows = []
    for k in range(len(aus)):
        r_rows.append([ID if c == k else ZERO for c in range(len(aus))])
    for leaf_idx in aus:
        pair = info.u_leaves[leaf_idx].pair_one
        r_rows.append([POINT if info.u_leaves[aus[c]].pair_one == pair else ZERO
                       for c in range(len(aus))])
    dom = (U,) * len(aus)
    cod = (U,) * len(aus) + (ONE,) * m
    r_a = blockrel(dom, cod, r_rows)
    bang_rows = [[r_a.entries[r][c] for r in range(len(cod))] for c in range(len(aus))]
    bang_a = blockrel(cod, dom, bang_rows)
    return r_a, bang_a


# --- interface layout of a sequent ---

SlotKey = tuple  # ("gamma", i) | ("delta", k, side)


@dataclass(frozen=True, slots=True)
class Span:
    u_start: int
    u_len: int
    one_start: int
    one_len: int


@dataclass(frozen=True, slots=True)
class Layout:
    sequent: Sequent
    order: tuple[SlotKey, ...]
    spans: dict
    u_wires: int
    one_wires: int
    gamma_u: int
    gamma_one: int

    def span(self, key: SlotKey) -> Span:
        return self.spans[key]

    def formula_at(self, key: SlotKey) -> Formula:
        if key[0] == "gamma":
            return self.sequent.gamma[key[1]]
        return self.sequent.delta[key[1]][key[2]]

    def to_json(self) -> dict:
        out = []
        for key in self.order:
            sp = self.spans[key]
            out.append({
                "slot": list(key),
                "formula": str(self.formula_at(key)),
                "u_span": [sp.u_start, sp.u_len],
                "one_span": [sp.one_start, sp.one_len],
            })
        return {"interface": out,
                "u_wires": self.u_wires, "one_wires": self.one_wires,
                "gamma_u": self.gamma_u, "gamma_one": self.gamma_one}


def build_layout(s: Sequent) -> Layout:
    """Interface order: positive gamma formula first, then the negative
    gamma formulas in sequent order, then the delta pairs in order."""
    pos = [i for i, f in enumerate(s.gamma) if polarity(f) is Polarity.POSITIVE]
    order: list[SlotKey] = [("gamma", i) for i in pos]
    order += [("gamma", i) for i, f in enumerate(s.gamma)
              if polarity(f) is Polarity.NEGATIVE]
    gamma_slots = len(order)
    for k in range(len(s.delta)):
        order.append(("delta", k, 0))
        order.append(("delta", k, 1))
    spans = {}
    u_at = one_at = 0
    gamma_u = gamma_one = 0
    for n, key in enumerate(order):
        f = s.gamma[key[1]] if key[0] == "gamma" else s.delta[key[1]][key[2]]
        info = shape(f)
        spans[key] = Span(u_at, len(info.u_leaves), one_at, info.one_leaves)
        u_at += len(info.u_leaves)
        one_at += info.one_leaves
        if n < gamma_slots:
            gamma_u, gamma_one = u_at, one_at
    return Layout(s, tuple(order), spans, u_at, one_at, gamma_u, gamma_one)


@dataclass(frozen=True, slots=True)
class InterpPair:
    upper: BlockRel
    lower: BlockRel
    layout: Layout

    def to_json(self) -> dict:
        return {"upper": self.upper.to_json(), "lower": self.lower.to_json(),
                "layout": self.layout.to_json()}


class InterpCache:
    """Id-keyed memo for interpretations; layered so that a long-lived base
    (shared enumeration levels) survives while per-run overlays are dropped."""

    def __init__(self, base: "InterpCache | None" = None):
        self._base = base
        self._store: dict[int, tuple[Proof, InterpPair]] = {}

    def get(self, p: Proof) -> InterpPair | None:
        hit = self._store.get(id(p))
        if hit is not None and hit[0] is p:
            return hit[1]
        if self._base is not None:
            return self._base.get(p)
        return None

    def put(self, p: Proof, ip: InterpPair) -> None:
        self._store[id(p)] = (p, ip)

    def clear(self) -> None:
        self._store.clear()


def _reindexed(new_u: int, new_one: int,
               src_u: list[int | None], src_one: list[int | None],
               uppers: list[BlockRel], lowers: list[BlockRel]):
    """Combined re-indexing of block-diagonal premises into new interfaces.

    src_* give, per conclusion wire, the source wire in the concatenated
    premise interface, or None for a fresh wire.  Returns mutable row lists.
    """
    def pick(mats: list[BlockRel], src: list[int | None], width: int):
        block = []
        offs = []
        at = 0
        for k, m in enumerate(mats):
            offs.append(at)
            block.extend([k] * len(m.dom))
            at += len(m.dom)

        def entry(r_src: int, c_src: int) -> int:
            k = block[r_src]
            if block[c_src] != k:
                return ZERO
            return mats[k].entries[r_src - offs[k]][c_src - offs[k]]

        rows = []
        for r in range(width):
            sr = src[r]
            if sr is None:
                rows.append([ZERO] * width)
                continue
            row = []
            for c in range(width):
                sc = src[c]
                row.append(ZERO if sc is None else entry(sr, sc))
            rows.append(row)
        return rows

    return (pick(uppers, src_u, new_u), pick(lowers, src_one, new_one))


def interp(p: Proof, mode: Mode = Mode.REL,
           cache: InterpCache | None = None) -> InterpPair:
    """Two-layered denotation of a checked proof (no units)."""
    if cache is not None:
        hit = cache.get(p)
        if hit is not None:
            return hit
    ip = _interp(p, mode, cache)
    if cache is not None:
        cache.put(p, ip)
    return ip


def _wire_types(layout: Layout) -> tuple[tuple[WireType, ...], tuple[WireType, ...]]:
    return (U,) * layout.u_wires, (ONE,) * layout.one_wires


def _finish(layout: Layout, urows, lrows) -> InterpPair:
    ut, ot = _wire_types(layout)
    return InterpPair(blockrel(ut, ut, urows), blockrel(ot, ot, lrows), layout)


def _premise_src(layout: Layout, conc: Layout, mapping: dict) -> tuple[list, list]:
    """Source wire lists for a conclusion whose every slot comes from one
    premise interface (mapping: conclusion slot key -> premise slot key)."""
    src_u: list[int | None] = [None] * conc.u_wires
    src_one: list[int | None] = [None] * conc.one_wires
    for ckey, pkey in mapping.items():
        cs = conc.span(ckey)
        ps = layout.span(pkey)
        for k in range(cs.u_len):
            src_u[cs.u_start + k] = ps.u_start + k
        for k in range(cs.one_len):
            src_one[cs.one_start + k] = ps.one_start + k
    return src_u, src_one


def _interp(p: Proof, mode: Mode, cache: InterpCache | None) -> InterpPair:
    s = check(p)

    if isinstance(p, Ax):
        layout = build_layout(s)
        n_f = p.formula
        sp_n = layout.span(("gamma", 0))
        sp_d = layout.span(("gamma", 1))
        urows = [[ZERO] * layout.u_wires for _ in range(layout.u_wires)]
        lrows = [[ZERO] * layout.one_wires for _ in range(layout.one_wires)]
        for i, k in enumerate(u_pairing(n_f)):
            a, b = sp_n.u_start + i, sp_d.u_start + k
            urows[a][b] = ID
            urows[b][a] = ID
        for i, k in enumerate(one_pairing(n_f)):
            a, b = sp_n.one_start + i, sp_d.one_start + k
            lrows[a][b] = ID
            lrows[b][a] = ID
        return _finish(layout, urows, lrows)

    if isinstance(p, Exchange):
        prem = interp(p.premise, mode, cache)
        layout = build_layout(s)
        mapping = {("gamma", i): ("gamma", p.perm[i]) for i in range(len(s.gamma))}
        for k in range(len(s.delta)):
            mapping[("delta", k, 0)] = ("delta", k, 0)
            mapping[("delta", k, 1)] = ("delta", k, 1)
        src_u, src_one = _premise_src(prem.layout, layout, mapping)
        urows, lrows = _reindexed(layout.u_wires, layout.one_wires,
                                  src_u, src_one, [prem.upper], [prem.lower])
        return _finish(layout, urows, lrows)

    if isinstance(p, ParRule):
        prem = interp(p.premise, mode, cache)
        layout = build_layout(s)
        ps = check(p.premise)
        conc_index = [k for k in range(len(ps.gamma)) if k != p.j]
        mapping = {}
        for ci, pi in enumerate(conc_index):
            if pi != p.i:
                mapping[("gamma", ci)] = ("gamma", pi)
        for k in range(len(s.delta)):
            mapping[("delta", k, 0)] = ("delta", k, 0)
            mapping[("delta", k, 1)] = ("delta", k, 1)
        src_u, src_one = _premise_src(prem.layout, layout, mapping)
        fused_ci = conc_index.index(p.i)
        cs = layout.span(("gamma", fused_ci))
        si = prem.layout.span(("gamma", p.i))
        sj = prem.layout.span(("gamma", p.j))
        for k in range(si.u_len):
            src_u[cs.u_start + k] = si.u_start + k
        for k in range(sj.u_len):
            src_u[cs.u_start + si.u_len + k] = sj.u_start + k
        for k in range(si.one_len):
            src_one[cs.one_start + k] = si.one_start + k
        for k in range(sj.one_len):
            src_one[cs.one_start + si.one_len + k] = sj.one_start + k
        urows, lrows = _reindexed(layout.u_wires, layout.one_wires,
                                  src_u, src_one, [prem.upper], [prem.lower])
        return _finish(layout, urows, lrows)

    if isinstance(p, UpRule):
        prem = interp(p.premise, mode, cache)
        layout = build_layout(s)
        mapping = {("gamma", k): ("gamma", k)
                   for k in range(len(s.gamma)) if k != p.i}
        for k in range(len(s.delta)):
            mapping[("delta", k, 0)] = ("delta", k, 0)
            mapping[("delta", k, 1)] = ("delta", k, 1)
        src_u, src_one = _premise_src(prem.layout, layout, mapping)
        cs = layout.span(("gamma", p.i))
        ps = prem.layout.span(("gamma", p.i))
        for k in range(ps.u_len):  # body leaves keep their premise wires
            src_u[cs.u_start + k] = ps.u_start + k
        # cs.u_start + ps.u_len is the fresh up-shift wire; the single lower
        # wire is fresh and the premise's positive lower wires are dropped
        urows, lrows = _reindexed(layout.u_wires, layout.one_wires,
                                  src_u, src_one, [prem.upper], [prem.lower])
        return _finish(layout, urows, lrows)

    if isinstance(p, DownRule):
        prem = interp(p.premise, mode, cache)
        layout = build_layout(s)
        mapping = {("gamma", k): ("gamma", k)
                   for k in range(len(s.gamma)) if k != p.i}
        for k in range(len(s.delta)):
            mapping[("delta", k, 0)] = ("delta", k, 0)
            mapping[("delta", k, 1)] = ("delta", k, 1)
        src_u, src_one = _premise_src(prem.layout, layout, mapping)
        cs = layout.span(("gamma", p.i))
        ps = prem.layout.span(("gamma", p.i))
        fresh_u = cs.u_start
        for k in range(ps.u_len):
            src_u[fresh_u + 1 + k] = ps.u_start + k
        fresh_one = cs.one_start
        urows, lrows = _reindexed(layout.u_wires, layout.one_wires,
                                  src_u, src_one, [prem.upper], [prem.lower])
        if mode is Mode.REL:
            for k in range(len(s.gamma)):
                if k == p.i:
                    continue
                g_span = layout.span(("gamma", k))
                g_info = shape(s.gamma[k])
                for leaf in g_info.au_positions:
                    w = g_span.u_start + leaf
                    urows[fresh_u][w] = POINT
                    urows[w][fresh_u] = POINT
                for o in range(g_span.one_len):
                    w = g_span.one_start + o
                    lrows[fresh_one][w] = ID
                    lrows[w][fresh_one] = ID
        return _finish(layout, urows, lrows)

    if isinstance(p, (TensorRule, CutRule)):
        ip1 = interp(p.left, mode, cache)
        ip2 = interp(p.right, mode, cache)
        s1, s2 = check(p.left), check(p.right)
        layout = build_layout(s)
        off_u = ip1.layout.u_wires
        off_one = ip1.layout.one_wires

        def from1(key):
            sp = ip1.layout.span(key)
            return sp, 0, 0

        def from2(key):
            sp = ip2.layout.span(key)
            return sp, off_u, off_one

        src_u: list[int | None] = [None] * layout.u_wires
        src_one: list[int | None] = [None] * layout.one_wires

        def route(ckey, source):
            sp, du, done = source
            cs = layout.span(ckey)
            for k in range(cs.u_len):
                src_u[cs.u_start + k] = du + sp.u_start + k
            for k in range(cs.one_len):
                src_one[cs.one_start + k] = done + sp.one_start + k

        n1 = len(s1.gamma) - 1
        n2 = len(s2.gamma) - 1
        if isinstance(p, TensorRule):
            # conclusion gamma = M ++ N ++ [P (x) Q]
            for k in range(n1):
                route(("gamma", k), from1(("gamma", k)))
            for k in range(n2):
                route(("gamma", n1 + k), from2(("gamma", k)))
            tens = ("gamma", n1 + n2)
            cs = layout.span(tens)
            sp_p = ip1.layout.span(("gamma", n1))
            sp_q = ip2.layout.span(("gamma", n2))
            for k in range(sp_p.u_len):
                src_u[cs.u_start + k] = sp_p.u_start + k
            for k in range(sp_q.u_len):
                src_u[cs.u_start + sp_p.u_len + k] = off_u + sp_q.u_start + k
            for k in range(sp_p.one_len):
                src_one[cs.one_start + k] = sp_p.one_start + k
            for k in range(sp_q.one_len):
                src_one[cs.one_start + sp_p.one_len + k] = off_one + sp_q.one_start + k
        else:
            for k in range(n1):
                route(("gamma", k), from1(("gamma", k)))
            for k in range(n2):
                route(("gamma", n1 + k), from2(("gamma", k)))
            kd = len(s1.delta) + len(s2.delta)
            route(("delta", kd, 0), from1(("gamma", n1)))
            route(("delta", kd, 1), from2(("gamma", n2)))
        for k in range(len(s1.delta)):
            route(("delta", k, 0), from1(("delta", k, 0)))
            route(("delta", k, 1), from1(("delta", k, 1)))
        for k in range(len(s2.delta)):
            route(("delta", len(s1.delta) + k, 0), from2(("delta", k, 0)))
            route(("delta", len(s1.delta) + k, 1), from2(("delta", k, 1)))
        urows, lrows = _reindexed(layout.u_wires, layout.one_wires,
                                  src_u, src_one,
                                  [ip1.upper, ip2.upper], [ip1.lower, ip2.lower])
        return _finish(layout, urows, lrows)

    raise TypeError(f"not a proof: {p!r}")
