"""Exact finite fragment of the category of sets and relations.

Wires are typed `U` (a copy of the naturals with a distinguished point) or
`1` (a singleton).  Every morphism that arises from interpreting proofs has,
between any two wires, one of exactly three relations: the empty relation,
the singleton pairing of the distinguished points, or the full identity.
`BlockRel` stores that three-valued entry matrix and supports composition,
tensor, union, Kleene star and particle-style trace, all exact.

A `Window` materialises any `BlockRel` as a literal finite relation (U is
truncated to `{0..size-1}`), giving an independent oracle for every
operation; `materialize` plus the `oracle_*` functions are used by the law
suites to validate the entry algebra continuously.

The two retraction families point in opposite directions on purpose: U
retracts onto U (x) U (`code_pair`/`decode_pair` fold logical structure
into one untyped wire), while 1 (x) 1 retracts onto 1 (`r_one`/`bang_one`
make the distinguished point explicit and hide it again).  `r_alpha` and
`bang_alpha` lift the latter along the point of U.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

ZERO = 0
POINT = 1
ID = 2

_ENTRY_CHARS = {ZERO: "0", POINT: "p", ID: "1"}
_CHAR_ENTRIES = {v: k for k, v in _ENTRY_CHARS.items()}


class WireType(Enum):
    U = "U"
    ONE = "1"


class RelError(Exception):
    pass


@dataclass(frozen=True, slots=True)
class Window:
    """Finite stand-in for U: carrier {0..size-1}, distinguished point n_alpha."""

    size: int = 16
    n_alpha: int = 0

    def __post_init__(self):
        if not 0 <= self.n_alpha < self.size:
            raise RelError(f"n_alpha {self.n_alpha} outside window of size {self.size}")

    def carrier(self, wt: WireType) -> list:
        if wt is WireType.U:
            return list(range(self.size))
        return ["*"]

    def point(self, wt: WireType):
        return self.n_alpha if wt is WireType.U else "*"


def _normalize(entry: int, src: WireType, dst: WireType) -> int:
    if entry == ID and src is not dst:
        raise RelError(f"Id entry between distinct wire types {src.value} -> {dst.value}")
    if entry == POINT and src is WireType.ONE and dst is WireType.ONE:
        return ID
    return entry


@dataclass(frozen=True, slots=True)
class BlockRel:
    """Matrix of 3-valued entries; rows indexed by cod wires, columns by dom."""

    dom: tuple[WireType, ...]
    cod: tuple[WireType, ...]
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != len(self.cod):
            raise RelError("row count must match cod arity")
        for row in self.entries:
            if len(row) != len(self.dom):
                raise RelError("column count must match dom arity")

    def entry(self, r: int, c: int) -> int:
        return self.entries[r][c]

    def to_json(self) -> dict:
        return {
            "dom": [w.value for w in self.dom],
            "cod": [w.value for w in self.cod],
            "entries": [[_ENTRY_CHARS[e] for e in row] for row in self.entries],
        }

    @staticmethod
    def from_json(data: dict) -> "BlockRel":
        dom = tuple(WireType(w) for w in data["dom"])
        cod = tuple(WireType(w) for w in data["cod"])
        rows = [[_CHAR_ENTRIES[c] for c in row] for row in data["entries"]]
        return blockrel(dom, cod, rows)

    def pretty(self) -> str:
        head = "      " + " ".join(w.value for w in self.dom)
        lines = [head]
        for i, row in enumerate(self.entries):
            lines.append(f"{self.cod[i].value:>4}  " + " ".join(_ENTRY_CHARS[e] for e in row))
        return "\n".join(lines)


def blockrel(dom: Sequence[WireType], cod: Sequence[WireType],
             rows: Iterable[Iterable[int]]) -> BlockRel:
    """Validating constructor; normalises Point to Id on 1 -> 1 edges."""
    dom = tuple(dom)
    cod = tuple(cod)
    fixed = tuple(
        tuple(_normalize(e, dom[c], cod[r]) for c, e in enumerate(row))
        for r, row in enumerate(rows)
    )
    return BlockRel(dom, cod, fixed)


def zero(dom: Sequence[WireType], cod: Sequence[WireType]) -> BlockRel:
    dom = tuple(dom)
    cod = tuple(cod)
    return BlockRel(dom, cod, tuple((ZERO,) * len(dom) for _ in cod))


def id_rel(iface: Sequence[WireType]) -> BlockRel:
    iface = tuple(iface)
    n = len(iface)
    return BlockRel(iface, iface,
                    tuple(tuple(ID if r == c else ZERO for c in range(n)) for r in range(n)))


def perm(sigma: Sequence[int], dom: Sequence[WireType]) -> BlockRel:
    """Permutation matrix: dom wire i is routed to cod position sigma[i]."""
    dom = tuple(dom)
    n = len(dom)
    if sorted(sigma) != list(range(n)):
        raise RelError(f"not a permutation of 0..{n - 1}: {sigma}")
    cod = [WireType.U] * n
    for i, s in enumerate(sigma):
        cod[s] = dom[i]
    rows = [[ZERO] * n for _ in range(n)]
    for i, s in enumerate(sigma):
        rows[s][i] = ID
    return BlockRel(dom, tuple(cod), tuple(tuple(r) for r in rows))


def _mul(a: int, b: int, mid: WireType, src: WireType, dst: WireType) -> int:
    # b: src -> mid, then a: mid -> dst
    if a == ZERO or b == ZERO:
        return ZERO
    if a == ID:
        out = b
    elif b == ID:
        out = a
    else:
        out = POINT
    return _normalize(out, src, dst)


def compose(g: BlockRel, f: BlockRel) -> BlockRel:
    """g after f."""
    if f.cod != g.dom:
        raise RelError(f"interface mismatch: {f.cod} vs {g.dom}")
    mid = f.cod
    rows = []
    for r in range(len(g.cod)):
        row = []
        grow = g.entries[r]
        for c in range(len(f.dom)):
            acc = ZERO
            for k in range(len(mid)):
                term = _mul(grow[k], f.entries[k][c], mid[k], f.dom[c], g.cod[r])
                if term > acc:
                    acc = term
                    if acc == ID:
                        break
            row.append(acc)
        rows.append(tuple(row))
    return BlockRel(f.dom, g.cod, tuple(rows))


def union(f: BlockRel, g: BlockRel) -> BlockRel:
    if f.dom != g.dom or f.cod != g.cod:
        raise RelError("union requires equal interfaces")
    rows = tuple(
        tuple(max(a, b) for a, b in zip(fr, gr))
        for fr, gr in zip(f.entries, g.entries)
    )
    return BlockRel(f.dom, f.cod, rows)


def tensor(f: BlockRel, g: BlockRel) -> BlockRel:
    dom = f.dom + g.dom
    cod = f.cod + g.cod
    nfd, ngd = len(f.dom), len(g.dom)
    rows = []
    for r in range(len(f.cod)):
        rows.append(f.entries[r] + (ZERO,) * ngd)
    for r in range(len(g.cod)):
        rows.append((ZERO,) * nfd + g.entries[r])
    return BlockRel(dom, cod, tuple(rows))


def star(f: BlockRel) -> BlockRel:
    """Least fixpoint of x = Id + f x (reflexive-transitive closure)."""
    if f.dom != f.cod:
        raise RelError("star requires an endo-matrix")
    acc = union(id_rel(f.dom), f)
    while True:
        nxt = union(acc, compose(acc, acc))
        if nxt == acc:
            return acc
        acc = nxt


def trace(f: BlockRel, traced: int) -> BlockRel:
    """Particle-style trace over the last `traced` wires.

    With f split into kept/traced blocks [[f11,f12],[f21,f22]] this is
    f11 + f12 (f22)* f21.
    """
    if traced == 0:
        return f
    if len(f.dom) < traced or len(f.cod) < traced:
        raise RelError("traced suffix longer than interface")
    kd = len(f.dom) - traced
    kc = len(f.cod) - traced
    if f.dom[kd:] != f.cod[kc:]:
        raise RelError("traced suffix of dom and cod must agree")
    dom_k, dom_t = f.dom[:kd], f.dom[kd:]
    cod_k = f.cod[:kc]
    f11 = blockrel(dom_k, cod_k, [row[:kd] for row in f.entries[:kc]])
    f12 = blockrel(dom_t, cod_k, [row[kd:] for row in f.entries[:kc]])
    f21 = blockrel(dom_k, dom_t, [row[:kd] for row in f.entries[kc:]])
    f22 = blockrel(dom_t, dom_t, [row[kd:] for row in f.entries[kc:]])
    return union(f11, compose(f12, compose(star(f22), f21)))


# --- primitive morphisms (generators of the model) ---

U = WireType.U
ONE = WireType.ONE


def alpha() -> BlockRel:
    """The distinguished point 1 -> U."""
    return blockrel((ONE,), (U,), [[POINT]])


def alpha_star() -> BlockRel:
    """Semi-inverse U -> 1 of the distinguished point."""
    return blockrel((U,), (ONE,), [[POINT]])


def r_one() -> BlockRel:
    """r: 1 -> 1 (x) 1, the maximal relation."""
    return blockrel((ONE,), (ONE, ONE), [[ID], [ID]])


def bang_one() -> BlockRel:
    """!: 1 (x) 1 -> 1, converse of r."""
    return blockrel((ONE, ONE), (ONE,), [[ID, ID]])


def r_alpha() -> BlockRel:
    """Lifted retraction U -> U (x) 1: identity on U plus the point collapse."""
    return blockrel((U,), (U, ONE), [[ID], [POINT]])


def bang_alpha() -> BlockRel:
    """U (x) 1 -> U, converse of r_alpha."""
    return blockrel((U, ONE), (U,), [[ID, POINT]])


def g_m(m: int) -> BlockRel:
    """Retraction 1^m -> 1 built from iterated !; the maximal relation."""
    if m < 1:
        raise RelError("g_m needs m >= 1")
    return blockrel((ONE,) * m, (ONE,), [[ID] * m])


def h_m(m: int) -> BlockRel:
    """Section 1 -> 1^m built from iterated r; the maximal relation."""
    if m < 1:
        raise RelError("h_m needs m >= 1")
    return blockrel((ONE,), (ONE,) * m, [[ID]] * m)


def quasi_inj(iface: Sequence[WireType], positions: Sequence[int]) -> BlockRel:
    """Zero-padded embedding of the selected wires into the full interface."""
    iface = tuple(iface)
    rows = []
    for r in range(len(iface)):
        row = [ZERO] * len(positions)
        for c, p in enumerate(positions):
            if p == r:
                row[c] = ID
        rows.append(tuple(row))
    return BlockRel(tuple(iface[p] for p in positions), iface, tuple(rows))


def quasi_proj(iface: Sequence[WireType], positions: Sequence[int]) -> BlockRel:
    """Zero-padded projection of the full interface onto the selected wires."""
    iface = tuple(iface)
    rows = []
    for p in positions:
        row = [ZERO] * len(iface)
        row[p] = ID
        rows.append(tuple(row))
    return BlockRel(iface, tuple(iface[p] for p in positions), tuple(rows))


def primitives() -> dict:
    """Named builders for the model's generating morphisms."""
    return {
        "alpha": alpha,
        "alpha_star": alpha_star,
        "id": id_rel,
        "zero": zero,
        "perm": perm,
        "r": r_one,
        "bang": bang_one,
        "r_alpha": r_alpha,
        "bang_alpha": bang_alpha,
        "g_m": g_m,
        "h_m": h_m,
        "quasi_inj": quasi_inj,
        "quasi_proj": quasi_proj,
    }


def ranges_over(f: BlockRel, span: Sequence[int]) -> bool:
    """True iff every entry outside the given cod rows is Zero."""
    keep = set(span)
    for r, row in enumerate(f.entries):
        if r in keep:
            continue
        if any(e != ZERO for e in row):
            return False
    return True


def restrict_cols(f: BlockRel, positions: Sequence[int]) -> BlockRel:
    return compose(f, quasi_inj(f.dom, positions))


# --- the window oracle: literal finite relations ---

def materialize(f: BlockRel, window: Window) -> set[tuple[tuple, tuple]]:
    """Set of ((dom_wire, value), (cod_wire, value)) pairs on the window."""
    out = set()
    for r, row in enumerate(f.entries):
        for c, e in enumerate(row):
            if e == ZERO:
                continue
            if e == POINT:
                out.add(((c, window.point(f.dom[c])), (r, window.point(f.cod[r]))))
            else:
                for v in window.carrier(f.dom[c]):
                    out.add(((c, v), (r, v)))
    return out


def oracle_compose(g: set, f: set) -> set:
    by_out: dict = {}
    for a, b in f:
        by_out.setdefault(b, []).append(a)
    out = set()
    for b, c in g:
        for a in by_out.get(b, ()):
            out.add((a, c))
    return out


def oracle_tensor(f: set, g: set, f_dom: int, f_cod: int) -> set:
    out = set(f)
    for (c, v), (r, w) in g:
        out.add(((c + f_dom, v), (r + f_cod, w)))
    return out


def oracle_star(f: set, f_iface: Sequence[WireType], window: Window) -> set:
    elems = [(i, v) for i, wt in enumerate(f_iface) for v in window.carrier(wt)]
    out = {(e, e) for e in elems} | set(f)
    while True:
        nxt = out | oracle_compose(out, out)
        if nxt == out:
            return out
        out = nxt


def oracle_trace(f: set, dom: Sequence[WireType], cod: Sequence[WireType],
                 traced: int, window: Window) -> set:
    kd = len(dom) - traced
    kc = len(cod) - traced
    f11, f12, f21, f22 = set(), set(), set(), set()
    for (c, v), (r, w) in f:
        a = ((c, v) if c < kd else (c - kd, v))
        b = ((r, w) if r < kc else (r - kc, w))
        if c < kd and r < kc:
            f11.add((a, b))
        elif c >= kd and r < kc:
            f12.add((a, b))
        elif c < kd and r >= kc:
            f21.add((a, b))
        else:
            f22.add((a, b))
    closure = oracle_star(f22, dom[kd:], window)
    return f11 | oracle_compose(f12, oracle_compose(closure, f21))


def oracle_equal(f: BlockRel, g: set, window: Window) -> bool:
    return materialize(f, window) == g


# --- folding codec (U is reflexive: U retracts onto U^m) ---

def code_pair(component: int, n: int) -> int:
    """j: U + U -> U; component 1 is even, component 2 odd."""
    if component == 1:
        return 2 * n
    if component == 2:
        return 2 * n + 1
    raise RelError("component must be 1 or 2")


def decode_pair(t: int) -> tuple[int, int]:
    """k: U -> U + U, inverse of `code_pair`."""
    if t % 2 == 0:
        return 1, t // 2
    return 2, (t - 1) // 2


def encode_leaf(m: int, leaf: int, n: int) -> int:
    """Code of value n at the given leaf of the left-nested m-fold tree."""
    if not 0 <= leaf < m:
        raise RelError(f"leaf {leaf} out of range for m={m}")
    if m == 1:
        return n
    if leaf == m - 1:
        return code_pair(2, n)
    return code_pair(1, encode_leaf(m - 1, leaf, n))


def decode_token(m: int, t: int) -> tuple[int, int]:
    """Inverse of `encode_leaf`: token -> (leaf, value)."""
    if m == 1:
        return 0, t
    comp, n = decode_pair(t)
    if comp == 2:
        return m - 1, n
    leaf, v = decode_token(m - 1, n)
    return leaf, v


class TokenError(Exception):
    """Folded evaluation left the window (reported, never dropped)."""


def fold_eval(f: BlockRel, token: int, window: Window) -> set[int]:
    """Pointwise folded action of an all-U matrix: decode, apply, re-encode.

    Realises j_a . f . k_a on a single token without materialising the
    folded relation.
    """
    if any(w is not U for w in f.dom) or any(w is not U for w in f.cod):
        raise RelError("fold_eval needs an all-U interface")
    if not 0 <= token < window.size:
        raise TokenError(f"token {token} outside window of size {window.size}")
    m_in = len(f.dom)
    m_out = len(f.cod)
    leaf, value = decode_token(m_in, token)
    out = set()
    overflow = []
    for r in range(m_out):
        e = f.entries[r][leaf]
        if e == ZERO:
            continue
        if e == POINT and value != window.n_alpha:
            continue
        res = window.n_alpha if e == POINT else value
        coded = encode_leaf(m_out, r, res)
        if coded >= window.size:
            overflow.append(coded)
        else:
            out.add(coded)
    if overflow:
        raise TokenError(
            f"outputs {sorted(overflow)} do not fit the window of size {window.size}")
    return out
