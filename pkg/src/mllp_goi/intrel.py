"""Compactification of finite relations with multipointed polarity pairs.

Objects pair a positive and a negative carrier, each with a chosen subset
of distinguished elements.  A morphism (A+,A-) -> (B+,B-) is a relation
A+ + B- -> B+ + A- stored as four labelled blocks

    r12 : A+ -> B+    r22 : B- -> B+
    r11 : A+ -> A-    r21 : B- -> A-

composed by feeding r's forward output through s with feedback closure
(r22/s11 loops are saturated by a reflexive-transitive star).  `is_pos`
and `is_neg` are the two multipoint-preservation disciplines; `down` and
`up` adjoin a fresh distinguished point and land in them; `adjoint_add`
and `adjoint_strip` implement the resulting hom-set bijection.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator

Label = str
Pair = tuple[Label, Label]


class IntError(Exception):
    pass


@dataclass(frozen=True, slots=True)
class FinRel:
    dom: frozenset
    cod: frozenset
    pairs: frozenset

    def __post_init__(self):
        for a, b in self.pairs:
            if a not in self.dom or b not in self.cod:
                raise IntError(f"pair {(a, b)} outside carriers")

    def image(self, xs: Iterable[Label]) -> frozenset:
        xs = set(xs)
        return frozenset(b for a, b in self.pairs if a in xs)

    def preimage(self, ys: Iterable[Label]) -> frozenset:
        ys = set(ys)
        return frozenset(a for a, b in self.pairs if b in ys)


def finrel(dom: Iterable, cod: Iterable, pairs: Iterable[Pair]) -> FinRel:
    return FinRel(frozenset(dom), frozenset(cod), frozenset(pairs))


def rel_id(carrier: Iterable) -> FinRel:
    carrier = frozenset(carrier)
    return FinRel(carrier, carrier, frozenset((x, x) for x in carrier))


def rel_empty(dom: Iterable, cod: Iterable) -> FinRel:
    return FinRel(frozenset(dom), frozenset(cod), frozenset())


def rel_compose(s: FinRel, r: FinRel) -> FinRel:
    if r.cod != s.dom:
        raise IntError("relation interfaces do not match")
    by_mid: dict = {}
    for a, b in r.pairs:
        by_mid.setdefault(b, []).append(a)
    pairs = set()
    for b, c in s.pairs:
        for a in by_mid.get(b, ()):
            pairs.add((a, c))
    return FinRel(r.dom, s.cod, frozenset(pairs))


def rel_union(r: FinRel, s: FinRel) -> FinRel:
    if r.dom != s.dom or r.cod != s.cod:
        raise IntError("relation interfaces do not match")
    return FinRel(r.dom, r.cod, r.pairs | s.pairs)


def rel_star(r: FinRel) -> FinRel:
    """Reflexive-transitive closure of an endo-relation."""
    if r.dom != r.cod:
        raise IntError("star needs an endo-relation")
    acc = rel_union(rel_id(r.dom), r)
    while True:
        nxt = rel_union(acc, rel_compose(acc, acc))
        if nxt == acc:
            return acc
        acc = nxt


def tag(prefix: str, xs: Iterable) -> frozenset:
    return frozenset(f"{prefix}{x}" for x in xs)


def _retag(r: FinRel, dpre: str, cpre: str) -> frozenset:
    return frozenset((f"{dpre}{a}", f"{cpre}{b}") for a, b in r.pairs)


@dataclass(frozen=True, slots=True)
class MPObj:
    aplus: frozenset
    aminus: frozenset
    mp_plus: frozenset
    mp_minus: frozenset

    def __post_init__(self):
        if not self.mp_plus <= self.aplus or not self.mp_minus <= self.aminus:
            raise IntError("multipoints must be subsets of the carriers")


def mpobj(aplus: Iterable, aminus: Iterable,
          mp_plus: Iterable = (), mp_minus: Iterable = ()) -> MPObj:
    return MPObj(frozenset(aplus), frozenset(aminus),
                 frozenset(mp_plus), frozenset(mp_minus))


@dataclass(frozen=True, slots=True)
class IntMor:
    source: MPObj
    target: MPObj
    r11: FinRel  # A+ -> A-
    r12: FinRel  # A+ -> B+
    r21: FinRel  # B- -> A-
    r22: FinRel  # B- -> B+

    def __post_init__(self):
        a, b = self.source, self.target
        want = [(self.r11, a.aplus, a.aminus), (self.r12, a.aplus, b.aplus),
                (self.r21, b.aminus, a.aminus), (self.r22, b.aminus, b.aplus)]
        for rel, dom, cod in want:
            if rel.dom != dom or rel.cod != cod:
                raise IntError("block carriers do not match the objects")

    def to_json(self) -> dict:
        def rel_json(r: FinRel) -> list:
            return sorted([list(p) for p in r.pairs])

        def obj_json(o: MPObj) -> dict:
            return {"plus": sorted(o.aplus), "minus": sorted(o.aminus),
                    "mp_plus": sorted(o.mp_plus), "mp_minus": sorted(o.mp_minus)}

        return {"source": obj_json(self.source), "target": obj_json(self.target),
                "R11": rel_json(self.r11), "R12": rel_json(self.r12),
                "R21": rel_json(self.r21), "R22": rel_json(self.r22)}


def int_id(obj: MPObj) -> IntMor:
    return IntMor(obj, obj,
                  rel_empty(obj.aplus, obj.aminus),
                  rel_id(obj.aplus),
                  rel_id(obj.aminus),
                  rel_empty(obj.aminus, obj.aplus))


def int_compose(s: IntMor, r: IntMor) -> IntMor:
    """s after r, saturating the feedback loop through the middle object."""
    if s.source != r.target:
        raise IntError("objects do not match")
    loop = rel_star(rel_compose(r.r22, s.r11))          # B+ -> B+
    loop_rev = rel_star(rel_compose(s.r11, r.r22))      # B- -> B-
    r12 = rel_compose(s.r12, rel_compose(loop, r.r12))
    r11 = rel_union(r.r11,
                    rel_compose(r.r21, rel_compose(s.r11, rel_compose(loop, r.r12))))
    r22 = rel_union(s.r22,
                    rel_compose(s.r12, rel_compose(r.r22, rel_compose(loop_rev, s.r21))))
    r21 = rel_compose(r.r21, rel_compose(loop_rev, s.r21))
    return IntMor(r.source, s.target, r11, r12, r21, r22)


def dual(r: IntMor) -> IntMor:
    """Conjugation by the off-diagonal swap; involutive."""
    src = MPObj(r.target.aminus, r.target.aplus, r.target.mp_minus, r.target.mp_plus)
    tgt = MPObj(r.source.aminus, r.source.aplus, r.source.mp_minus, r.source.mp_plus)
    return IntMor(src, tgt, r11=r.r22, r12=r.r21, r21=r.r12, r22=r.r11)


def int_tensor(r: IntMor, s: IntMor) -> IntMor:
    """Disjoint-union tensor; blocks interleave with no cross terms."""
    def both(o1: MPObj, o2: MPObj) -> MPObj:
        return MPObj(tag("L.", o1.aplus) | tag("R.", o2.aplus),
                     tag("L.", o1.aminus) | tag("R.", o2.aminus),
                     tag("L.", o1.mp_plus) | tag("R.", o2.mp_plus),
                     tag("L.", o1.mp_minus) | tag("R.", o2.mp_minus))

    src = both(r.source, s.source)
    tgt = both(r.target, s.target)
    return IntMor(
        src, tgt,
        FinRel(src.aplus, src.aminus,
               _retag(r.r11, "L.", "L.") | _retag(s.r11, "R.", "R.")),
        FinRel(src.aplus, tgt.aplus,
               _retag(r.r12, "L.", "L.") | _retag(s.r12, "R.", "R.")),
        FinRel(tgt.aminus, src.aminus,
               _retag(r.r21, "L.", "L.") | _retag(s.r21, "R.", "R.")),
        FinRel(tgt.aminus, tgt.aplus,
               _retag(r.r22, "L.", "L.") | _retag(s.r22, "R.", "R.")),
    )


def is_pos(r: IntMor) -> bool:
    a, b = r.source, r.target
    return (r.r12.preimage(b.mp_plus) == a.mp_plus
            and r.r21.image(b.mp_minus) == a.mp_minus
            and not r.r22.preimage(b.mp_plus)
            and not r.r22.image(b.mp_minus))


def is_neg(r: IntMor) -> bool:
    a, b = r.source, r.target
    return (r.r12.image(a.mp_plus) == b.mp_plus
            and r.r21.preimage(a.mp_minus) == b.mp_minus
            and not r.r11.preimage(a.mp_minus)
            and not r.r11.image(a.mp_plus))


STAR = "*"


def down_obj(obj: MPObj) -> MPObj:
    """Adjoin a fresh distinguished point to each carrier."""
    return MPObj(tag("L.", obj.aplus) | {f"R.{STAR}"},
                 tag("L.", obj.aminus) | {f"R.{STAR}"},
                 frozenset({f"R.{STAR}"}),
                 frozenset({f"R.{STAR}"}))


up_obj = down_obj


def down_mor(r: IntMor) -> IntMor:
    """Pad a morphism with identity corners on the fresh points."""
    src = down_obj(r.source)
    tgt = down_obj(r.target)
    star = f"R.{STAR}"
    return IntMor(
        src, tgt,
        FinRel(src.aplus, src.aminus, _retag(r.r11, "L.", "L.")),
        FinRel(src.aplus, tgt.aplus, _retag(r.r12, "L.", "L.") | {(star, star)}),
        FinRel(tgt.aminus, src.aminus, _retag(r.r21, "L.", "L.") | {(star, star)}),
        FinRel(tgt.aminus, tgt.aplus, _retag(r.r22, "L.", "L.")),
    )


up_mor = down_mor


def adjoint_add(r: IntMor) -> IntMor:
    """Transpose a plain morphism into a positive map into the shifted target.

    Adds the blocks mp(A+) x {star} and {star} x mp(A-); inverse of
    `adjoint_strip`.
    """
    src = r.source
    tgt = down_obj(r.target)
    star = f"R.{STAR}"
    return IntMor(
        src, tgt,
        r.r11,
        FinRel(src.aplus, tgt.aplus,
               _retag(r.r12, "", "L.") | {(a, star) for a in src.mp_plus}),
        FinRel(tgt.aminus, src.aminus,
               _retag(r.r21, "L.", "") | {(star, a) for a in src.mp_minus}),
        FinRel(tgt.aminus, tgt.aplus, _retag(r.r22, "L.", "L.")),
    )


def adjoint_strip(r: IntMor, target: MPObj) -> IntMor:
    """Inverse of `adjoint_add`: drop the fresh point and its blocks."""
    if down_obj(target) != r.target:
        raise IntError("target is not the shift of the given object")
    src = r.source
    return IntMor(
        src, target,
        r.r11,
        FinRel(src.aplus, target.aplus,
               frozenset((a, b[2:]) for a, b in r.r12.pairs if b.startswith("L."))),
        FinRel(target.aminus, src.aminus,
               frozenset((a[2:], b) for a, b in r.r21.pairs if a.startswith("L."))),
        FinRel(target.aminus, target.aplus,
               frozenset((a[2:], b[2:]) for a, b in r.r22.pairs)),
    )


def all_relations(dom: frozenset, cod: frozenset) -> list[FinRel]:
    cells = sorted(product(sorted(dom), sorted(cod)))
    out = []
    for mask in range(1 << len(cells)):
        out.append(FinRel(dom, cod,
                          frozenset(c for k, c in enumerate(cells) if mask >> k & 1)))
    return out


def all_morphisms(a: MPObj, b: MPObj) -> Iterator[IntMor]:
    for r11 in all_relations(a.aplus, a.aminus):
        for r12 in all_relations(a.aplus, b.aplus):
            for r21 in all_relations(b.aminus, a.aminus):
                for r22 in all_relations(b.aminus, b.aplus):
                    yield IntMor(a, b, r11, r12, r21, r22)
