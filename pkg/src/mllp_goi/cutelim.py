"""One-step cut elimination and normalization.

Redexes are classified per cut node, peeking through explicit exchange
nodes: `AX_CUT` erases an axiom premise, `UP_DOWN` replaces a cut on
shifted formulas by a cut on their bodies, `TENSOR_PAR` splits a
connective cut in two, `BOX_EXTRUSION` moves a cut on a side formula of a
down rule above it (the down rule's box grows to swallow the other
premise), and the `COMMUTE_*` kinds hoist a cut past a rule that does not
introduce its cut formula.  Every step preserves the conclusion gamma
*exactly*, occurrence by occurrence, inserting a restoring exchange where
the rewrite reorders it; the cut list delta is rearranged as dictated by
the step.

`normalize` iterates to a cut-free proof.  The `Leftmost` strategy fires
principal redexes (everything but the commutations) before commutations,
outermost first; `Innermost` prefers the deepest redex.  Both stop at the
same step bound, whose overrun signals a rewrite bug rather than genuine
divergence.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .proof import (
    Ax,
    CutRule,
    DownRule,
    Exchange,
    ParRule,
    Proof,
    TensorRule,
    UpRule,
    check,
    exchange,
    move_to_last,
    move_last_to,
    rule_count,
)


class RedexKind(Enum):
    AX_CUT = "AxCut"
    TENSOR_PAR = "TensorPar"
    UP_DOWN = "UpDown"
    BOX_EXTRUSION = "BoxExtrusion"
    COMMUTE_LEFT = "CommuteLeft"
    COMMUTE_RIGHT = "CommuteRight"


PRINCIPAL = {RedexKind.AX_CUT, RedexKind.TENSOR_PAR,
             RedexKind.UP_DOWN, RedexKind.BOX_EXTRUSION}


@dataclass(frozen=True, slots=True)
class Redex:
    path: tuple[int, ...]
    kind: RedexKind
    side: int | None = None   # which premise drives AxCut / commutation
    rule: str | None = None   # commuted rule name

    def label(self) -> str:
        bits = self.kind.value
        if self.rule:
            bits += f"({self.rule})"
        return bits


class InvalidRedex(Exception):
    pass


class StepLimitExceeded(Exception):
    def __init__(self, bound: int):
        super().__init__(
            f"no normal form within {bound} steps; the rewrite rules are suspect")
        self.bound = bound


class Strategy(Enum):
    LEFTMOST = "leftmost"
    INNERMOST = "innermost"


def _peel(p: Proof) -> tuple[Proof, tuple[int, ...]]:
    """Strip exchange wrappers; returns (core, perm) with
    p.gamma[k] == core.gamma[perm[k]]."""
    n = len(check(p).gamma)
    perm = tuple(range(n))
    while isinstance(p, Exchange):
        perm = tuple(p.perm[k] for k in perm)
        p = p.premise
    return p, perm


def _subproof(p: Proof, path: tuple[int, ...]) -> Proof:
    for step in path:
        if isinstance(p, (TensorRule, CutRule)):
            p = p.left if step == 0 else p.right
        elif isinstance(p, (ParRule, DownRule, UpRule, Exchange)):
            if step != 0:
                raise InvalidRedex(f"bad path step {step} at unary node")
            p = p.premise
        else:
            raise InvalidRedex("path runs past a leaf")
    return p


def _rebuild(p: Proof, path: tuple[int, ...], replacement: Proof) -> Proof:
    if not path:
        return replacement
    head, rest = path[0], path[1:]
    if isinstance(p, TensorRule):
        return TensorRule(_rebuild(p.left, rest, replacement), p.right) if head == 0 \
            else TensorRule(p.left, _rebuild(p.right, rest, replacement))
    if isinstance(p, CutRule):
        return CutRule(_rebuild(p.left, rest, replacement), p.right) if head == 0 \
            else CutRule(p.left, _rebuild(p.right, rest, replacement))
    if isinstance(p, ParRule):
        return ParRule(_rebuild(p.premise, rest, replacement), p.i, p.j)
    if isinstance(p, DownRule):
        return DownRule(_rebuild(p.premise, rest, replacement), p.i)
    if isinstance(p, UpRule):
        return UpRule(_rebuild(p.premise, rest, replacement), p.i)
    if isinstance(p, Exchange):
        return exchange(_rebuild(p.premise, rest, replacement), p.perm)
    raise InvalidRedex("path runs past a leaf")


def _classify_cut(cut: CutRule, path: tuple[int, ...]) -> list[Redex]:
    s1 = check(cut.left)
    c1, sig1 = _peel(cut.left)
    c2, sig2 = _peel(cut.right)
    a1 = sig1[len(s1.gamma) - 1]
    a2 = sig2[len(check(cut.right).gamma) - 1]
    out: list[Redex] = []

    if isinstance(c1, Ax):
        out.append(Redex(path, RedexKind.AX_CUT, side=0))
    if isinstance(c2, Ax):
        out.append(Redex(path, RedexKind.AX_CUT, side=1))

    left_principal = None
    if isinstance(c1, UpRule) and a1 == c1.i:
        left_principal = "up"
    if isinstance(c1, ParRule):
        fused_at = [k for k in range(len(check(c1.premise).gamma)) if k != c1.j].index(c1.i)
        if a1 == fused_at:
            left_principal = "par"
    if left_principal == "up" and isinstance(c2, DownRule):
        out.append(Redex(path, RedexKind.UP_DOWN))
    if left_principal == "par" and isinstance(c2, TensorRule):
        out.append(Redex(path, RedexKind.TENSOR_PAR))

    if isinstance(c1, DownRule):
        out.append(Redex(path, RedexKind.BOX_EXTRUSION, side=0))
    elif isinstance(c1, CutRule):
        out.append(Redex(path, RedexKind.COMMUTE_LEFT, side=0, rule="cut"))
    elif isinstance(c1, TensorRule):
        out.append(Redex(path, RedexKind.COMMUTE_LEFT, side=0, rule="tensor"))
    elif isinstance(c1, ParRule) and left_principal != "par":
        out.append(Redex(path, RedexKind.COMMUTE_LEFT, side=0, rule="par"))
    elif isinstance(c1, UpRule) and left_principal != "up":
        out.append(Redex(path, RedexKind.COMMUTE_LEFT, side=0, rule="up"))

    if isinstance(c2, CutRule):
        out.append(Redex(path, RedexKind.COMMUTE_RIGHT, side=1, rule="cut"))
    elif isinstance(c2, ParRule):
        out.append(Redex(path, RedexKind.COMMUTE_RIGHT, side=1, rule="par"))
    return out


def reducible_cuts(p: Proof) -> list[Redex]:
    """All redexes, in pre-order of their cut nodes."""
    check(p)
    out: list[Redex] = []

    def walk(q: Proof, path: tuple[int, ...]) -> None:
        if isinstance(q, CutRule):
            out.extend(_classify_cut(q, path))
            walk(q.left, path + (0,))
            walk(q.right, path + (1,))
        elif isinstance(q, TensorRule):
            walk(q.left, path + (0,))
            walk(q.right, path + (1,))
        elif isinstance(q, (ParRule, DownRule, UpRule, Exchange)):
            walk(q.premise, path + (0,))

    walk(p, ())
    return out


def _restore(q: Proof, new_tags: list, desired_tags: list) -> Proof:
    index = {t: i for i, t in enumerate(new_tags)}
    return exchange(q, tuple(index[t] for t in desired_tags))


def _step_cut(cut: CutRule, redex: Redex) -> Proof:
    """Rewrite one cut node; the result proves the same gamma, occurrence
    for occurrence."""
    p1, p2 = cut.left, cut.right
    s1, s2 = check(p1), check(p2)
    n1, n2 = len(s1.gamma) - 1, len(s2.gamma) - 1
    c1, sig1 = _peel(p1)
    c2, sig2 = _peel(p2)
    a1, a2 = sig1[n1], sig2[n2]
    des1 = [sig1[t] for t in range(n1)]  # core-1 positions of Gamma, in order
    des2 = [sig2[t] for t in range(n2)]

    kind = redex.kind

    if kind == RedexKind.AX_CUT:
        if redex.side == 0:
            if not isinstance(c1, Ax):
                raise InvalidRedex("left premise is not an axiom")
            return move_last_to(p2, 0)
        if not isinstance(c2, Ax):
            raise InvalidRedex("right premise is not an axiom")
        return p1

    if kind == RedexKind.UP_DOWN:
        if not (isinstance(c1, UpRule) and isinstance(c2, DownRule)):
            raise InvalidRedex("premises do not end in up/down on the cut pair")
        q1, iu = c1.premise, c1.i
        q2, idn = c2.premise, c2.i
        newcut = CutRule(move_to_last(q2, idn), move_to_last(q1, iu))
        order1 = [k for k in range(len(check(q1).gamma)) if k != iu]
        order2 = [k for k in range(len(check(q2).gamma)) if k != idn]
        new_tags = [("r", k) for k in order2] + [("l", k) for k in order1]
        desired = [("l", k) for k in des1] + [("r", k) for k in des2]
        return _restore(newcut, new_tags, desired)

    if kind == RedexKind.TENSOR_PAR:
        if not (isinstance(c1, ParRule) and isinstance(c2, TensorRule)):
            raise InvalidRedex("premises do not end in par/tensor on the cut pair")
        q1, i, j = c1.premise, c1.i, c1.j
        t1, t2 = c2.left, c2.right
        m1 = len(check(t1).gamma) - 1
        m2 = len(check(t2).gamma) - 1
        cut_n = CutRule(move_to_last(q1, i), t1)
        jj = [k for k in range(len(check(q1).gamma)) if k != i].index(j)
        cut_m = CutRule(move_to_last(cut_n, jj), t2)
        rest1 = [k for k in range(len(check(q1).gamma)) if k not in (i, j)]
        new_tags = ([("l", k) for k in rest1] + [("m1", k) for k in range(m1)]
                    + [("m2", k) for k in range(m2)])
        cmap = [k for k in range(len(check(q1).gamma)) if k != j]
        desired = [("l", cmap[d]) for d in des1] \
            + [("m1", d) if d < m1 else ("m2", d - m1) for d in des2]
        return _restore(cut_m, new_tags, desired)

    if kind == RedexKind.BOX_EXTRUSION:
        if not isinstance(c1, DownRule):
            raise InvalidRedex("left premise does not end in a down rule")
        q, idn = c1.premise, c1.i
        newcut = CutRule(move_to_last(q, a1), p2)
        rest = [k for k in range(len(check(q).gamma)) if k != a1]
        newdown = DownRule(newcut, rest.index(idn))
        new_tags = [("l", k) for k in rest] + [("m", k) for k in range(n2)]
        desired = [("l", k) for k in des1] + [("m", k) for k in range(n2)]
        return _restore(newdown, new_tags, desired)

    if kind == RedexKind.COMMUTE_LEFT and redex.rule == "par":
        q1, i, j = c1.premise, c1.i, c1.j
        cmap = [k for k in range(len(check(q1).gamma)) if k != j]
        qa = cmap[a1]
        newcut = CutRule(move_to_last(q1, qa), p2)
        rest = [k for k in range(len(check(q1).gamma)) if k != qa]
        newpar = ParRule(newcut, rest.index(i), rest.index(j))
        rest_c1 = [k for k in cmap if k != qa]  # conclusion occurrences, i = fused
        new_tags = [("l", k) for k in rest_c1] + [("m", k) for k in range(n2)]
        desired = [("l", cmap[d]) for d in des1] + [("m", k) for k in range(n2)]
        return _restore(newpar, new_tags, desired)

    if kind == RedexKind.COMMUTE_LEFT and redex.rule == "up":
        q1, iu = c1.premise, c1.i
        newcut = CutRule(move_to_last(q1, a1), p2)
        rest = [k for k in range(len(check(q1).gamma)) if k != a1]
        newup = UpRule(newcut, rest.index(iu))
        new_tags = [("l", k) for k in rest] + [("m", k) for k in range(n2)]
        desired = [("l", k) for k in des1] + [("m", k) for k in range(n2)]
        return _restore(newup, new_tags, desired)

    if kind == RedexKind.COMMUTE_LEFT and redex.rule == "tensor":
        t1, t2 = c1.left, c1.right
        m1 = len(check(t1).gamma) - 1
        m2 = len(check(t2).gamma) - 1
        if a1 < m1:
            inner = CutRule(move_to_last(t1, a1), p2)
            # reposition the tensor's positive after the grafted context
            inner = move_to_last(inner, m1 - 1)
            newt = TensorRule(inner, t2)
            new_tags = ([("m1", k) for k in range(m1) if k != a1]
                        + [("m", k) for k in range(n2)]
                        + [("m2", k) for k in range(m2)] + [("t",)])
        else:
            ka = a1 - m1
            inner = CutRule(move_to_last(t2, ka), p2)
            inner = move_to_last(inner, m2 - 1)
            newt = TensorRule(t1, inner)
            new_tags = ([("m1", k) for k in range(m1)]
                        + [("m2", k) for k in range(m2) if k != ka]
                        + [("m", k) for k in range(n2)] + [("t",)])

        def c1tag(d: int):
            if d < m1:
                return ("m1", d)
            if d < m1 + m2:
                return ("m2", d - m1)
            return ("t",)

        desired = [c1tag(d) for d in des1] + [("m", k) for k in range(n2)]
        return _restore(newt, new_tags, desired)

    if kind == RedexKind.COMMUTE_LEFT and redex.rule == "cut":
        a, b = c1.left, c1.right
        la = len(check(a).gamma) - 1
        lb = len(check(b).gamma) - 1
        if a1 < la:
            inner = CutRule(move_to_last(a, a1), p2)
            inner = move_to_last(inner, la - 1)  # route B back to last
            newtop = CutRule(inner, b)
            new_tags = ([("a", k) for k in range(la) if k != a1]
                        + [("m", k) for k in range(n2)]
                        + [("b", k) for k in range(lb)])
        else:
            kb = a1 - la
            inner = CutRule(move_to_last(b, kb), p2)
            inner = move_to_last(inner, lb - 1)  # route B-perp back to last
            newtop = CutRule(a, inner)
            new_tags = ([("a", k) for k in range(la)]
                        + [("b", k) for k in range(lb) if k != kb]
                        + [("m", k) for k in range(n2)])

        def c1tag(d: int):
            return ("a", d) if d < la else ("b", d - la)

        desired = [c1tag(d) for d in des1] + [("m", k) for k in range(n2)]
        return _restore(newtop, new_tags, desired)

    if kind == RedexKind.COMMUTE_RIGHT and redex.rule == "par":
        q2, i, j = c2.premise, c2.i, c2.j
        cmap = [k for k in range(len(check(q2).gamma)) if k != j]
        qa = cmap[a2]
        newcut = CutRule(p1, move_to_last(q2, qa))
        rest = [k for k in range(len(check(q2).gamma)) if k != qa]
        newpar = ParRule(newcut, n1 + rest.index(i), n1 + rest.index(j))
        rest_c2 = [k for k in cmap if k != qa]
        new_tags = [("g", k) for k in range(n1)] + [("r", k) for k in rest_c2]
        desired = [("g", k) for k in range(n1)] + [("r", cmap[d]) for d in des2]
        return _restore(newpar, new_tags, desired)

    if kind == RedexKind.COMMUTE_RIGHT and redex.rule == "cut":
        a, b = c2.left, c2.right
        la = len(check(a).gamma) - 1
        lb = len(check(b).gamma) - 1
        if a2 >= la:
            raise InvalidRedex("cut formula cannot sit in the right premise "
                               "of the inner cut (two positives)")
        inner = CutRule(p1, move_to_last(a, a2))
        newtop = CutRule(inner, b)
        new_tags = ([("g", k) for k in range(n1)]
                    + [("a", k) for k in range(la) if k != a2]
                    + [("b", k) for k in range(lb)])

        def c2tag(d: int):
            return ("a", d) if d < la else ("b", d - la)

        desired = [("g", k) for k in range(n1)] + [c2tag(d) for d in des2]
        return _restore(newtop, new_tags, desired)

    raise InvalidRedex(f"unhandled redex {redex}")


def step(p: Proof, redex: Redex) -> Proof:
    """Apply one redex; the rewritten proof checks with the same gamma."""
    before = check(p)
    node = _subproof(p, redex.path)
    if not isinstance(node, CutRule):
        raise InvalidRedex(f"path {redex.path} is not a cut")
    q = _rebuild(p, redex.path, _step_cut(node, redex))
    after = check(q)
    if after.gamma != before.gamma:
        raise InvalidRedex(
            f"step broke the conclusion: {before} became {after}")
    return q


def default_bound(p: Proof) -> int:
    n = rule_count(p)
    return 4 * n * n


def pick_redex(rs: list[Redex], strategy: Strategy) -> Redex:
    def leftmost_key(r: Redex):
        return (0 if r.kind in PRINCIPAL else 1, r.path)

    def innermost_key(r: Redex):
        return (-len(r.path), 0 if r.kind in PRINCIPAL else 1, r.path)

    key = leftmost_key if strategy is Strategy.LEFTMOST else innermost_key
    return min(rs, key=key)


def normalize(p: Proof, strategy: Strategy = Strategy.LEFTMOST,
              bound: int | None = None) -> tuple[Proof, list[tuple[Redex, Proof]]]:
    """Reduce to a cut-free proof; returns it with the full rewrite trace."""
    if bound is None:
        bound = default_bound(p)
    trace: list[tuple[Redex, Proof]] = []
    current = p
    for _ in range(bound):
        rs = reducible_cuts(current)
        if not rs:
            if check(current).delta:
                raise InvalidRedex("no redex but cuts remain")
            return current, trace
        r = pick_redex(rs, strategy)
        current = step(current, r)
        trace.append((r, current))
    if not reducible_cuts(current):
        return current, trace
    raise StepLimitExceeded(bound)
