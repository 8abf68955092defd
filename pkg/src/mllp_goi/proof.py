"""Sequent derivations for multiplicative polarized linear logic.

Sequents carry their conclusions `gamma` together with the Girard-style list
`delta` of cut pairs, printed `|- [delta], gamma`.  The checker enforces the
polarity side conditions of every rule, in particular that each context
contains at most one positive formula (focalization) and that the tensor and
down rules see purely negative contexts.

Rules act on fixed gamma positions: tensor and cut consume the *last* gamma
formula of each premise, par/down/up take explicit indices, and `Exchange`
is an explicit node (`perm[k]` names the premise position that lands at
conclusion position `k`).

Proof term grammar (`.mllp` files)::

    p ::= "(ax" F ")" | "(tensor" p p ")" | "(par" p i j ")"
        | "(dn" p i ")" | "(up" p i ")" | "(cut" p p ")"
        | "(ex" p "[" i+ "]" ")"

with 0-based gamma indices and F the formula grammar of `formula`.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from .formula import (
    Formula,
    NegAtom,
    ParseError,
    Par,
    Polarity,
    Tensor,
    Down,
    Up,
    fmt,
    negate,
    polarity,
    _Parser,
)


class RuleViolation(Exception):
    def __init__(self, rule: str, reason: str):
        super().__init__(f"{rule}: {reason}")
        self.rule = rule
        self.reason = reason


@dataclass(frozen=True, slots=True)
class Sequent:
    gamma: tuple[Formula, ...]
    delta: tuple[tuple[Formula, Formula], ...]

    def __str__(self) -> str:
        ds = ", ".join(f"{fmt(a)}, {fmt(b)}" for a, b in self.delta)
        gs = ", ".join(fmt(f) for f in self.gamma)
        return f"|- [{ds}], {gs}" if gs else f"|- [{ds}],"

    def positives(self) -> list[int]:
        return [i for i, f in enumerate(self.gamma)
                if polarity(f) is Polarity.POSITIVE]


class Proof:
    __slots__ = ()

    def __str__(self) -> str:
        return format_proof(self)


@dataclass(frozen=True, slots=True)
class Ax(Proof):
    formula: Formula  # the negative side; conclusion is |- N, N^


@dataclass(frozen=True, slots=True)
class TensorRule(Proof):
    left: Proof
    right: Proof


@dataclass(frozen=True, slots=True)
class ParRule(Proof):
    premise: Proof
    i: int
    j: int


@dataclass(frozen=True, slots=True)
class DownRule(Proof):
    premise: Proof
    i: int


@dataclass(frozen=True, slots=True)
class UpRule(Proof):
    premise: Proof
    i: int


@dataclass(frozen=True, slots=True)
class CutRule(Proof):
    left: Proof
    right: Proof


@dataclass(frozen=True, slots=True)
class Exchange(Proof):
    premise: Proof
    perm: tuple[int, ...]


_conclusions: dict[int, tuple[Proof, Sequent]] = {}
_CONCLUSION_CACHE_CAP = 4_000_000


def check(p: Proof) -> Sequent:
    """Conclusion sequent of p; raises `RuleViolation` if any rule misfires."""
    hit = _conclusions.get(id(p))
    if hit is not None and hit[0] is p:
        return hit[1]
    s = _check(p)
    if len(s.positives()) > 1:
        raise RuleViolation("focalization", f"more than one positive formula in {s}")
    if len(_conclusions) >= _CONCLUSION_CACHE_CAP:
        _conclusions.clear()
    _conclusions[id(p)] = (p, s)
    return s


conclusion = check


def _check(p: Proof) -> Sequent:
    if isinstance(p, Ax):
        if polarity(p.formula) is not Polarity.NEGATIVE:
            raise RuleViolation("ax", f"axiom formula must be negative: {p.formula}")
        return Sequent((p.formula, negate(p.formula)), ())

    if isinstance(p, TensorRule):
        s1, s2 = check(p.left), check(p.right)
        if not s1.gamma or not s2.gamma:
            raise RuleViolation("tensor", "premise with empty context")
        pf, qf = s1.gamma[-1], s2.gamma[-1]
        if polarity(pf) is not Polarity.POSITIVE:
            raise RuleViolation("tensor", f"left premise must end in a positive: {s1}")
        if polarity(qf) is not Polarity.POSITIVE:
            raise RuleViolation("tensor", f"right premise must end in a positive: {s2}")
        for f in s1.gamma[:-1] + s2.gamma[:-1]:
            if polarity(f) is not Polarity.NEGATIVE:
                raise RuleViolation("tensor", f"context formula not negative: {fmt(f)}")
        return Sequent(s1.gamma[:-1] + s2.gamma[:-1] + (Tensor(pf, qf),),
                       s1.delta + s2.delta)

    if isinstance(p, ParRule):
        s = check(p.premise)
        n = len(s.gamma)
        if not (0 <= p.i < n and 0 <= p.j < n) or p.i == p.j:
            raise RuleViolation("par", f"bad positions {p.i},{p.j} for {s}")
        a, b = s.gamma[p.i], s.gamma[p.j]
        if polarity(a) is not Polarity.NEGATIVE or polarity(b) is not Polarity.NEGATIVE:
            raise RuleViolation("par", "fused formulas must both be negative")
        gamma = [Par(a, b) if k == p.i else f
                 for k, f in enumerate(s.gamma) if k != p.j]
        return Sequent(tuple(gamma), s.delta)

    if isinstance(p, DownRule):
        s = check(p.premise)
        if not 0 <= p.i < len(s.gamma):
            raise RuleViolation("dn", f"bad position {p.i} for {s}")
        for f in s.gamma:
            if polarity(f) is not Polarity.NEGATIVE:
                raise RuleViolation("dn", f"context must be all negative, found {fmt(f)}")
        gamma = tuple(Down(f) if k == p.i else f for k, f in enumerate(s.gamma))
        return Sequent(gamma, s.delta)

    if isinstance(p, UpRule):
        s = check(p.premise)
        if not 0 <= p.i < len(s.gamma):
            raise RuleViolation("up", f"bad position {p.i} for {s}")
        if polarity(s.gamma[p.i]) is not Polarity.POSITIVE:
            raise RuleViolation("up", f"shifted formula must be positive: {fmt(s.gamma[p.i])}")
        gamma = tuple(Up(f) if k == p.i else f for k, f in enumerate(s.gamma))
        return Sequent(gamma, s.delta)

    if isinstance(p, CutRule):
        s1, s2 = check(p.left), check(p.right)
        if not s1.gamma or not s2.gamma:
            raise RuleViolation("cut", "premise with empty context")
        a = s1.gamma[-1]
        if polarity(a) is not Polarity.NEGATIVE:
            raise RuleViolation("cut", f"left cut formula must be negative: {fmt(a)}")
        if s2.gamma[-1] != negate(a):
            raise RuleViolation(
                "cut", f"cut formulas not dual: {fmt(a)} vs {fmt(s2.gamma[-1])}")
        return Sequent(s1.gamma[:-1] + s2.gamma[:-1],
                       s1.delta + s2.delta + ((a, negate(a)),))

    if isinstance(p, Exchange):
        s = check(p.premise)
        n = len(s.gamma)
        if sorted(p.perm) != list(range(n)):
            raise RuleViolation("ex", f"not a permutation of 0..{n - 1}: {p.perm}")
        return Sequent(tuple(s.gamma[k] for k in p.perm), s.delta)

    raise TypeError(f"not a proof: {p!r}")


def rule_count(p: Proof) -> int:
    """Number of logical rules; Exchange is bookkeeping and not counted."""
    if isinstance(p, Ax):
        return 1
    if isinstance(p, (TensorRule, CutRule)):
        return 1 + rule_count(p.left) + rule_count(p.right)
    if isinstance(p, (ParRule, DownRule, UpRule)):
        return 1 + rule_count(p.premise)
    if isinstance(p, Exchange):
        return rule_count(p.premise)
    raise TypeError(f"not a proof: {p!r}")


def is_focused(s: Sequent) -> bool:
    """Exactly one positive formula in gamma."""
    return len(s.positives()) == 1


def is_cut_free(p: Proof) -> bool:
    return not check(p).delta


def exchange(p: Proof, perm: Sequence[int]) -> Proof:
    """Exchange node, collapsing nested exchanges and dropping identities."""
    perm = tuple(perm)
    if isinstance(p, Exchange):
        inner = p.perm
        perm = tuple(inner[k] for k in perm)
        p = p.premise
    if perm == tuple(range(len(perm))):
        return p
    return Exchange(p, perm)


def move_to_last(p: Proof, i: int) -> Proof:
    """Exchange moving gamma position i to the end, preserving the rest."""
    n = len(check(p).gamma)
    order = [k for k in range(n) if k != i] + [i]
    return exchange(p, order)


def move_last_to(p: Proof, i: int) -> Proof:
    """Exchange moving the last gamma formula to position i."""
    n = len(check(p).gamma)
    order = list(range(n - 1))
    order.insert(i, n - 1)
    return exchange(p, order)


# --- proof term reader/writer ---

def format_proof(p: Proof) -> str:
    if isinstance(p, Ax):
        return f"(ax {fmt(p.formula)})"
    if isinstance(p, TensorRule):
        return f"(tensor {format_proof(p.left)} {format_proof(p.right)})"
    if isinstance(p, ParRule):
        return f"(par {format_proof(p.premise)} {p.i} {p.j})"
    if isinstance(p, DownRule):
        return f"(dn {format_proof(p.premise)} {p.i})"
    if isinstance(p, UpRule):
        return f"(up {format_proof(p.premise)} {p.i})"
    if isinstance(p, CutRule):
        return f"(cut {format_proof(p.left)} {format_proof(p.right)})"
    if isinstance(p, Exchange):
        return f"(ex {format_proof(p.premise)} [{' '.join(str(k) for k in p.perm)}])"
    raise TypeError(f"not a proof: {p!r}")


_PROOF_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<word>[A-Za-z_][A-Za-z_0-9]*\^?)|(?P<punct>[()\[\]*|]))")


class _ProofParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self._skip_ws()
        if self.pos >= len(self.text):
            raise ParseError("unexpected end of proof", len(self.text))
        return self.text[self.pos]

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def word(self) -> str:
        self._skip_ws()
        m = re.match(r"[a-z]+", self.text[self.pos:])
        if not m:
            raise ParseError("expected a rule name", self.pos)
        self.pos += len(m.group())
        return m.group()

    def number(self) -> int:
        self._skip_ws()
        m = re.match(r"\d+", self.text[self.pos:])
        if not m:
            raise ParseError("expected an index", self.pos)
        self.pos += len(m.group())
        return int(m.group())

    def formula_until(self, closer: str) -> Formula:
        self._skip_ws()
        depth = 0
        end = self.pos
        while end < len(self.text):
            ch = self.text[end]
            if ch == "(":
                depth += 1
            elif ch == ")":
                if depth == 0:
                    break
                depth -= 1
            end += 1
        fp = _Parser(self.text[self.pos:end])
        f = fp.formula()
        if fp.peek() is not None:
            raise ParseError(f"trailing input {fp.peek()!r}", self.pos + fp.here())
        self.pos = end
        return f

    def proof(self) -> Proof:
        self.expect("(")
        rule = self.word()
        if rule == "ax":
            f = self.formula_until(")")
            self.expect(")")
            return Ax(f)
        if rule == "tensor":
            a = self.proof()
            b = self.proof()
            self.expect(")")
            return TensorRule(a, b)
        if rule == "par":
            a = self.proof()
            i = self.number()
            j = self.number()
            self.expect(")")
            return ParRule(a, i, j)
        if rule == "dn":
            a = self.proof()
            i = self.number()
            self.expect(")")
            return DownRule(a, i)
        if rule == "up":
            a = self.proof()
            i = self.number()
            self.expect(")")
            return UpRule(a, i)
        if rule == "cut":
            a = self.proof()
            b = self.proof()
            self.expect(")")
            return CutRule(a, b)
        if rule == "ex":
            a = self.proof()
            self.expect("[")
            ks = []
            while self.peek() != "]":
                ks.append(self.number())
            self.expect("]")
            self.expect(")")
            return Exchange(a, tuple(ks))
        raise ParseError(f"unknown rule {rule!r}", self.pos)


def parse_proof(text: str) -> Proof:
    pp = _ProofParser(text)
    p = pp.proof()
    pp._skip_ws()
    if pp.pos != len(pp.text):
        raise ParseError("trailing input after proof", pp.pos)
    return p


# --- bounded enumeration ---

def enumerate_proofs(max_rules: int, atoms: Sequence[str],
                     seed: int | None = None,
                     sample: int | None = None) -> Iterator[Proof]:
    """All well-formed proofs with at most `max_rules` logical rules.

    Axioms are instantiated on the negated atoms only; exchange nodes are
    inserted solely to route active formulas to the last position, so the
    full exchange closure of each proof is represented once.  With `sample`
    set, yields a seeded random sample instead of the full stream.
    """
    if max_rules < 1:
        raise ValueError("max_rules must be >= 1")
    levels = proofs_by_level(max_rules, atoms)
    if sample is None:
        for level in levels:
            yield from level
        return
    pool = [p for level in levels for p in level]
    rng = random.Random(seed)
    k = min(sample, len(pool))
    yield from rng.sample(pool, k)


_levels_cache: dict[tuple[str, ...], list[list[Proof]]] = {}


def proofs_by_level(max_rules: int, atoms: Sequence[str]) -> list[list[Proof]]:
    """levels[n-1] = all proofs with exactly n logical rules.

    Levels are memoized per atom set and grown on demand, so repeated
    suites share one enumeration (and its cached conclusions).
    """
    key = tuple(atoms)
    levels = _levels_cache.setdefault(key, [])
    if len(levels) >= max_rules:
        return [list(l) for l in levels[:max_rules]]
    grown = _grow_levels(max_rules, key, levels)
    _levels_cache[key] = grown
    return [list(l) for l in grown]


def _grow_levels(max_rules: int, atoms: tuple[str, ...],
                 levels: list[list[Proof]]) -> list[list[Proof]]:
    levels = list(levels)
    if not levels:
        levels = [[Ax(NegAtom(a)) for a in atoms]]
    for n in range(len(levels) + 1, max_rules + 1):
        out: list[Proof] = []
        for p in levels[n - 2]:
            s = check(p)
            gamma = s.gamma
            negs = [i for i, f in enumerate(gamma)
                    if polarity(f) is Polarity.NEGATIVE]
            pos = s.positives()
            for i in negs:
                for j in negs:
                    if i != j:
                        out.append(ParRule(p, i, j))
            if not pos:
                for i in range(len(gamma)):
                    out.append(DownRule(p, i))
            if pos:
                out.append(UpRule(p, pos[0]))
        for n1 in range(1, n - 1):
            n2 = n - 1 - n1
            for p1 in levels[n1 - 1]:
                s1 = check(p1)
                for p2 in levels[n2 - 1]:
                    s2 = check(p2)
                    # tensor: both premises focused, positives moved last
                    pos1, pos2 = s1.positives(), s2.positives()
                    if len(pos1) == 1 and len(pos2) == 1:
                        out.append(TensorRule(move_to_last(p1, pos1[0]),
                                              move_to_last(p2, pos2[0])))
                    # cut: a negative of p1 against its dual, the unique
                    # positive of p2
                    if len(pos2) == 1:
                        dual = s2.gamma[pos2[0]]
                        for i, f in enumerate(s1.gamma):
                            if polarity(f) is Polarity.NEGATIVE and negate(f) == dual:
                                out.append(CutRule(move_to_last(p1, i),
                                                   move_to_last(p2, pos2[0])))
        levels.append(out)
    return levels
