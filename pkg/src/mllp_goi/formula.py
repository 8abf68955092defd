"""Formula syntax for multiplicative polarized linear logic.

Positive formulas are atoms, tensors, `one` and down-shifts of negative
formulas; negative formulas are negated atoms, pars, `bot` and up-shifts of
positive formulas.  Construction enforces the polarity discipline, so every
reachable `Formula` value is well formed.

ASCII grammar (used by `parse` and `fmt`)::

    F ::= ident | ident "^" | "one" | "bot"
        | "(" F "*" F ")" | "(" F "|" F ")" | "dn" F | "up" F | "(" F ")"

`^` is atomic negation only; `negate` computes the full De Morgan dual.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum


class Polarity(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"

    def flip(self) -> "Polarity":
        if self is Polarity.POSITIVE:
            return Polarity.NEGATIVE
        return Polarity.POSITIVE


class FormulaError(Exception):
    """Ill-formed formula (polarity discipline violated)."""


class ParseError(Exception):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Formula:
    """Base class; concrete nodes below are frozen dataclasses."""

    __slots__ = ()

    def __str__(self) -> str:
        return fmt(self)


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class NegAtom(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class One(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Bot(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Tensor(Formula):
    left: Formula
    right: Formula

    def __post_init__(self):
        if polarity(self.left) is not Polarity.POSITIVE:
            raise FormulaError(f"tensor left operand must be positive: {self.left}")
        if polarity(self.right) is not Polarity.POSITIVE:
            raise FormulaError(f"tensor right operand must be positive: {self.right}")


@dataclass(frozen=True, slots=True)
class Par(Formula):
    left: Formula
    right: Formula

    def __post_init__(self):
        if polarity(self.left) is not Polarity.NEGATIVE:
            raise FormulaError(f"par left operand must be negative: {self.left}")
        if polarity(self.right) is not Polarity.NEGATIVE:
            raise FormulaError(f"par right operand must be negative: {self.right}")


@dataclass(frozen=True, slots=True)
class Down(Formula):
    body: Formula

    def __post_init__(self):
        if polarity(self.body) is not Polarity.NEGATIVE:
            raise FormulaError(f"dn body must be negative: {self.body}")


@dataclass(frozen=True, slots=True)
class Up(Formula):
    body: Formula

    def __post_init__(self):
        if polarity(self.body) is not Polarity.POSITIVE:
            raise FormulaError(f"up body must be positive: {self.body}")


def polarity(f: Formula) -> Polarity:
    """Polarity of a well-formed formula."""
    if isinstance(f, (Atom, One, Tensor, Down)):
        return Polarity.POSITIVE
    if isinstance(f, (NegAtom, Bot, Par, Up)):
        return Polarity.NEGATIVE
    raise TypeError(f"not a formula: {f!r}")


def negate(f: Formula) -> Formula:
    """Involutive De Morgan dual.

    Non-reversing convention: (A * B)^ = A^ | B^.  Shifts swap:
    (dn A)^ = up A^ and (up A)^ = dn A^.
    """
    if isinstance(f, Atom):
        return NegAtom(f.name)
    if isinstance(f, NegAtom):
        return Atom(f.name)
    if isinstance(f, One):
        return Bot()
    if isinstance(f, Bot):
        return One()
    if isinstance(f, Tensor):
        return Par(negate(f.left), negate(f.right))
    if isinstance(f, Par):
        return Tensor(negate(f.left), negate(f.right))
    if isinstance(f, Down):
        return Up(negate(f.body))
    if isinstance(f, Up):
        return Down(negate(f.body))
    raise TypeError(f"not a formula: {f!r}")


def contains_units(f: Formula) -> bool:
    if isinstance(f, (One, Bot)):
        return True
    if isinstance(f, (Tensor, Par)):
        return contains_units(f.left) or contains_units(f.right)
    if isinstance(f, (Down, Up)):
        return contains_units(f.body)
    return False


def contains_shift(f: Formula) -> bool:
    if isinstance(f, (Down, Up)):
        return True
    if isinstance(f, (Tensor, Par)):
        return contains_shift(f.left) or contains_shift(f.right)
    return False


def fmt(f: Formula) -> str:
    """Canonical ASCII rendering; `parse(fmt(f)) == f`."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, NegAtom):
        return f.name + "^"
    if isinstance(f, One):
        return "one"
    if isinstance(f, Bot):
        return "bot"
    if isinstance(f, Tensor):
        return f"({fmt(f.left)} * {fmt(f.right)})"
    if isinstance(f, Par):
        return f"({fmt(f.left)} | {fmt(f.right)})"
    if isinstance(f, Down):
        return f"dn {fmt(f.body)}"
    if isinstance(f, Up):
        return f"up {fmt(f.body)}"
    raise TypeError(f"not a formula: {f!r}")


_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<punct>[()*|^]))")

_KEYWORDS = {"one", "bot", "dn", "up"}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list[tuple[str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                if text[pos:].strip() == "":
                    break
                raise ParseError(f"unexpected character {text[pos:].lstrip()[0]!r}", pos)
            tok = m.group("ident") or m.group("punct")
            self.tokens.append((tok, m.start("ident") if m.group("ident") else m.start("punct")))
            pos = m.end()

    def peek(self) -> str | None:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][0]
        return None

    def here(self) -> int:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][1]
        return len(self.text)

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text))
        self.pos += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.peek()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}", self.here())
        self.pos += 1

    def formula(self) -> Formula:
        start = self.here()
        tok = self.peek()
        if tok is None:
            raise ParseError("expected a formula", start)
        if tok == "(":
            self.take()
            left = self.formula()
            op = self.peek()
            if op == ")":
                self.take()
                return left
            if op not in ("*", "|"):
                raise ParseError(f"expected '*', '|' or ')', got {op!r}", self.here())
            self.take()
            right = self.formula()
            self.expect(")")
            try:
                return Tensor(left, right) if op == "*" else Par(left, right)
            except FormulaError as e:
                raise ParseError(str(e), start) from e
        if tok == "dn":
            self.take()
            body = self.formula()
            try:
                return Down(body)
            except FormulaError as e:
                raise ParseError(str(e), start) from e
        if tok == "up":
            self.take()
            body = self.formula()
            try:
                return Up(body)
            except FormulaError as e:
                raise ParseError(str(e), start) from e
        if tok == "one":
            self.take()
            return One()
        if tok == "bot":
            self.take()
            return Bot()
        if tok in _KEYWORDS or not re.match(r"[A-Za-z_]", tok):
            raise ParseError(f"expected a formula, got {tok!r}", start)
        self.take()
        if self.peek() == "^":
            self.take()
            return NegAtom(tok)
        return Atom(tok)


def parse(text: str) -> Formula:
    """Parse the ASCII grammar; raises `ParseError` with a position."""
    p = _Parser(text)
    f = p.formula()
    if p.peek() is not None:
        raise ParseError(f"trailing input {p.peek()!r}", p.here())
    return f
