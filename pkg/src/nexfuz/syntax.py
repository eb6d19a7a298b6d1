"""Formula AST, concrete syntax, binary size measure, subformula utilities.

The propositional base is: constant 0, fuzzy negation, truncated subtraction
of a rational constant, and minimum.  Modal operators are pluggable; atoms
are treated as nullary modal operators and therefore appear as leaves.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .numerics import (
    NumericError,
    ONE,
    ZERO,
    bit_length,
    parse_rational,
)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


# ---------------------------------------------------------------------------
# Modal operators
# ---------------------------------------------------------------------------


class ModalOp:
    """Base class for modal operator tags."""

    __slots__ = ()

    def size(self) -> int:
        return 1


@dataclass(frozen=True)
class Diamond(ModalOp):
    """Fuzzy-relational diamond: degree of having a successor satisfying the argument."""

    def __str__(self) -> str:
        return "dia"


@dataclass(frozen=True)
class Generally(ModalOp):
    """Probabilistic operator: degree to which the argument holds with high probability."""

    def __str__(self) -> str:
        return "G"


@dataclass(frozen=True)
class MoreThan(ModalOp):
    """Largest degree guaranteed with probability strictly above the parameter."""

    p: Fraction

    def __post_init__(self):
        if not ZERO <= self.p <= ONE:
            raise NumericError(f"probability parameter {self.p} outside [0, 1]")

    def size(self) -> int:
        return bit_length(self.p.numerator) + bit_length(self.p.denominator)

    def __str__(self) -> str:
        return f"M{{{self.p}}}"


@dataclass(frozen=True)
class MetricDiamond(ModalOp):
    """Labelled diamond over a metric label space, with reach bound `c`."""

    label: str
    c: Fraction

    def __post_init__(self):
        if not ZERO <= self.c <= ONE:
            raise NumericError(f"reach bound {self.c} outside [0, 1]")

    def __str__(self) -> str:
        return f"dia{{{self.label},{self.c}}}"


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Zero(Formula):
    pass


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Var(Formula):
    """A placeholder truth variable; only used inside one-step sequents."""

    name: str


@dataclass(frozen=True)
class Neg(Formula):
    arg: Formula


@dataclass(frozen=True)
class Minus(Formula):
    """Truncated subtraction of a constant: value max(0, arg - c)."""

    arg: Formula
    c: Fraction

    def __post_init__(self):
        if not ZERO <= self.c <= ONE:
            raise NumericError(f"shift constant {self.c} outside [0, 1]")


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Modal(Formula):
    op: ModalOp
    arg: Formula


def Or(left: Formula, right: Formula) -> Formula:
    """Disjunction is sugar: max(x, y) = 1 - min(1-x, 1-y)."""
    return Neg(And(Neg(left), Neg(right)))


# ---------------------------------------------------------------------------
# Size, subformulas, depth
# ---------------------------------------------------------------------------


def size(f: Formula) -> int:
    """Syntactic size with rational constants measured in binary digits."""
    if isinstance(f, (Zero, Atom, Var)):
        return 1
    if isinstance(f, Neg):
        return size(f.arg) + 1
    if isinstance(f, Minus):
        return size(f.arg) + bit_length(f.c.numerator) + bit_length(f.c.denominator) + 1
    if isinstance(f, And):
        return size(f.left) + size(f.right) + 1
    if isinstance(f, Modal):
        return size(f.arg) + f.op.size()
    raise TypeError(f"not a formula: {f!r}")


def subformulas(f: Formula) -> set[Formula]:
    """All subformulas of f, including f itself."""
    out: set[Formula] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in out:
            continue
        out.add(g)
        if isinstance(g, (Neg, Minus, Modal)):
            stack.append(g.arg)
        elif isinstance(g, And):
            stack.append(g.left)
            stack.append(g.right)
    return out


def prop_subformulas(f: Formula) -> set[Formula]:
    """Subformulas not under a modal operator; stops at (and keeps) modal leaves."""
    out: set[Formula] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in out:
            continue
        out.add(g)
        if isinstance(g, (Neg, Minus)):
            stack.append(g.arg)
        elif isinstance(g, And):
            stack.append(g.left)
            stack.append(g.right)
    return out


def modal_depth(f: Formula) -> int:
    if isinstance(f, (Zero, Atom, Var)):
        return 0
    if isinstance(f, (Neg, Minus)):
        return modal_depth(f.arg)
    if isinstance(f, And):
        return max(modal_depth(f.left), modal_depth(f.right))
    if isinstance(f, Modal):
        return modal_depth(f.arg) + 1
    raise TypeError(f"not a formula: {f!r}")


def atoms_of(f: Formula) -> set[str]:
    return {g.name for g in subformulas(f) if isinstance(g, Atom)}


# ---------------------------------------------------------------------------
# Concrete syntax
# ---------------------------------------------------------------------------

_RESERVED = {"not", "dia", "G", "M"}

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<dec>\d+\.\d+)|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<sym>[()&|~\-/{},]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:].lstrip()
            if not rest:
                break
            raise ParseError(f"unexpected character {rest[0]!r}", pos)
        if m.lastgroup is not None:
            tokens.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_sym(self, sym: str):
        kind, value, pos = self.next()
        if kind != "sym" or value != sym:
            raise ParseError(f"expected {sym!r}, found {value!r}", pos)

    def parse_formula(self) -> Formula:
        f = self.parse_disj()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing input {value!r}", pos)
        return f

    def parse_disj(self) -> Formula:
        f = self.parse_conj()
        while self.peek()[:2] == ("sym", "|"):
            self.next()
            f = Or(f, self.parse_conj())
        return f

    def parse_conj(self) -> Formula:
        f = self.parse_shift()
        while self.peek()[:2] == ("sym", "&"):
            self.next()
            f = And(f, self.parse_shift())
        return f

    def parse_shift(self) -> Formula:
        f = self.parse_unary()
        while self.peek()[:2] == ("sym", "-"):
            self.next()
            f = Minus(f, self.parse_constant())
        return f

    def parse_unary(self) -> Formula:
        kind, value, pos = self.peek()
        if kind == "sym" and value == "~":
            self.next()
            return Neg(self.parse_unary())
        if kind == "ident":
            if value == "not":
                self.next()
                return Neg(self.parse_unary())
            if value == "dia":
                self.next()
                if self.peek()[:2] == ("sym", "{"):
                    self.next()
                    label = self.parse_label()
                    self.expect_sym(",")
                    c = self.parse_constant()
                    self.expect_sym("}")
                    return Modal(MetricDiamond(label, c), self.parse_unary())
                return Modal(Diamond(), self.parse_unary())
            if value == "G":
                self.next()
                return Modal(Generally(), self.parse_unary())
            if value == "M":
                self.next()
                self.expect_sym("{")
                p = self.parse_constant()
                self.expect_sym("}")
                return Modal(MoreThan(p), self.parse_unary())
        return self.parse_primary()

    def parse_primary(self) -> Formula:
        kind, value, pos = self.next()
        if kind == "sym" and value == "(":
            f = self.parse_disj()
            self.expect_sym(")")
            return f
        if kind == "int" and value == "0":
            return Zero()
        if kind == "ident":
            if value in _RESERVED:
                raise ParseError(f"reserved word {value!r} cannot be an atom", pos)
            return Atom(value)
        raise ParseError(f"unexpected token {value!r}", pos)

    def parse_label(self) -> str:
        kind, value, pos = self.next()
        if kind != "ident":
            raise ParseError(f"expected a label identifier, found {value!r}", pos)
        return value

    def parse_constant(self) -> Fraction:
        kind, value, pos = self.next()
        if kind == "dec":
            q = parse_rational(value)
        elif kind == "int":
            q = Fraction(int(value))
            if self.peek()[:2] == ("sym", "/"):
                self.next()
                kind2, value2, pos2 = self.next()
                if kind2 != "int":
                    raise ParseError(f"expected denominator, found {value2!r}", pos2)
                den = int(value2)
                if den == 0:
                    raise ParseError("zero denominator", pos2)
                q = Fraction(int(value), den)
        else:
            raise ParseError(f"expected a rational constant, found {value!r}", pos)
        if not ZERO <= q <= ONE:
            raise ParseError(f"constant {q} outside [0, 1]", pos)
        return q


def parse(text: str) -> Formula:
    """Parse the concrete syntax.

    Grammar, loosest to tightest: `|` (disjunction, desugared), `&`, postfix
    `- c` (truncated subtraction), then prefix `~`/`not`/`dia`/`G`/`M{p}`/
    `dia{label,c}`, then atoms, `0`, and parentheses.
    """
    return _Parser(text).parse_formula()


_PREC_AND = 2
_PREC_SHIFT = 3
_PREC_UNARY = 4


def _prec(f: Formula) -> int:
    if isinstance(f, And):
        return _PREC_AND
    if isinstance(f, Minus):
        return _PREC_SHIFT
    if isinstance(f, (Neg, Modal)):
        return _PREC_UNARY
    return 5


def _fmt(f: Formula, min_prec: int) -> str:
    p = _prec(f)
    if isinstance(f, Zero):
        s = "0"
    elif isinstance(f, (Atom, Var)):
        s = f.name
    elif isinstance(f, Neg):
        s = "~" + _fmt(f.arg, _PREC_UNARY)
    elif isinstance(f, Modal):
        s = f"{f.op} " + _fmt(f.arg, _PREC_UNARY)
    elif isinstance(f, Minus):
        s = _fmt(f.arg, _PREC_SHIFT) + f" - {f.c}"
    elif isinstance(f, And):
        s = _fmt(f.left, _PREC_AND) + " & " + _fmt(f.right, _PREC_AND + 1)
    else:
        raise TypeError(f"not a formula: {f!r}")
    if p < min_prec:
        return f"({s})"
    return s


def to_text(f: Formula) -> str:
    """Canonical concrete syntax; `parse(to_text(f)) == f`."""
    return _fmt(f, 0)
