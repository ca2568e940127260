"""Arithmetic expressions over reals: parsing and evaluation.

Grammar, loosest binding first::

    expr  := term ('+' term)*
    term  := '-' term | natural '*' term | atom
    atom  := rational | '(' expr ')' | 'abs' '(' expr ')' | 'sqrt' '(' expr ')'

Rationals are written ``a``, ``a/b`` or as finite decimals like ``1.25``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import CertificateError
from .newton import sqrt as sqrt_rational
from .newton import sqrt_real
from .numerics import format_rational, parse_rational
from .reals import Real, exact, nat_scale, real_abs


class ParseError(ValueError):
    def __init__(self, message, pos):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


@dataclass(frozen=True)
class Lit:
    value: Fraction


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Abs:
    arg: object


@dataclass(frozen=True)
class Sqrt:
    arg: object


@dataclass(frozen=True)
class NatScale:
    n: int
    arg: object


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d+)?(?:\s*/\s*\d+)?)
  | (?P<word>[A-Za-z_]+)
  | (?P<sym>[()+\-*])
""", re.VERBOSE)


def _tokens(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self, ahead=0):
        return self.toks[min(self.i + ahead, len(self.toks) - 1)]

    def take(self, kind, value=None):
        k, v, pos = self.peek()
        if k != kind or (value is not None and v != value):
            want = value or kind
            got = v or "end of input"
            raise ParseError(f"expected {want!r}, found {got!r}", pos)
        self.i += 1
        return v

    def expr(self):
        node = self.term()
        while self.peek()[:2] == ("sym", "+"):
            self.i += 1
            node = Add(node, self.term())
        return node

    def term(self):
        k, v, pos = self.peek()
        if (k, v) == ("sym", "-"):
            self.i += 1
            return Neg(self.term())
        if k == "num" and self.peek(1)[:2] == ("sym", "*"):
            if not v.isdigit():
                raise ParseError(f"the factor {v!r} must be a natural number", pos)
            self.i += 2
            return NatScale(int(v), self.term())
        return self.atom()

    def atom(self):
        k, v, pos = self.peek()
        if k == "num":
            self.i += 1
            try:
                return Lit(parse_rational(v))
            except ZeroDivisionError:
                raise ParseError(f"zero denominator in {v!r}", pos) from None
        if (k, v) == ("sym", "("):
            self.i += 1
            node = self.expr()
            self.take("sym", ")")
            return node
        if k == "word":
            if v not in ("abs", "sqrt"):
                raise ParseError(f"unknown function {v!r}", pos)
            self.i += 1
            self.take("sym", "(")
            arg = self.expr()
            self.take("sym", ")")
            return Abs(arg) if v == "abs" else Sqrt(arg)
        raise ParseError(f"unexpected {v or 'end of input'!r}", pos)


def parse(text: str):
    """Parse ``text`` into an expression tree; raises :class:`ParseError`."""
    p = _Parser(text)
    node = p.expr()
    k, v, pos = p.peek()
    if k != "end":
        raise ParseError(f"unexpected {v!r}", pos)
    return node


def unparse(node) -> str:
    if isinstance(node, Lit):
        return format_rational(node.value)
    if isinstance(node, Add):
        return f"({unparse(node.left)} + {unparse(node.right)})"
    if isinstance(node, Neg):
        return f"-{unparse(node.arg)}"
    if isinstance(node, Abs):
        return f"abs({unparse(node.arg)})"
    if isinstance(node, Sqrt):
        return f"sqrt({unparse(node.arg)})"
    if isinstance(node, NatScale):
        return f"{node.n} * {unparse(node.arg)}"
    raise TypeError(f"not an expression node: {node!r}")


def evaluate(node, budget: int = 64) -> Real:
    """Build the real denoted by ``node``.

    Square roots of literals use the Newton enclosures directly; any other
    square root first needs a positivity certificate within ``budget`` terms
    and raises :class:`CertificateError` otherwise.
    """
    if isinstance(node, Lit):
        return exact(node.value)
    if isinstance(node, Add):
        return evaluate(node.left, budget) + evaluate(node.right, budget)
    if isinstance(node, Neg):
        return -evaluate(node.arg, budget)
    if isinstance(node, Abs):
        return real_abs(evaluate(node.arg, budget))
    if isinstance(node, NatScale):
        return nat_scale(node.n, evaluate(node.arg, budget))
    if isinstance(node, Sqrt):
        if isinstance(node.arg, Lit):
            if node.arg.value <= 0:
                raise CertificateError(
                    f"argument of sqrt is not positive: {format_rational(node.arg.value)}")
            return sqrt_rational(node.arg.value)
        return sqrt_real(evaluate(node.arg, budget), budget)
    raise TypeError(f"not an expression node: {node!r}")


__all__ = ["Lit", "Add", "Neg", "Abs", "Sqrt", "NatScale", "ParseError", "parse",
           "unparse", "evaluate"]
