"""Recursive-descent parser for algebra expressions.

Grammar (whitespace insensitive)::

    expr     := sign? term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := atom ('^' '-'? integer)?
    atom     := 'x' | 'y' | 'g' | 'gi' | 'xi' | 'u' | 'v' | rational | '(' expr ')'
    rational := integer ('/' positive-integer)?

A leading sign is accepted so that printed normal forms re-parse.
Negative exponents are only meaningful on ``g`` and ``gi``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import Element, generator

__all__ = ["ParseError", "Num", "Atom", "Pow", "Product", "Sum", "parse", "evaluate_ast", "parse_element"]

ATOMS = ("x", "y", "g", "gi", "xi", "u", "v")


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, node) with sign in {+1, -1}


Node = Union[Num, Atom, Pow, Product, Sum]

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z]+)|(?P<op>[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, off = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", off)

    def expr(self) -> Node:
        terms = []
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        terms.append((sign, self.term()))
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                terms.append((-1 if val == "-" else 1, self.term()))
            else:
                break
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self) -> Node:
        factors = [self.factor()]
        while self.peek()[:2] == ("op", "*"):
            self.take()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> Node:
        start = self.peek()[2]
        base = self.atom()
        if self.peek()[:2] != ("op", "^"):
            return base
        self.take()
        negative = False
        if self.peek()[:2] == ("op", "-"):
            self.take()
            negative = True
        kind, val, off = self.take()
        if kind != "int":
            raise ParseError("expected integer exponent", off)
        exp = -int(val) if negative else int(val)
        if exp < 0 and not (isinstance(base, Atom) and base.name in ("g", "gi")):
            raise ParseError("negative exponent is only allowed on g or gi", start)
        return Pow(base, exp)

    def atom(self) -> Node:
        kind, val, off = self.take()
        if kind == "int":
            num = Fraction(int(val))
            if self.peek()[:2] == ("op", "/"):
                self.take()
                k2, v2, o2 = self.take()
                if k2 != "int" or int(v2) == 0:
                    raise ParseError("expected positive integer denominator", o2)
                num /= int(v2)
            return Num(num)
        if kind == "name":
            if val not in ATOMS:
                raise ParseError(f"unknown symbol {val!r}", off)
            return Atom(val)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.expect_op(")")
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", off)
        raise ParseError(f"unexpected token {val!r}", off)


def parse(text: str) -> Node:
    p = _Parser(text)
    node = p.expr()
    kind, val, off = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected token {val!r}", off)
    return node


def evaluate_ast(node: Node) -> Element:
    if isinstance(node, Num):
        return Element.scalar(node.value)
    if isinstance(node, Atom):
        return generator(node.name)
    if isinstance(node, Pow):
        if isinstance(node.base, Atom) and node.exponent < 0:
            flipped = "gi" if node.base.name == "g" else "g"
            return generator(flipped) ** (-node.exponent)
        return evaluate_ast(node.base) ** node.exponent
    if isinstance(node, Product):
        out = Element.scalar(1)
        for f in node.factors:
            out = out * evaluate_ast(f)
        return out
    if isinstance(node, Sum):
        out = Element()
        for sign, t in node.terms:
            out = out + evaluate_ast(t) * sign
        return out
    raise TypeError(f"not an expression node: {node!r}")


def parse_element(text: str) -> Element:
    return evaluate_ast(parse(text))
