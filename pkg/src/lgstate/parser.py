"""Recursive-descent parser for polynomial expressions.

    expr     := term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := atom ('^' NAT)?
    atom     := RATIONAL | VAR | '(' expr ')'
    RATIONAL := INT ('/' POSINT)?

A leading sign on a term is accepted (``-x + 1``).  There is no implicit
multiplication; whitespace is ignored.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import List, NamedTuple

from .poly import Poly, RingSpec


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.column, self.message = line, col, message
        super().__init__(f"{message} at line {line}, column {col}")


class Token(NamedTuple):
    kind: str
    value: str
    pos: int


_TOKEN = re.compile(r"\s*(?:(?P<INT>\d+)|(?P<VAR>[A-Za-z_][A-Za-z0-9_]*)|(?P<OP>[-+*/^()]))")


def tokenize(text: str) -> List[Token]:
    pos = 0
    out = []
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            rest = text[pos:]
            if rest.strip():
                bad = pos + len(rest) - len(rest.lstrip())
                raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
            break
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(Token("EOF", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, ring: RingSpec):
        self.text = text
        self.ring = ring
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token = None):
        tok = tok or self.tok
        raise ParseError(msg, self.text, tok.pos)

    def accept(self, value: str) -> bool:
        if self.tok.kind == "OP" and self.tok.value == value:
            self.i += 1
            return True
        return False

    def expr(self) -> Poly:
        neg = False
        if self.accept("-"):
            neg = True
        elif self.accept("+"):
            pass
        acc = self.term()
        if neg:
            acc = -acc
        while True:
            if self.accept("+"):
                acc = acc + self.term()
            elif self.accept("-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.accept("*"):
            acc = acc * self.factor()
        return acc

    def factor(self) -> Poly:
        base = self.atom()
        if self.accept("^"):
            tok = self.tok
            if tok.kind != "INT":
                self.error("expected a natural-number exponent")
            self.i += 1
            return base ** int(tok.value)
        return base

    def atom(self) -> Poly:
        tok = self.tok
        if tok.kind == "INT":
            self.i += 1
            value = Fraction(int(tok.value))
            if self.accept("/"):
                den = self.tok
                if den.kind != "INT" or int(den.value) == 0:
                    self.error("expected a positive denominator")
                self.i += 1
                value /= int(den.value)
            return self.ring.const(value)
        if tok.kind == "VAR":
            self.i += 1
            if tok.value not in self.ring.variables:
                self.error(f"unknown variable {tok.value!r}", tok)
            return self.ring.var(tok.value)
        if self.accept("("):
            inner = self.expr()
            if not self.accept(")"):
                self.error("expected ')'")
            return inner
        if tok.kind == "EOF":
            self.error("unexpected end of expression")
        self.error(f"unexpected token {tok.value!r}")


def parse_poly(text: str, ring: RingSpec) -> Poly:
    p = _Parser(text, ring)
    result = p.expr()
    if p.tok.kind != "EOF":
        p.error(f"unexpected token {p.tok.value!r}")
    return result
