"""Tiny polynomial-expression language for user-supplied map definitions.

Grammar (no division, no exponent operator; powers are written as
repeated products):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | INT | 'x1' | 'x2' | 'x3' | '(' expr ')'

Evaluation is exact integer arithmetic on canonical coordinates,
reduced mod the requested modulus at the end.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .maps import MapTriple, triple_from_tables
from .pgroup import Element, GroupParams, unrank

VARIABLES = ("x1", "x2", "x3")


class ParseError(ValueError):
    """Syntax or vocabulary error, carrying the byte offset of the token."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "MapExpr"


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-' or '*'
    left: "MapExpr"
    right: "MapExpr"


MapExpr = Num | Var | Neg | BinOp

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.group("int") is not None:
            tokens.append(("int", m.group("int"), m.start("int")))
        elif m.group("ident") is not None:
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, off = self.peek()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", off)
        self.advance()

    def parse(self) -> MapExpr:
        e = self.expr()
        kind, val, off = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", off)
        return e

    def expr(self) -> MapExpr:
        e = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.advance()
                e = BinOp(val, e, self.term())
            else:
                return e

    def term(self) -> MapExpr:
        e = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.advance()
                e = BinOp("*", e, self.factor())
            else:
                return e

    def factor(self) -> MapExpr:
        kind, val, off = self.peek()
        if kind == "op" and val == "-":
            self.advance()
            return Neg(self.factor())
        if kind == "int":
            self.advance()
            return Num(int(val))
        if kind == "ident":
            if val not in VARIABLES:
                raise ParseError(f"unknown identifier {val!r}", off)
            self.advance()
            return Var(val)
        if kind == "op" and val == "(":
            self.advance()
            e = self.expr()
            self.expect_op(")")
            return e
        raise ParseError(f"expected expression, got {val!r}" if val else "unexpected end of input", off)


def parse_map_expr(text: str) -> MapExpr:
    """Parse an expression over x1, x2, x3 with +, -, *, integer literals
    and parentheses.  Errors carry a byte offset."""
    return _Parser(text).parse()


def _prec(e: MapExpr) -> int:
    if isinstance(e, BinOp):
        return 1 if e.op in "+-" else 2
    return 3


def to_text(e: MapExpr) -> str:
    """Render with minimal parentheses; parse_map_expr(to_text(e)) == e."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        inner = to_text(e.operand)
        if isinstance(e.operand, BinOp):
            inner = f"({inner})"
        return f"-{inner}"
    left = to_text(e.left)
    if _prec(e.left) < _prec(e):
        left = f"({left})"
    right = to_text(e.right)
    # left-associative operators: parenthesize right child of equal precedence,
    # and anything that would re-associate (e.g. "a - (b - c)", "-x" after '-')
    if _prec(e.right) <= _prec(e) or isinstance(e.right, Neg):
        right = f"({right})"
    return f"{left} {e.op} {right}"


def eval_map_expr(e: MapExpr, x: Element, modulus: int) -> int:
    """Exact evaluation on canonical coordinates, reduced mod modulus."""
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    return _eval(e, x) % modulus


def _eval(e: MapExpr, x: Element) -> int:
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        return x[VARIABLES.index(e.name)]
    if isinstance(e, Neg):
        return -_eval(e.operand, x)
    l = _eval(e.left, x)
    r = _eval(e.right, x)
    if e.op == "+":
        return l + r
    if e.op == "-":
        return l - r
    return l * r


def triple_from_exprs(g: GroupParams, alpha_expr, beta_expr, gamma_expr) -> MapTriple:
    """Build a dense MapTriple from three expressions (strings or ASTs).

    Raises if the forced row at the identity a is violated.
    """
    exprs = []
    for e in (alpha_expr, beta_expr, gamma_expr):
        exprs.append(parse_map_expr(e) if isinstance(e, str) else e)
    ea, eb, ec = exprs
    alpha = []
    beta = []
    gamma = []
    for k in range(g.order):
        x = unrank(g, k)
        alpha.append(eval_map_expr(ea, x, g.pm))
        beta.append(eval_map_expr(eb, x, g.pn))
        gamma.append(eval_map_expr(ec, x, g.pd))
    return triple_from_tables(g, alpha, beta, gamma)
