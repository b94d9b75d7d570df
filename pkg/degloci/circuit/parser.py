"""Recursive-descent parser from polynomial expressions to circuit gates.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*        division only by numbers
    unary  := ("+" | "-") unary | power
    power  := atom (("^" | "**") INTEGER)?
    atom   := NUMBER | VARIABLE | "(" expr ")"

Numbers are integers, decimals (``0.25``, ``1e-6``) or built with ``/``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from degloci.circuit.builder import CircuitBuilder
from degloci.circuit.core import Circuit
from degloci.errors import ParseError

_TOKEN = re.compile(
    r"""
    (?P<space>[ \t\r\n]+)
  | (?P<number>\d+(?:\.\d*)?(?:[eE][-+]?\d+)?|\.\d+(?:[eE][-+]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\*\*|[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str, line: int = 1, column: int = 1) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, column)
        kind = match.lastgroup
        chunk = match.group()
        if kind != "space":
            tokens.append(Token(kind, chunk, line, column))
        for char in chunk:
            if char == "\n":
                line, column = line + 1, 1
            else:
                column += 1
        pos = match.end()
    tokens.append(Token("end", "", line, column))
    return tokens


class PolynomialParser:
    def __init__(self, builder: CircuitBuilder, variables: Sequence[str]):
        self.builder = builder
        self.variables = {name: j for j, name in enumerate(variables)}
        if len(self.variables) != len(variables):
            raise ParseError("duplicate variable name")
        self._tokens: list[Token] = []
        self._pos = 0

    def parse(self, text: str, line: int = 1, column: int = 1) -> int:
        self._tokens = tokenize(text, line, column)
        self._pos = 0
        node = self._expr()
        token = self._peek()
        if token.kind != "end":
            self._fail(f"unexpected {token.text!r}", token)
        return node

    def _peek(self) -> Token:
        return self._tokens[self._pos]

    def _next(self) -> Token:
        token = self._tokens[self._pos]
        self._pos += 1
        return token

    def _fail(self, message: str, token: Token):
        raise ParseError(message, token.line, token.column)

    def _expr(self) -> int:
        node = self._term()
        while self._peek().text in ("+", "-"):
            op = self._next().text
            rhs = self._term()
            node = self.builder.add(node, rhs) if op == "+" else self.builder.sub(node, rhs)
        return node

    def _term(self) -> int:
        node = self._unary()
        while self._peek().text in ("*", "/"):
            op = self._next()
            rhs_token = self._peek()
            rhs = self._unary()
            if op.text == "*":
                node = self.builder.mul(node, rhs)
                continue
            divisor = self.builder.constant_value(rhs)
            if divisor is None:
                self._fail("division is only allowed by a number", rhs_token)
            if not divisor:
                self._fail("division by zero", rhs_token)
            node = self.builder.div(node, divisor)
        return node

    def _unary(self) -> int:
        token = self._peek()
        if token.text == "-":
            self._next()
            return self.builder.neg(self._unary())
        if token.text == "+":
            self._next()
            return self._unary()
        return self._power()

    def _power(self) -> int:
        base = self._atom()
        if self._peek().text in ("^", "**"):
            self._next()
            token = self._next()
            if token.kind != "number" or not token.text.isdigit():
                self._fail("exponent must be a nonnegative integer", token)
            return self.builder.power(base, int(token.text))
        return base

    def _atom(self) -> int:
        token = self._next()
        if token.kind == "number":
            return self.builder.constant(Fraction(token.text))
        if token.kind == "name":
            if token.text not in self.variables:
                self._fail(f"unknown variable {token.text!r}", token)
            return self.builder.input(self.variables[token.text])
        if token.text == "(":
            node = self._expr()
            closing = self._next()
            if closing.text != ")":
                self._fail("expected ')'", closing)
            return node
        if token.kind == "end":
            self._fail("unexpected end of expression", token)
        self._fail(f"unexpected {token.text!r}", token)


def compile_polynomials(
    variables: Sequence[str],
    expressions: Mapping[str, str],
    equations: Sequence[str] = (),
    inequation: Optional[str] = None,
    matrix: Sequence[Sequence[str]] = (),
    declared_degree: Optional[int] = None,
) -> Circuit:
    """One circuit computing every named expression, sharing common gates."""
    builder = CircuitBuilder(len(variables))
    parser = PolynomialParser(builder, variables)
    for name, text in expressions.items():
        builder.output(name, parser.parse(text))
    return builder.build(equations, inequation, matrix, declared_degree)


def parse_polynomial(text: str, variables: Sequence[str], name: str = "f") -> Circuit:
    return compile_polynomials(variables, {name: text})
