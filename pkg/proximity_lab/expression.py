"""Polynomial expression parsing and printing.

Grammar::

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' nonnegint)?
    base     := rational | var | '(' expr ')'
    rational := int ('/' posint)?

Implicit multiplication ("2x", "x y") is rejected. Positions in errors are
0-based character offsets into the source text.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import MultivariatePolynomial
from .errors import ParseError

logger = logging.getLogger(__name__)

DEFAULT_VARIABLES = ("x", "y", "z")

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[-+*/^()]))")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


@dataclass(frozen=True)
class PolynomialExpression:
    source_text: str
    polynomial: MultivariatePolynomial
    variables: tuple


def tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if match is None:
            start = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.variables = tuple(variables)
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def at_op(self, *symbols) -> bool:
        return self.current.kind == "op" and self.current.text in symbols

    def parse(self) -> MultivariatePolynomial:
        result = self.expr()
        token = self.current
        if token.kind != "end":
            if token.kind in ("int", "name") or token.text == "(":
                raise ParseError("implicit multiplication is not allowed; use '*'", token.position)
            raise ParseError(f"unexpected {token.text!r}", token.position)
        return result

    def expr(self) -> MultivariatePolynomial:
        negate = False
        if self.at_op("+", "-"):
            negate = self.advance().text == "-"
        result = self.term()
        if negate:
            result = -result
        while self.at_op("+", "-"):
            op = self.advance().text
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> MultivariatePolynomial:
        result = self.factor()
        while self.at_op("*"):
            self.advance()
            result = result * self.factor()
        return result

    def factor(self) -> MultivariatePolynomial:
        base = self.base()
        if self.at_op("^"):
            self.advance()
            token = self.current
            if token.kind != "int":
                raise ParseError("exponent must be a nonnegative integer literal", token.position)
            self.advance()
            return base ** int(token.text)
        return base

    def base(self) -> MultivariatePolynomial:
        token = self.current
        if token.kind == "int":
            self.advance()
            value = Fraction(int(token.text))
            if self.at_op("/"):
                self.advance()
                denominator = self.current
                if denominator.kind != "int":
                    raise ParseError("expected a positive integer denominator", denominator.position)
                if int(denominator.text) == 0:
                    raise ParseError("zero denominator", denominator.position)
                self.advance()
                value = Fraction(int(token.text), int(denominator.text))
            return MultivariatePolynomial.constant(value, self.variables)
        if token.kind == "name":
            if token.text not in self.variables:
                raise ParseError(f"unknown variable {token.text!r}; expected one of {', '.join(self.variables)}",
                                 token.position)
            self.advance()
            return MultivariatePolynomial.variable(token.text, self.variables)
        if self.at_op("("):
            self.advance()
            inner = self.expr()
            if not self.at_op(")"):
                raise ParseError("expected ')'", self.current.position)
            self.advance()
            return inner
        if token.kind == "end":
            raise ParseError("unexpected end of input", token.position)
        raise ParseError(f"unexpected {token.text!r}", token.position)


def _used_names(text: str) -> set:
    return {m.group("name") for m in _TOKEN.finditer(text) if m.group("name")}


def parse_polynomial(text: str, variables: Optional[Sequence[str]] = None) -> PolynomialExpression:
    """Parse text into an exact polynomial.

    With ``variables`` omitted the declared variables are the ones of x, y, z
    that occur in the text, in that order.
    """
    if variables is None:
        used = _used_names(text)
        variables = tuple(v for v in DEFAULT_VARIABLES if v in used)
        unknown = sorted(used - set(DEFAULT_VARIABLES))
        if unknown:
            position = text.find(unknown[0])
            raise ParseError(f"unknown variable {unknown[0]!r}; expected one of x, y, z", position)
    polynomial = _Parser(text, variables).parse()
    logger.debug("parsed %r as %s", text, polynomial)
    return PolynomialExpression(text, polynomial, tuple(variables))


def format_polynomial(p: MultivariatePolynomial) -> str:
    return str(p)
