"""Parser for polynomial expressions with exact rational coefficients.

Grammar (documented in docs/file-formats.md):

    expr     := term { ("+" | "-") term }
    term     := factor { "*" factor }
    factor   := atom [ "^" integer ]
    atom     := rational | variable | "(" expr ")" | "-" factor
    rational := integer [ "/" integer ]

Floating-point literals are rejected: a '.' anywhere in the input is an
error, as is an exponent suffix. Errors cite the character column.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import InputError
from .qlinalg import MPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*/^]))")

RATIONAL_LITERAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse a "p/q" or "p" literal; floats are rejected."""
    text = text.strip()
    if not RATIONAL_LITERAL.match(text):
        raise InputError("not an exact rational literal: %r" % text)
    return Fraction(text)


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else "%d/%d" % (q.numerator, q.denominator)


class _Tokens:
    def __init__(self, text: str):
        if "." in text:
            raise InputError(
                "floating-point literal at column %d: only exact rationals are accepted"
                % (text.index(".") + 1)
            )
        self.text = text
        self.pos = 0
        self.items: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                if text[pos:].strip() == "":
                    break
                raise InputError("unexpected character %r at column %d" % (text[pos], pos + 1))
            if m.group(1) is not None:
                self.items.append(("int", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.items.append(("name", m.group(2), m.start(2)))
            else:
                self.items.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.index = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.items[self.index] if self.index < len(self.items) else None

    def next(self) -> tuple[str, str, int]:
        item = self.peek()
        if item is None:
            raise InputError("unexpected end of expression")
        self.index += 1
        return item


def parse_polynomial(text: str, variables: tuple[str, ...]) -> MPoly:
    """Parse an expression into an MPoly over the given variables."""
    tokens = _Tokens(text)
    result = _parse_expr(tokens, variables)
    leftover = tokens.peek()
    if leftover is not None:
        raise InputError(
            "unexpected token %r at column %d" % (leftover[1], leftover[2] + 1)
        )
    return result


def _parse_expr(tokens: _Tokens, variables) -> MPoly:
    value = _parse_term(tokens, variables)
    while True:
        item = tokens.peek()
        if item and item[0] == "op" and item[1] in "+-":
            tokens.next()
            rhs = _parse_term(tokens, variables)
            value = value + rhs if item[1] == "+" else value - rhs
        else:
            return value


def _parse_term(tokens: _Tokens, variables) -> MPoly:
    value = _parse_factor(tokens, variables)
    while True:
        item = tokens.peek()
        if item and item[0] == "op" and item[1] == "*":
            tokens.next()
            value = value * _parse_factor(tokens, variables)
        elif item and item[0] == "op" and item[1] == "/":
            tokens.next()
            divisor = _parse_factor(tokens, variables)
            if divisor.total_degree() > 0:
                raise InputError(
                    "division is only allowed by constants (column %d)" % (item[2] + 1)
                )
            c = divisor(*([0] * len(variables)))
            if c == 0:
                raise InputError("division by zero at column %d" % (item[2] + 1))
            value = value.scale(Fraction(1) / c)
        else:
            return value


def _parse_factor(tokens: _Tokens, variables) -> MPoly:
    base = _parse_atom(tokens, variables)
    item = tokens.peek()
    if item and item[0] == "op" and item[1] == "^":
        tokens.next()
        exp = tokens.next()
        if exp[0] != "int":
            raise InputError("exponent must be a nonnegative integer (column %d)" % (exp[2] + 1))
        return base ** int(exp[1])
    return base


def _parse_atom(tokens: _Tokens, variables) -> MPoly:
    item = tokens.next()
    kind, text, pos = item
    if kind == "int":
        return MPoly.constant(variables, int(text))
    if kind == "name":
        if text not in variables:
            raise InputError(
                "unknown variable %r at column %d (expected one of %s)"
                % (text, pos + 1, ", ".join(variables))
            )
        return MPoly.variable(variables, text)
    if kind == "op" and text == "(":
        inner = _parse_expr(tokens, variables)
        closing = tokens.next()
        if closing[1] != ")":
            raise InputError("expected ')' at column %d" % (closing[2] + 1))
        return inner
    if kind == "op" and text == "-":
        return -_parse_factor(tokens, variables)
    raise InputError("unexpected token %r at column %d" % (text, pos + 1))
