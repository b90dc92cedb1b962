"""Text format for polynomials over Q.

Grammar (whitespace-insensitive between tokens):

    expr   := ['+' | '-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' natural)?
    base   := rational | variable | '(' expr ')'

Variables are z1 .. z9 (single digit). Rational literals are "3" or "3/2"
with no internal whitespace; negative values are spelled with the grammar's
minus. Multiplication is always explicit. The same renderer/parser pair is
used by the CLI, so str(parse_polynomial(s)) round-trips.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .polycore import Polynomial


class _Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind = kind
        self.value = value
        self.line = line
        self.col = col


def _tokenize(text):
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch in "+-*^()":
            tokens.append(_Token(ch, ch, line, col))
            col += 1
            i += 1
            continue
        if ch == "z":
            if i + 1 >= n or text[i + 1] not in "123456789":
                raise ParseError("expected a digit 1-9 after 'z'", line, col)
            tokens.append(_Token("var", int(text[i + 1]), line, col))
            col += 2
            i += 2
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            numerator = int(text[start:i])
            denominator = 1
            if i < n and text[i] == "/":
                j = i + 1
                if j >= n or not text[j].isdigit():
                    raise ParseError(
                        "expected digits after '/' in a rational literal",
                        line,
                        col + (i - start),
                    )
                while j < n and text[j].isdigit():
                    j += 1
                denominator = int(text[i + 1 : j])
                if denominator == 0:
                    raise ParseError("zero denominator in rational literal", line, col)
                i = j
            tokens.append(
                _Token("num", Fraction(numerator, denominator), line, col)
            )
            col += i - start
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", None, line, col))
    return tokens


class _Parser:
    def __init__(self, tokens, nvars):
        self.tokens = tokens
        self.pos = 0
        self.nvars = nvars

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.kind!r}", tok.line, tok.col)
        self.pos += 1
        return tok

    def parse_expr(self):
        sign = 1
        if self.peek().kind in "+-":
            sign = -1 if self.take().kind == "-" else 1
        result = self.parse_term() * sign
        while self.peek().kind in "+-":
            op = self.take().kind
            term = self.parse_term()
            result = result - term if op == "-" else result + term
        return result

    def parse_term(self):
        result = self.parse_factor()
        while self.peek().kind == "*":
            self.take()
            result = result * self.parse_factor()
        return result

    def parse_factor(self):
        base = self.parse_base()
        if self.peek().kind == "^":
            self.take()
            tok = self.take("num")
            if tok.value.denominator != 1 or tok.value < 0:
                raise ParseError("exponent must be a natural number", tok.line, tok.col)
            return base ** int(tok.value)
        return base

    def parse_base(self):
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            return Polynomial.constant(tok.value, self.nvars)
        if tok.kind == "var":
            self.take()
            if tok.value > self.nvars:
                raise ParseError(
                    f"variable z{tok.value} exceeds the declared {self.nvars} variables",
                    tok.line,
                    tok.col,
                )
            return Polynomial.variable(tok.value, self.nvars)
        if tok.kind == "(":
            self.take()
            inner = self.parse_expr()
            self.take(")")
            return inner
        raise ParseError(
            f"expected a number, variable or '(', found {tok.kind!r}", tok.line, tok.col
        )


def max_variable_index(text):
    """Largest z-index mentioned in the text, 0 when none appear."""
    return max(
        (tok.value for tok in _tokenize(text) if tok.kind == "var"), default=0
    )


def parse_polynomial(text, nvars=None):
    """Parse text into a Polynomial.

    When ``nvars`` is None it is inferred as the largest variable index in
    the text (0 for a constant). Pass it explicitly to align several inputs
    on a common variable count.
    """
    tokens = _tokenize(text)
    if nvars is None:
        nvars = max((t.value for t in tokens if t.kind == "var"), default=0)
    parser = _Parser(tokens, nvars)
    result = parser.parse_expr()
    trailing = parser.peek()
    if trailing.kind != "end":
        raise ParseError(
            f"unexpected trailing input {trailing.kind!r}", trailing.line, trailing.col
        )
    return result
