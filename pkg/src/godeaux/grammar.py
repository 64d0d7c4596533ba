"""Tiny recursive-descent expression evaluator shared by the text grammars.

Handles ``+ - * / ^``, parentheses, integer literals, named symbols, and
implicit multiplication by juxtaposition ("3K", "(1+u)X^2").  Callers supply
two hooks: ``number`` wraps an integer literal into their value type and
``lookup`` resolves a symbol name.  Values themselves carry the arithmetic
through the usual operators, so the same parser serves field elements,
polynomials, and divisor-class expressions.
"""

from __future__ import annotations

import re

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9']*)|(\*\*|[-+*/^().]))")


class GrammarError(ValueError):
    pass


def tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise GrammarError(f"unexpected character {text[pos:].strip()[0]!r}")
            break
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, tokens, number, lookup, pairing=None):
        self.tokens = tokens
        self.i = 0
        self.number = number
        self.lookup = lookup
        self.pairing = pairing

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise GrammarError(f"expected {op!r}")

    def parse_top(self):
        value = self.parse_sum()
        kind, val = self.peek()
        if self.pairing is not None and (kind, val) == ("op", "."):
            self.take()
            rhs = self.parse_sum()
            value = self.pairing(value, rhs)
            kind, val = self.peek()
        if kind != "end":
            raise GrammarError(f"trailing input near {val!r}")
        return value

    def parse_sum(self):
        value = self.parse_product()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "+"):
                self.take()
                value = value + self.parse_product()
            elif (kind, val) == ("op", "-"):
                self.take()
                value = value - self.parse_product()
            else:
                return value

    def parse_product(self):
        value = self.parse_factor()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                value = value * self.parse_factor()
            elif (kind, val) == ("op", "/"):
                self.take()
                value = value / self.parse_factor()
            elif kind in ("num", "name") or (kind, val) == ("op", "("):
                value = value * self.parse_factor()  # juxtaposition
            else:
                return value

    def parse_factor(self):
        kind, val = self.peek()
        if (kind, val) == ("op", "-"):
            self.take()
            return -self.parse_factor()
        if (kind, val) == ("op", "+"):
            self.take()
            return self.parse_factor()
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        kind, val = self.peek()
        if (kind, val) == ("op", "^"):
            self.take()
            kind, val = self.take()
            neg = False
            if (kind, val) == ("op", "-"):
                neg = True
                kind, val = self.take()
            if kind != "num":
                raise GrammarError("exponent must be an integer literal")
            return base ** (-val if neg else val)
        return base

    def parse_atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.number(val)
        if kind == "name":
            return self.lookup(val)
        if (kind, val) == ("op", "("):
            inner = self.parse_sum()
            self.expect_op(")")
            return inner
        raise GrammarError(f"unexpected token {val!r}")


def evaluate(text: str, number, lookup, pairing=None):
    """Evaluate ``text``; ``pairing`` (if given) enables a top-level '.' operator."""
    if not text.strip():
        raise GrammarError("empty expression")
    return _Parser(tokenize(text), number, lookup, pairing).parse_top()
