"""Reader for the polynomial text grammar.

Accepts sums and products of integers, rationals written ``p/q``, field
generators (``alpha``, ``t``, ``tstar``) and polynomial variables, with
``^`` (or ``**``) for nonnegative integer powers and parentheses.
Division is allowed only by nonzero constants.
"""

import re

from ..errors import ParseError, UnknownSymbol
from .poly import MultiPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, text, field, vars):
        self.toks = _tokenize(text)
        self.i = 0
        self.field = field
        self.vars = tuple(vars)
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r} in {self.text!r}")

    def parse(self):
        if not self.toks:
            raise ParseError("empty polynomial text")
        p = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return p

    def expr(self):
        p = self.term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self):
        p = self.unary()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                q = self.unary()
                if val == "*":
                    p = p * q
                else:
                    if not q.is_constant() or q.is_zero():
                        raise ParseError(f"division by non-constant or zero in {self.text!r}")
                    p = p.scale(1 / q.constant_term())
            else:
                return p

    def unary(self):
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            p = self.unary()
            return -p if val == "-" else p
        return self.power()

    def power(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k, e = self.take()
            if k != "num":
                raise ParseError(f"exponent must be a nonnegative integer in {self.text!r}")
            return base ** e
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return MultiPoly.const(self.field, self.vars, val)
        if kind == "name":
            if val in self.vars:
                return MultiPoly.var(self.field, self.vars, val)
            if val in self.field.gen_names():
                return MultiPoly.const(self.field, self.vars, self.field.gen(val))
            raise UnknownSymbol(f"unknown symbol {val!r} (variables {self.vars}, field {self.field.name})")
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_poly(text, field, vars):
    """Parse ``text`` into a MultiPoly over ``field`` in ``vars``."""
    if isinstance(text, MultiPoly):
        return text
    return _Parser(str(text), field, vars).parse()


def parse_element(text, field):
    """Parse a field element (no polynomial variables)."""
    return parse_poly(text, field, ()).constant_term()
