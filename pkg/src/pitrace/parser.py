"""Recursive-descent parser for the expression grammar.

    expr   := term (("+" | "-") term)*
    term   := ("+" | "-")? factor ("*" factor)*
    factor := atom ("^" nat)?
    atom   := rational | "X" nat | "tr" "(" expr ")" | "det" "(" expr ")"
            | "[" expr "," expr "]" | "(" expr ")"

Whitespace is ignored.  Multiplication is always explicit, so ``X12`` is
the twelfth generator and never ``X1*2``.
"""

import re

from .algebra import TracePolynomial
from .errors import DimensionError, ParseError

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<gen>X\d+)|(?P<name>tr|det)|(?P<sym>[-+*^()\[\],]))"
)


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        mt = _TOKEN.match(text, pos)
        if mt is None:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[start]!r}", start)
        kind = mt.lastgroup
        start = mt.start(kind)
        tokens.append((kind, mt.group(kind), start))
        pos = mt.end()
    tokens.append(("end", "", len(text)))
    return tokens


def max_generator(text):
    """Largest generator index mentioned in ``text`` (0 if none)."""
    return max((int(t[1][1:]) for t in tokenize(text) if t[0] == "gen"), default=0)


class _Parser:
    def __init__(self, text, m, n):
        self.tokens = tokenize(text)
        self.i = 0
        self.m = m
        self.n = n

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            shown = tok[1] or "end of input"
            raise ParseError(f"expected {value!r}, found {shown!r}", tok[2])
        return tok

    def parse(self):
        result = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return result

    def expr(self):
        result = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self):
        negate = False
        if self.peek()[1] in ("+", "-"):
            negate = self.take()[1] == "-"
        result = self.factor()
        while self.peek()[1] == "*":
            self.take()
            result = result * self.factor()
        return -result if negate else result

    def factor(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num" or "/" in tok[1]:
                raise ParseError("exponent must be a natural number", tok[2])
            base = base ** int(tok[1])
        return base

    def atom(self):
        kind, value, pos = self.take()
        if kind == "num":
            return TracePolynomial.constant(value, self.m)
        if kind == "gen":
            idx = int(value[1:])
            if not 1 <= idx <= self.m:
                raise ParseError(f"generator {value} out of range for m={self.m}", pos)
            return TracePolynomial.generator(idx, self.m)
        if kind == "name":
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            if value == "tr":
                if inner.constant_term() != 0 and self.n is None:
                    raise ParseError("tr of an expression with a constant term requires n", pos)
                return inner.trace(self.n)
            if self.n is None:
                raise ParseError("det() requires the matrix size n", pos)
            return inner.det(self.n)
        if value == "[":
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect("]")
            return a.commutator(b)
        if value == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected {value or 'end of input'!r}", pos)


def parse(text, m=None, n=None):
    """Parse ``text`` into a normalized :class:`TracePolynomial`.

    ``m`` defaults to the largest generator index in the text (at least
    1).  ``n`` is the intended matrix size; it is required by ``det`` and
    by traces of expressions with a constant term.
    """
    if m is None:
        m = max(max_generator(text), 1)
    if m < 1:
        raise DimensionError("m must be positive")
    return _Parser(text, m, n).parse()
