"""Recursive-descent parser for polynomial expressions in ``x`` and ``y``.

Grammar (whitespace ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (['*'] factor)*          juxtaposition multiplies
    factor := base ['^' exponent]
    base   := NUMBER ['/' NUMBER] | 'x' | 'y' | '(' expr ')'

Exponents are non-negative integers, written plainly (``x^3``), in
parentheses (``x^(3)``) or as superscript digits (``x³``).
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .polycore import BiPoly

_SUPERSCRIPTS = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789")
_TOKEN = re.compile(r"\s*(?:(\d+)|([xy])|(\*\*|[-+*/^()])|([⁰¹²³⁴⁵⁶⁷⁸⁹]+))")


class PolySyntaxError(ValueError):
    def __init__(self, msg, pos, src):
        super().__init__(f"{msg} at position {pos}: {src!r}")
        self.pos = pos


# parse tree nodes


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class Prod:
    factors: tuple


@dataclass(frozen=True)
class Sum:
    # (sign, node) pairs, sign is +1 or -1
    terms: tuple


def evaluate(node):
    """Evaluate a parse tree to a :class:`BiPoly` in ``x, y``."""
    if isinstance(node, Num):
        return BiPoly.const(node.value)
    if isinstance(node, Var):
        return BiPoly.var(node.name)
    if isinstance(node, Pow):
        return evaluate(node.base) ** node.exp
    if isinstance(node, Prod):
        out = BiPoly.const(1)
        for f in node.factors:
            out = out * evaluate(f)
        return out
    if isinstance(node, Sum):
        out = BiPoly()
        for sign, t in node.terms:
            v = evaluate(t)
            out = out + v if sign > 0 else out - v
        return out
    raise TypeError(f"not a parse node: {node!r}")


def _tokenize(src):
    toks = []
    pos = 0
    src_len = len(src)
    while pos < src_len:
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if not m:
            stripped = len(src[pos:]) - len(src[pos:].lstrip())
            raise PolySyntaxError(f"unexpected character {src[pos + stripped]!r}", pos + stripped, src)
        start = m.start(m.lastindex)
        num, var, op, sup = m.groups()
        if num is not None:
            toks.append(("num", int(num), start))
        elif var is not None:
            toks.append(("var", var, start))
        elif op is not None:
            toks.append(("op", "^" if op == "**" else op, start))
        else:
            toks.append(("sup", int(sup.translate(_SUPERSCRIPTS)), start))
        pos = m.end()
    toks.append(("end", None, src_len))
    return toks


class _Parser:
    def __init__(self, src):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return PolySyntaxError(msg, tok[2], self.src)

    def is_op(self, *ops):
        kind, val, _ = self.peek()
        return kind == "op" and val in ops

    def expr(self):
        terms = []
        sign = 1
        if self.is_op("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        terms.append((sign, self.term()))
        while self.is_op("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
            terms.append((sign, self.term()))
        return terms[0][1] if len(terms) == 1 and terms[0][0] > 0 else Sum(tuple(terms))

    def starts_base(self):
        kind, val, _ = self.peek()
        return kind in ("num", "var") or (kind == "op" and val == "(")

    def term(self):
        factors = [self.factor()]
        while True:
            if self.is_op("*"):
                self.take()
                factors.append(self.factor())
            elif self.starts_base():
                factors.append(self.factor())
            else:
                break
        return factors[0] if len(factors) == 1 else Prod(tuple(factors))

    def factor(self):
        base = self.base()
        kind, val, _ = self.peek()
        if kind == "sup":
            self.take()
            return Pow(base, val)
        if self.is_op("^"):
            self.take()
            return Pow(base, self.exponent())
        return base

    def exponent(self):
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            return tok[1]
        if self.is_op("("):
            self.take()
            node = self.expr()
            self.expect(")")
            value = evaluate(node)
            if value.terms and set(value.terms) != {(0, 0)}:
                raise self.error("exponent must be a constant", tok)
            c = value.constant_term()
            if c.denominator != 1 or c < 0:
                raise self.error("exponent must be a non-negative integer", tok)
            return int(c)
        if self.is_op("-"):
            raise self.error("exponent must be a non-negative integer")
        raise self.error("expected exponent")

    def expect(self, op):
        if not self.is_op(op):
            raise self.error(f"expected {op!r}")
        self.take()

    def base(self):
        kind, val, _ = tok = self.peek()
        if kind == "num":
            self.take()
            value = Fraction(val)
            if self.is_op("/"):
                self.take()
                den = self.peek()
                if den[0] != "num":
                    raise self.error("expected denominator")
                self.take()
                if den[1] == 0:
                    raise self.error("zero denominator", den)
                value = Fraction(val, den[1])
            return Num(value)
        if kind == "var":
            self.take()
            return Var(val)
        if self.is_op("("):
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        if kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected token {val!r}", tok)


def parse_expr(src):
    """Parse ``src`` into a parse tree."""
    p = _Parser(src)
    node = p.expr()
    if p.peek()[0] != "end":
        raise p.error(f"unexpected token {p.peek()[1]!r}")
    return node


def parse_poly(src):
    """Parse ``src`` directly to a :class:`BiPoly`."""
    return evaluate(parse_expr(src))
