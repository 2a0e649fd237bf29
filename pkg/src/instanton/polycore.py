"""Exact rational bivariate polynomials and the blow-up substitution.

A :class:`BiPoly` is a sparse map from exponent pairs ``(e1, e2)`` to
:class:`fractions.Fraction` coefficients.  The meaning of the two exponents
is fixed by context: ``(x, y)`` on the plane, ``(u, z)`` on the chart of the
blow-up, where ``e1`` is the ``u``-exponent and ``e2`` the ``z``-exponent.
"""

from fractions import Fraction
from numbers import Rational

DEFAULT = "default"
STRICT = "strict"
MODES = (DEFAULT, STRICT)


def as_rational(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class BiPoly:
    """Sparse polynomial in two variables with exact rational coefficients.

    Instances are treated as immutable values.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mon, c in terms.items():
                e1, e2 = mon
                if e1 < 0 or e2 < 0:
                    raise ValueError(f"negative exponent in {mon}")
                c = as_rational(c)
                if c:
                    clean[(int(e1), int(e2))] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, e1, e2, c=1):
        return cls({(e1, e2): c})

    @classmethod
    def var(cls, name):
        if name in ("x", "u"):
            return cls.monomial(1, 0)
        if name in ("y", "z"):
            return cls.monomial(0, 1)
        raise ValueError(f"unknown variable {name!r}")

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return self == BiPoly.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for mon, c in other.terms.items():
            v = out.get(mon)
            if v is None:
                out[mon] = c
            else:
                v += c
                if v:
                    out[mon] = v
                else:
                    del out[mon]
        return BiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        out = {}
        for (a1, a2), c in self.terms.items():
            for (b1, b2), d in other.terms.items():
                mon = (a1 + b1, a2 + b2)
                v = out.get(mon, 0) + c * d
                if v:
                    out[mon] = v
                else:
                    out.pop(mon, None)
        return BiPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = BiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c):
        c = as_rational(c)
        if not c:
            return BiPoly()
        return BiPoly._raw({m: v * c for m, v in self.terms.items()})

    def shift(self, d1, d2=0):
        """Multiply by the monomial with exponents ``(d1, d2)``."""
        return BiPoly._raw({(a + d1, b + d2): c for (a, b), c in self.terms.items()})

    def coeff(self, e1, e2):
        return self.terms.get((e1, e2), Fraction(0))

    def constant_term(self):
        return self.coeff(0, 0)

    def degree_in(self, which):
        """Largest exponent of variable 0 or 1; -1 for the zero polynomial."""
        return max((m[which] for m in self.terms), default=-1)

    def total_degree(self):
        return max((a + b for a, b in self.terms), default=-1)

    def sorted_terms(self):
        """Terms by decreasing total degree, then decreasing first exponent."""
        return sorted(self.terms.items(), key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0]))

    def swap(self):
        return BiPoly._raw({(b, a): c for (a, b), c in self.terms.items()})

    def to_str(self, names=("x", "y")):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in self.sorted_terms():
            mono = []
            for name, e in zip(names, (a, b)):
                if e == 1:
                    mono.append(name)
                elif e > 1:
                    mono.append(f"{name}^{e}")
            mono = "*".join(mono)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"BiPoly({self.to_str()!r})"


def _coerce(other):
    if isinstance(other, BiPoly):
        return other
    if isinstance(other, (int, Rational)):
        return BiPoly.const(other)
    return NotImplemented


def add(f, g):
    return f + g


def mul(f, g):
    return f * g


def scale(f, c):
    return f.scale(c)


X = BiPoly.var("x")
Y = BiPoly.var("y")


def blowup_subst(p):
    """Substitute ``x = u, y = z*u``: ``x^a y^b`` becomes ``u^(a+b) z^b``."""
    out = {}
    for (a, b), c in p.terms.items():
        mon = (a + b, b)
        v = out.get(mon, 0) + c
        if v:
            out[mon] = v
        else:
            out.pop(mon, None)
    return BiPoly._raw(out)


def pbar(p, j, mode=DEFAULT):
    """Truncated extension class of ``p`` for splitting type ``j``.

    Keeps the terms ``u^i z^l`` of ``p(u, zu)`` with ``1 <= i <= 2j-2``; in
    strict mode also requires ``l <= j-1``.
    """
    if j < 2:
        raise ValueError("splitting type must be at least 2")
    if mode not in MODES:
        raise ValueError(f"unknown truncation mode {mode!r}")
    top = 2 * j - 2
    keep = {}
    for (i, l), c in blowup_subst(p).terms.items():
        if not 1 <= i <= top:
            continue
        if mode == STRICT and l > j - 1:
            continue
        keep[(i, l)] = c
    return BiPoly._raw(keep)


def u_min_degree(f):
    """Largest ``k`` with ``u^k`` dividing ``f``."""
    if not f.terms:
        raise ValueError("zero polynomial has no u-order")
    return min(i for i, _ in f.terms)


def order_at_origin(p):
    """Multiplicity of the curve ``p = 0`` at the origin (lowest total degree)."""
    if not p.terms:
        raise ValueError("zero polynomial has no order")
    return min(a + b for a, b in p.terms)


def partial(p, var):
    idx = {"x": 0, "y": 1}.get(var)
    if idx is None:
        raise ValueError(f"unknown variable {var!r}")
    out = {}
    for (a, b), c in p.terms.items():
        e = (a, b)[idx]
        if e:
            mon = (a - 1, b) if idx == 0 else (a, b - 1)
            out[mon] = c * e
    return BiPoly._raw(out)
