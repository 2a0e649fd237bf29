"""Gröbner bases for submodules of free modules over Q[x, y].

Public bases use the position-over-term order: a lower position index is
larger, and within a position monomials compare by total degree, then by the
``x``-exponent (graded reverse lexicographic in two variables).  Syzygies,
lifts and quotient dimensions are computed with the term-over-position order
instead, which keeps coefficient growth in check; the dimensions do not
depend on the order.

Internally a vector is a list of ``(key, coeff)`` pairs sorted by an integer
key; a smaller key is a larger term, so the leading term is the first entry.
Coefficients are ``gmpy2.mpq`` when available.
"""

import heapq
import itertools
from fractions import Fraction

from .polycore import BiPoly

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

_ONE = _Q(1)


class _Infinite:
    __slots__ = ()

    def __repr__(self):
        return "INFINITE"

    def __str__(self):
        return "infinite"

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __reduce__(self):
        return "INFINITE"


INFINITE = _Infinite()


def is_finite(d):
    return d is not INFINITE


class FreeVector:
    """Element of ``R^rank`` with :class:`BiPoly` entries in ``x, y``."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(e if isinstance(e, BiPoly) else BiPoly.const(e) for e in entries)

    @classmethod
    def zero(cls, rank):
        return cls([BiPoly()] * rank)

    @classmethod
    def unit(cls, rank, k):
        return cls([BiPoly.const(1) if i == k else BiPoly() for i in range(rank)])

    @property
    def rank(self):
        return len(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def is_zero(self):
        return not any(self.entries)

    def __eq__(self, other):
        return isinstance(other, FreeVector) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __add__(self, other):
        _same_rank(self, other)
        return FreeVector([f + g for f, g in zip(self.entries, other.entries)])

    def __sub__(self, other):
        _same_rank(self, other)
        return FreeVector([f - g for f, g in zip(self.entries, other.entries)])

    def __neg__(self):
        return FreeVector([-f for f in self.entries])

    def mul(self, f):
        """Multiply by a ring element (BiPoly or rational)."""
        return FreeVector([f * e for e in self.entries])

    def __repr__(self):
        return "FreeVector([" + ", ".join(e.to_str() for e in self.entries) + "])"


def _same_rank(v, w):
    if v.rank != w.rank:
        raise ValueError(f"rank mismatch: {v.rank} vs {w.rank}")


def combine(coeffs, gens, rank):
    """``sum coeffs[k] * gens[k]`` as a vector of the given rank."""
    out = FreeVector.zero(rank)
    for c, g in zip(coeffs, gens):
        if c:
            out = out + g.mul(c)
    return out


class PolyMatrix:
    """Matrix with BiPoly entries; empty shapes are allowed."""

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        if entries is None:
            entries = [[BiPoly() for _ in range(cols)] for _ in range(rows)]
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError("entries do not match the declared shape")
        self.entries = [list(r) for r in entries]

    @classmethod
    def from_columns(cls, columns, rows):
        for c in columns:
            if c.rank != rows:
                raise ValueError("column rank does not match row count")
        return cls(rows, len(columns), [[c[i] for c in columns] for i in range(rows)])

    def columns(self):
        return [FreeVector([self.entries[i][k] for i in range(self.rows)]) for k in range(self.cols)]

    def transpose(self):
        return PolyMatrix(self.cols, self.rows, [[self.entries[i][k] for i in range(self.rows)] for k in range(self.cols)])

    def apply(self, v):
        if v.rank != self.cols:
            raise ValueError("vector rank does not match column count")
        return FreeVector([sum((self.entries[i][k] * v[k] for k in range(self.cols)), BiPoly()) for i in range(self.rows)])

    def __mul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return PolyMatrix.from_columns([self.apply(c) for c in other.columns()], self.rows)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_zero(self):
        return all(not e for r in self.entries for e in r)


# ---------------------------------------------------------------------------
# internal sparse representation
#
# A term's monomial x^e1 y^e2 in position pos is packed into one integer key
# such that a smaller key is a larger term.  Multiplying by x^m1 y^m2 adds a
# constant to every key, so shifted copies stay sorted.

_B = 1 << 24  # bound on degrees and positions


class MonomialOrder:
    def __init__(self, name, position_first):
        self.name = name
        self.position_first = position_first

    def encode(self, pos, e1, e2):
        if self.position_first:
            return pos * _B * _B - (e1 + e2) * _B - e1
        return -(e1 + e2) * _B * _B - e1 * _B + pos

    def decode(self, key):
        if self.position_first:
            pos = -((-key) // (_B * _B))
            d, e1 = divmod(pos * _B * _B - key, _B)
            return pos, e1, d - e1
        pos = key % _B
        d, e1 = divmod((pos - key) // _B, _B)
        return pos, e1, d - e1

    def offset(self, m1, m2):
        if self.position_first:
            return -(m1 + m2) * _B - m1
        return -(m1 + m2) * _B * _B - m1 * _B

    def __repr__(self):
        return f"MonomialOrder({self.name!r})"


POT = MonomialOrder("position-over-term, grevlex(x > y)", True)
TOP = MonomialOrder("term-over-position, grevlex(x > y)", False)


def _to_terms(vec, order):
    enc = order.encode
    out = []
    for pos, f in enumerate(vec.entries):
        for (e1, e2), c in f.terms.items():
            out.append((enc(pos, e1, e2), _Q(c.numerator, c.denominator)))
    out.sort(key=lambda t: t[0])
    return out


def _from_terms(terms, rank, order):
    dec = order.decode
    polys = [dict() for _ in range(rank)]
    for k, c in terms:
        pos, e1, e2 = dec(k)
        polys[pos][(e1, e2)] = Fraction(int(c.numerator), int(c.denominator))
    return FreeVector([BiPoly(p) for p in polys])


def _sub_mult(f, heap, g, c, off):
    """In place: f -= c * m * g where m shifts keys by ``off``; skips g's lead."""
    get = f.get
    for k, gc in itertools.islice(g, 1, None):
        nk = k + off
        v = get(nk)
        if v is None:
            f[nk] = -c * gc
            heapq.heappush(heap, nk)
        else:
            v -= c * gc
            if v:
                f[nk] = v
            else:
                del f[nk]


def _axpy(dst, src, c, off=0):
    """In place: dst += c * m * src for term dicts, m given by its key offset."""
    for k, sc in src.items():
        nk = k + off
        v = dst.get(nk)
        if v is None:
            dst[nk] = c * sc
        else:
            v += c * sc
            if v:
                dst[nk] = v
            else:
                del dst[nk]


def _divides(a1, a2, b1, b2):
    return a1 <= b1 and a2 <= b2


class _Basis:
    """Growing list of monic elements indexed by leading position.

    ``cofs[k]`` (when tracked) expresses element ``k`` in terms of the
    original generators, as a term dict whose positions are generator indices.
    """

    def __init__(self, order):
        self.order = order
        self.elems = []
        self.cofs = []
        self.leads = []
        self.bypos = {}

    def add(self, terms, cof=None):
        idx = len(self.elems)
        self.elems.append(terms)
        self.cofs.append(cof)
        lead = self.order.decode(terms[0][0])
        self.leads.append(lead)
        self.bypos.setdefault(lead[0], []).append(idx)
        return idx

    def divisor(self, pos, e1, e2):
        leads = self.leads
        for idx in self.bypos.get(pos, ()):
            _, l1, l2 = leads[idx]
            if l1 <= e1 and l2 <= e2:
                return idx
        return None


def _reduce(f, basis, full=True, quot=None):
    """Normal form of the term dict ``f`` against ``basis``.

    With ``full=False`` only leading terms are reduced.  If ``quot`` is a
    dict, the cofactors of the subtracted multiples are accumulated in it,
    so that ``f_in - remainder = sum quot_k * generator_k``.  Returns a sorted
    term list.
    """
    decode = basis.order.decode
    offset = basis.order.offset
    heap = list(f)
    heapq.heapify(heap)
    done = []
    while heap:
        k = heapq.heappop(heap)
        c = f.pop(k, None)
        if c is None:
            continue
        pos, e1, e2 = decode(k)
        idx = basis.divisor(pos, e1, e2)
        if idx is None:
            if not full:
                f[k] = c
                break
            done.append((k, c))
            continue
        _, l1, l2 = basis.leads[idx]
        off = offset(e1 - l1, e2 - l2)
        _sub_mult(f, heap, basis.elems[idx], c, off)
        if quot is not None:
            _axpy(quot, basis.cofs[idx], c, off)
    # after an early stop, f holds the unreduced remainder (all below done)
    return done + sorted(f.items())


def _spoly(f, g, order):
    """S-vector of two monic elements with equal lead position.

    Returns the term dict and the key offsets of the two multipliers.
    """
    _, f1, f2 = order.decode(f[0][0])
    _, g1, g2 = order.decode(g[0][0])
    L1, L2 = max(f1, g1), max(f2, g2)
    offf = order.offset(L1 - f1, L2 - f2)
    offg = order.offset(L1 - g1, L2 - g2)
    out = {}
    for k, c in itertools.islice(f, 1, None):
        out[k + offf] = c
    for k, c in itertools.islice(g, 1, None):
        nk = k + offg
        v = out.get(nk, 0) - c
        if v:
            out[nk] = v
        else:
            out.pop(nk, None)
    return out, offf, offg


def _make_monic(terms, cof):
    c = terms[0][1]
    if c == 1:
        return terms, cof
    inv = _ONE / c
    terms = [(k, v * inv) for k, v in terms]
    if cof is not None:
        cof = {k: v * inv for k, v in cof.items()}
    return terms, cof


def _buchberger(inputs, order, track=False):
    """Reduced Gröbner basis of the term lists ``inputs``.

    Returns a list of ``(terms, cof)``; ``cof`` is None unless ``track``.
    """
    basis = _Basis(order)
    active = set()  # indices currently in G (Gebauer-Moeller)
    pairs = []
    live = set()
    leads = basis.leads

    def update(h):
        ph, h1, h2 = leads[h]
        cands = []
        for g in basis.bypos.get(ph, ()):
            if g != h and g in active:
                _, g1, g2 = leads[g]
                cands.append(((max(h1, g1), max(h2, g2)), g))
        # chain criterion on old pairs; the product criterion is invalid for modules
        for pr in list(live):
            i, j, L1, L2 = pr
            if leads[i][0] != ph or not _divides(h1, h2, L1, L2):
                continue
            _, i1, i2 = leads[i]
            _, j1, j2 = leads[j]
            if (max(i1, h1), max(i2, h2)) != (L1, L2) and (max(j1, h1), max(j2, h2)) != (L1, L2):
                live.discard(pr)
        # among new pairs keep those with minimal lcm, one per lcm
        kept = {}
        for L, g in cands:
            if L in kept:
                continue
            if any(M != L and _divides(M[0], M[1], L[0], L[1]) for M, _ in cands):
                continue
            kept[L] = g
        for (L1, L2), g in kept.items():
            pr = (g, h, L1, L2)
            live.add(pr)
            heapq.heappush(pairs, (L1 + L2, ph, -L1, g, h, pr))
        for g in [g for g in active if leads[g][0] == ph]:
            _, g1, g2 = leads[g]
            if _divides(h1, h2, g1, g2):
                active.discard(g)
        active.add(h)

    def insert(terms, cof):
        quot = {} if track else None
        terms = _reduce(dict(terms), basis, full=True, quot=quot)
        if not terms:
            return
        if track:
            _axpy(cof, quot, -1)
        update(basis.add(*_make_monic(terms, cof)))

    nonzero = [n for n in range(len(inputs)) if inputs[n]]
    # smallest leading terms first so early elements reduce later ones
    nonzero.sort(key=lambda n: -inputs[n][0][0])
    for n in nonzero:
        insert(inputs[n], {order.encode(n, 0, 0): _ONE} if track else None)
    while pairs:
        *_, pr = heapq.heappop(pairs)
        if pr not in live:
            continue
        live.discard(pr)
        i, j, _, _ = pr
        s, offi, offj = _spoly(basis.elems[i], basis.elems[j], order)
        if not s:
            continue
        cof = None
        if track:
            cof = {}
            _axpy(cof, basis.cofs[i], _ONE, offi)
            _axpy(cof, basis.cofs[j], -_ONE, offj)
        insert(sorted(s.items()), cof)
    return _interreduce([(basis.elems[g], basis.cofs[g]) for g in sorted(active)], order, track)


def _interreduce(elems, order, track=False):
    leads = [order.decode(t[0][0]) for t, _ in elems]
    keep = []
    for n, (p, e1, e2) in enumerate(leads):
        if any(q == p and m != n and _divides(f1, f2, e1, e2) and ((f1, f2) != (e1, e2) or m < n)
               for m, (q, f1, f2) in enumerate(leads)):
            continue
        keep.append(elems[n])
    out = []
    for n, (t, cof) in enumerate(keep):
        others = _Basis(order)
        for m, (u, ucof) in enumerate(keep):
            if m != n:
                others.add(u, ucof)
        quot = {} if track else None
        red = _reduce(dict(t), others, full=True, quot=quot)
        if track:
            cof = dict(cof)
            _axpy(cof, quot, -1)
        out.append(_make_monic(red, cof))
    out.sort(key=lambda e: e[0][0][0])
    return out


class _Tracked:
    """Gröbner basis that remembers how each element arises from the generators."""

    def __init__(self, gens, rank, order=TOP):
        self.rank = rank
        self.order = order
        self.s = len(gens)
        self.inputs = [_to_terms(g, order) for g in gens]
        self.elems = _buchberger(self.inputs, order, track=True)
        self.basis = _Basis(order)
        for t, cof in self.elems:
            self.basis.add(t, cof)

    def lift(self, v):
        """Cofactors of ``v`` in terms of the generators, or None."""
        quot = {}
        rest = _reduce(dict(_to_terms(v, self.order)), self.basis, full=False, quot=quot)
        if rest:
            return None
        return list(_from_terms(sorted(quot.items()), self.s, self.order).entries)

    def syzygies(self, reduced=False):
        """Generators of the syzygies of the original generators.

        Schreyer's vectors by default; with ``reduced`` their reduced basis.
        """
        out = []
        leads = self.basis.leads
        n = len(self.elems)
        for a in range(n):
            for b in range(a + 1, n):
                pa, a1, a2 = leads[a]
                pb, b1, b2 = leads[b]
                if pa != pb or self._redundant(a, b, (max(a1, b1), max(a2, b2))):
                    continue
                s, offa, offb = _spoly(self.elems[a][0], self.elems[b][0], self.order)
                syz = {}
                _axpy(syz, self.basis.cofs[a], _ONE, offa)
                _axpy(syz, self.basis.cofs[b], -_ONE, offb)
                quot = {}
                if _reduce(s, self.basis, full=False, quot=quot):
                    raise AssertionError("S-vector did not reduce to zero")
                _axpy(syz, quot, -1)
                out.append(syz)
        for k, t in enumerate(self.inputs):
            # generator k rewritten through the basis
            syz = {self.order.encode(k, 0, 0): _ONE}
            quot = {}
            if t and _reduce(dict(t), self.basis, full=False, quot=quot):
                raise AssertionError("generator not in its own span")
            _axpy(syz, quot, -1)
            out.append(syz)
        raw = [sorted(d.items()) for d in out if d]
        if reduced:
            # canonical, and with far tamer coefficients than the raw vectors
            raw = [t for t, _ in _buchberger(raw, self.order)]
        return _dedupe([_from_terms(t, self.s, self.order) for t in raw])

    def _redundant(self, a, b, L):
        # chain criterion: a lead strictly inside lcm(a, b) splits the pair
        leads = self.basis.leads
        _, a1, a2 = leads[a]
        _, b1, b2 = leads[b]
        for k in self.basis.bypos.get(leads[a][0], ()):
            if k == a or k == b:
                continue
            _, k1, k2 = leads[k]
            if not _divides(k1, k2, *L):
                continue
            if (max(a1, k1), max(a2, k2)) != L and (max(b1, k1), max(b2, k2)) != L:
                return True
        return False


def _dedupe(vecs):
    """Drop zeros and scalar multiples; each survivor is scaled to be monic."""
    seen = set()
    out = []
    for v in vecs:
        if v.is_zero():
            continue
        key = _normalized(v)
        if key not in seen:
            seen.add(key)
            out.append(key)
    return out


def _normalized(v):
    for e in v.entries:
        if e:
            lead = e.sorted_terms()[0][1]
            return FreeVector([f.scale(1 / lead) for f in v.entries])
    return v


# ---------------------------------------------------------------------------
# public interface


class GBasis:
    """Reduced Gröbner basis of a submodule of ``R^rank``."""

    def __init__(self, rank, elems, order=POT):
        self.rank = rank
        self.order = order
        self._elems = elems
        self._basis = _Basis(order)
        for t in elems:
            self._basis.add(t)

    @property
    def elements(self):
        return [_from_terms(t, self.rank, self.order) for t in self._elems]

    @property
    def leading_terms(self):
        """``(position, e1, e2)`` of each element's leading monomial."""
        return list(self._basis.leads)

    def __len__(self):
        return len(self._elems)

    def _reduce_terms(self, terms):
        return _reduce(dict(terms), self._basis, full=True)


def _check_ranks(gens, rank=None):
    ranks = {g.rank for g in gens}
    if rank is not None:
        ranks.add(rank)
    if len(ranks) > 1:
        raise ValueError(f"generators of different ranks: {sorted(ranks)}")
    return ranks.pop() if ranks else 0


def module_gb(gens, rank=None, order=POT):
    """Reduced Gröbner basis of the submodule generated by ``gens``."""
    rank = _check_ranks(gens, rank)
    elems = _buchberger([_to_terms(g, order) for g in gens], order)
    return GBasis(rank, [t for t, _ in elems], order)


def normal_form(v, gb):
    if v.rank != gb.rank:
        raise ValueError("rank mismatch")
    return _from_terms(gb._reduce_terms(_to_terms(v, gb.order)), gb.rank, gb.order)


def is_member(v, gb):
    return normal_form(v, gb).is_zero()


def s_pairs_reduce_to_zero(gb):
    """Check the Buchberger criterion on every same-position pair."""
    elems = gb._elems
    leads = gb._basis.leads
    for a, b in itertools.combinations(range(len(elems)), 2):
        if leads[a][0] != leads[b][0]:
            continue
        s = _spoly(elems[a], elems[b], gb.order)[0]
        if s and gb._reduce_terms(sorted(s.items())):
            return False
    return True


def syzygies(gens, rank=None, reduced=False):
    """Generators of the module of relations ``sum s_k gens_k = 0``.

    With ``reduced`` the reduced Gröbner basis of that module is returned,
    which costs more for many generators but keeps coefficients small.
    """
    rank = _check_ranks(gens, rank)
    if not gens:
        return []
    return _Tracked(gens, rank).syzygies(reduced)


def member_lift(v, gens):
    """Cofactors ``c`` with ``sum c_k gens_k = v``, or None if ``v`` is not in the span."""
    rank = _check_ranks(gens, v.rank)
    if not gens:
        return [] if v.is_zero() else None
    return _Tracked(gens, rank).lift(v)


def matrix_kernel(A, reduced=False):
    """Generators of ``{v : A v = 0}`` (vectors of rank ``A.cols``)."""
    return syzygies(A.columns(), A.rows, reduced)


def _size(v):
    return sum(len(e.terms) for e in v.entries), max(e.total_degree() for e in v.entries)


def prune(gens, rank):
    """Drop generators that lie in the span of the others, bulkiest first.

    The result generates the same submodule; it need not be minimal.
    """
    keep = list(gens)
    for g in sorted(gens, key=_size, reverse=True):
        others = [h for h in keep if h is not g]
        if others and is_member(g, module_gb(others, rank, order=TOP)):
            keep = others
    return keep


def bidual_quotient(A):
    """Presentation of ``M** / M`` for ``M = coker(A)``.

    Returns ``(K, I, t)`` with ``K`` generating ``ker(C^T)`` in ``R^t`` and
    ``I`` the columns of ``B^T``, where ``B`` holds generators of
    ``ker(A^T)`` and ``C`` their syzygies.
    """
    n = A.rows
    dual = prune(matrix_kernel(A.transpose(), reduced=True), n)
    t = len(dual)
    B = PolyMatrix.from_columns(dual, n)
    C = PolyMatrix.from_columns(prune(syzygies(dual, n, reduced=True), t), t)
    K = matrix_kernel(C.transpose(), reduced=True)
    I = B.transpose().columns()
    return K, I, t


def standard_monomial_count(leads, rank):
    """Number of monomials of ``R^rank`` outside the monomial submodule ``leads``."""
    bypos = {}
    for p, e1, e2 in leads:
        bypos.setdefault(p, []).append((e1, e2))
    total = 0
    for p in range(rank):
        gens = bypos.get(p)
        if not gens:
            return INFINITE
        xs = [e1 for e1, e2 in gens if e2 == 0]
        ys = [e2 for e1, e2 in gens if e1 == 0]
        if not xs or not ys:
            return INFINITE
        for e1 in range(min(xs)):
            total += min(e2 for f1, e2 in gens if f1 <= e1)
    return total


def quotient_vdim(K, I, rank):
    """Vector-space dimension of ``<K> / <I>`` inside ``R^rank``.

    ``<K>`` is presented by its syzygies, the generators of ``I`` are lifted
    to ``K``-coordinates, and the standard monomials of the resulting
    relation module are counted.
    """
    _check_ranks(list(K) + list(I), rank)
    s = len(K)
    if s == 0:
        if any(not v.is_zero() for v in I):
            raise ValueError("I not contained in K")
        return 0
    aug = _Tracked(K, rank)
    rels = aug.syzygies()
    for v in I:
        c = aug.lift(v)
        if c is None:
            raise ValueError("I not contained in K")
        rels.append(FreeVector(c))
    gb = module_gb(rels, s, order=TOP)
    return standard_monomial_count(gb.leading_terms, s)


def ideal_gb(polys):
    return module_gb([FreeVector([f]) for f in polys], 1)


def _mpower(n):
    return [BiPoly.monomial(n - k, k) for k in range(n + 1)]


def local_vdim(polys, nmax=64):
    """Dimension of ``(R/I)`` localised at the origin, by m-adic stabilisation."""
    one = [FreeVector([BiPoly.const(1)])]
    prev = None
    for n in range(1, nmax + 1):
        d = quotient_vdim(one, [FreeVector([f]) for f in list(polys) + _mpower(n)], 1)
        if d == prev:
            return d
        prev = d
    return INFINITE
