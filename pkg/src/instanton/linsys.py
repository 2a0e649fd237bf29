"""Unknown coefficients of a section and the linear relations they satisfy.

A section ``(a, b)`` over the chart ``{(z, u)}`` is written with unknown
coefficients ``a = sum a_il u^i z^l`` and ``b = sum b_il u^i z^l``.  Its image
under the transition matrix must be holomorphic on the other chart, which
forces every coefficient of ``u^i z^l`` with ``l > i`` in ``z^j a + pbar b``
to vanish.  Those coefficients are linear forms in the unknowns; this module
builds them, echelonizes them and eliminates the pivot unknowns.

Unknowns are ordered so that every ``a`` unknown beats every ``b`` unknown,
and within a kind larger ``i`` wins, then larger ``l``.
"""

from collections import defaultdict
from fractions import Fraction
from typing import NamedTuple

A = 1
B = 0


class Unknown(NamedTuple):
    """Index of an unknown coefficient.

    Tuple comparison realises the elimination order: ``kind`` is 1 for
    ``a_il`` and 0 for ``b_il``.
    """

    kind: int
    i: int
    l: int

    def __str__(self):
        return f"{'a' if self.kind == A else 'b'}_{self.i},{self.l}"


def a_(i, l):
    return Unknown(A, i, l)


def b_(i, l):
    return Unknown(B, i, l)


def unknown_less(x, y):
    return x < y


def lead(form):
    """Leading unknown of a nonzero linear form (a dict Unknown -> Fraction)."""
    return max(form)


def _axpy(dst, form, c):
    # dst += c * form, in place, dropping zeros
    for v, d in form.items():
        w = dst.get(v)
        if w is None:
            dst[v] = c * d
        else:
            w += c * d
            if w:
                dst[v] = w
            else:
                del dst[v]


def build_symbolic_ab(j, N):
    """Generic series ``a`` and ``b`` with one unknown per admissible index.

    ``a`` carries ``a_il`` for ``0 <= l <= i <= N`` and ``b`` carries
    ``b_il`` for ``0 <= i <= N, 0 <= l <= i + j``.
    """
    if N < 2 * j - 2:
        raise ValueError("N must be at least 2j-2")
    a = {(i, l): {a_(i, l): Fraction(1)} for i in range(N + 1) for l in range(i + 1)}
    b = {(i, l): {b_(i, l): Fraction(1)} for i in range(N + 1) for l in range(i + j + 1)}
    return a, b


def build_fTv(j, pbar, a, b):
    """First entry ``z^j a + pbar * b`` of the transformed section."""
    if not pbar:
        raise ValueError("pbar must be nonzero")
    out = defaultdict(dict)
    for (i, l), form in a.items():
        _axpy(out[(i, l + j)], form, 1)
    for (i0, l0), c in pbar.terms.items():
        for (i, l), form in b.items():
            _axpy(out[(i + i0, l + l0)], form, c)
    return {k: v for k, v in out.items() if v}


class RelationSet:
    """Linear relations in reduced row-echelon form.

    ``rows`` maps each pivot (leading) unknown to its row, normalised so the
    pivot coefficient is 1.  No pivot occurs in any other row.
    """

    def __init__(self):
        self.rows = {}
        self.generating = []  # the forms as they were added
        self._occurs = defaultdict(set)  # unknown -> pivots of rows containing it

    @property
    def nonfree(self):
        return set(self.rows)

    def __len__(self):
        return len(self.rows)

    def reduce(self, form):
        """Eliminate every pivot unknown from ``form`` (returns a new dict)."""
        out = dict(form)
        for v in [v for v in form if v in self.rows]:
            c = out.pop(v, None)
            if c:
                row = self.rows[v]
                for w, d in row.items():
                    if w == v:
                        continue
                    x = out.get(w, 0) - c * d
                    if x:
                        out[w] = x
                    else:
                        out.pop(w, None)
        return out

    def add(self, form):
        """Insert a relation; returns its pivot, or None if it was dependent."""
        self.generating.append(dict(form))
        form = self.reduce(form)
        if not form:
            return None
        piv = max(form)
        c = form[piv]
        if c != 1:
            form = {v: d / c for v, d in form.items()}
        # back-substitute into rows that mention the new pivot
        for other in list(self._occurs.get(piv, ())):
            row = self.rows[other]
            e = row.get(piv)
            if not e:
                continue
            for w in row:
                self._occurs[w].discard(other)
            _axpy(row, form, -e)
            for w in row:
                self._occurs[w].add(other)
        self.rows[piv] = form
        for w in form:
            self._occurs[w].add(piv)
        return piv

    def implies(self, form):
        """True if ``form`` lies in the span of the relations."""
        return not self.reduce(form)

    def relations(self):
        """Rows in decreasing order of their pivots."""
        return [self.rows[v] for v in sorted(self.rows, reverse=True)]


def get_relations(fTv):
    """Generating relations: coefficients of ``u^i z^l`` with ``l > i``.

    Every monomial of ``fTv`` is inspected, including those beyond the
    ``u``-degree bound of the unknowns; those produce the spurious relations
    that only involve high-index unknowns.
    """
    rel = RelationSet()
    for (i, l) in sorted(fTv):
        if l > i:
            form = fTv[(i, l)]
            if form:
                rel.add(form)
    return rel


def apply_relations(series, rel):
    """Substitute every pivot unknown by its expression in the free ones."""
    out = {}
    for k, form in series.items():
        red = rel.reduce(form)
        if red:
            out[k] = red
    return out


def changeables(j, all_unknowns, nonfree):
    """Free unknowns with ``i <= 2j-2``, largest first."""
    top = 2 * j - 2
    return sorted((v for v in set(all_unknowns) if v.i <= top and v not in nonfree), reverse=True)


def unknowns_of(*series):
    seen = set()
    for s in series:
        for form in s.values():
            seen.update(form)
    return seen
