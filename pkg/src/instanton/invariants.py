"""Instanton width, height and charge, plus classical curve invariants."""

from dataclasses import dataclass, field
from typing import Optional

from . import linsys, modgb
from .modgb import FreeVector, PolyMatrix
from .polycore import DEFAULT, BiPoly, order_at_origin, partial, pbar, u_min_degree


class InstantonInputError(ValueError):
    """The (p, j) data is outside the domain of the invariants."""


class InstantonInternalError(RuntimeError):
    """A computed quantity contradicted a guaranteed property."""


def _choose2(k):
    return k * (k - 1) // 2 if k > 1 else 0


def extension_class(p, j, mode=DEFAULT):
    """Validate ``(p, j)`` and return the truncated extension class."""
    if j < 2:
        raise InstantonInputError("splitting type must be at least 2")
    if not p:
        raise InstantonInputError("zero polynomial does not define a curve")
    if p.constant_term() != 0:
        raise InstantonInputError("curve does not pass through the origin")
    pb = pbar(p, j, mode)
    if not pb:
        raise InstantonInputError("trivial extension class (bundle splits)")
    return pb


def instanton_height(p, j, mode=DEFAULT):
    """``C(j,2) - C(j-m,2)`` where ``u^m`` is the largest power of u dividing pbar."""
    m = u_min_degree(extension_class(p, j, mode))
    return _choose2(j) - _choose2(j - m)


def polyconv(f):
    """Rewrite ``sum c u^i z^l`` as ``sum c x^(i-l) y^l``, dropping terms with ``l > i``."""
    return BiPoly({(i - l, l): c for (i, l), c in f.terms.items() if l <= i})


def shift_u(series, k):
    """Multiply a symbolic series by ``u^k``."""
    return {(i + k, l): form for (i, l), form in series.items()}


def specialize(series, var):
    """Set ``var`` to 1 and every other unknown to 0."""
    return BiPoly({k: form[var] for k, form in series.items() if var in form})


def setvectors(a, b, changeables):
    """One generator ``(polyconv(a|v=1), polyconv(b|v=1))`` per changeable ``v``."""
    wanted = set(changeables)
    parts = {v: ({}, {}) for v in changeables}
    # one pass over the series instead of one substitution per unknown
    for slot, series in enumerate((a, b)):
        for k, form in series.items():
            for v, c in form.items():
                if v in wanted:
                    parts[v][slot][k] = c
    return [FreeVector([polyconv(BiPoly(pa)), polyconv(BiPoly(pb))]) for pa, pb in (parts[v] for v in changeables)]


@dataclass
class PipelineTrace:
    pbar: BiPoly
    N: int
    relations: int = 0
    nonfree: int = 0
    changeables: int = 0
    generators: int = 0
    basis: int = 0
    sizes: dict = field(default_factory=dict)


def module_generators(p, j, mode=DEFAULT, shift=0, trace=None):
    """Generators in R^2 of the module whose double-dual quotient has length w.

    ``shift`` adds to the exponent of the ``u^(N+j)`` multiplier.
    """
    pb = extension_class(p, j, mode)
    N = 2 * j - 2 + pb.degree_in(0)

    a, b = linsys.build_symbolic_ab(j, N)
    allvars = linsys.unknowns_of(a, b)
    rel = linsys.get_relations(linsys.build_fTv(j, pb, a, b))
    ch = linsys.changeables(j, allvars, rel.nonfree)
    a = linsys.apply_relations(a, rel)
    b = linsys.apply_relations(b, rel)

    k = N + j + shift
    gens = [g for g in setvectors(shift_u(a, k), shift_u(b, k), ch) if not g.is_zero()]
    if trace is not None:
        trace.pbar, trace.N = pb, N
        trace.relations = len(rel)
        trace.nonfree = len(rel.nonfree)
        trace.changeables = len(ch)
        trace.generators = len(gens)
    return gens


def width_trace(p, j, mode=DEFAULT, shift=0, debug=False):
    """Instanton width together with a trace of the intermediate sizes."""
    trace = PipelineTrace(pbar=None, N=0)
    gens = module_generators(p, j, mode, shift, trace)

    # present the module by a Groebner basis of it; same module, fewer generators
    G = modgb.module_gb(gens, 2).elements
    trace.basis = len(G)
    S = modgb.syzygies(G, 2)
    if debug:
        _check_syzygies(G, S, 2)
    A = PolyMatrix.from_columns(S, len(G))
    K, I, t = modgb.bidual_quotient(A)
    trace.sizes = {"A": A.shape, "B": (len(G), t), "K": len(K), "t": t}
    w = modgb.quotient_vdim(K, I, t)
    if not modgb.is_finite(w):
        raise InstantonInternalError("double-dual quotient is not finite dimensional")
    if debug:
        _check_origin_support(K, I, t, w)
    return w, trace


def _check_syzygies(gens, syz, rank):
    for s in syz:
        total = FreeVector.zero(rank)
        for c, g in zip(s.entries, gens):
            total = total + g.mul(c)
        if not total.is_zero():
            raise InstantonInternalError("syzygy identity violated")


def _check_origin_support(K, I, t, d):
    # x^d and y^d must kill K/I when it is supported at the origin
    Igb = modgb.module_gb(I, t)
    power = max(d, 1)
    for v in K:
        for mono in (BiPoly.monomial(power, 0), BiPoly.monomial(0, power)):
            if not modgb.is_member(v.mul(mono), Igb):
                raise InstantonInternalError("double-dual quotient has support away from the origin")


def instanton_width(p, j, mode=DEFAULT, debug=False):
    return width_trace(p, j, mode, debug=debug)[0]


def charge(p, j, mode=DEFAULT):
    return instanton_width(p, j, mode) + instanton_height(p, j, mode)


def multiplicity(p):
    if not p:
        raise InstantonInputError("zero polynomial has no multiplicity")
    if p.constant_term() != 0:
        raise InstantonInputError("curve does not pass through the origin")
    return order_at_origin(p)


def milnor(p, nmax=64):
    """Local Milnor number at the origin; ``modgb.INFINITE`` if not isolated."""
    if not p:
        raise InstantonInputError("zero polynomial")
    return modgb.local_vdim([partial(p, "x"), partial(p, "y")], nmax)


def tjurina(p, nmax=64):
    if not p:
        raise InstantonInputError("zero polynomial")
    return modgb.local_vdim([p, partial(p, "x"), partial(p, "y")], nmax)


@dataclass
class InstantonResult:
    p: BiPoly
    j: int
    mode: str
    w: int
    h: int
    multiplicity: Optional[int] = None
    milnor: object = None
    tjurina: object = None
    trace: Optional[PipelineTrace] = None

    @property
    def charge(self):
        return self.w + self.h


def compute(p, j, mode=DEFAULT, classical=False, nmax=64, debug=False):
    """Run the full pipeline for one ``(p, j)``."""
    h = instanton_height(p, j, mode)
    w, trace = width_trace(p, j, mode, debug=debug)
    res = InstantonResult(p=p, j=j, mode=mode, w=w, h=h, trace=trace)
    if classical:
        res.multiplicity = multiplicity(p)
        res.milnor = milnor(p, nmax)
        res.tjurina = tjurina(p, nmax)
    return res
