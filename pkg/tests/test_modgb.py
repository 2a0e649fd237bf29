import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bipolys, random_poly, seeded
from oracle import bounded_kernel, truncated_codim
from instanton import modgb
from instanton.modgb import (
    INFINITE,
    POT,
    TOP,
    FreeVector,
    PolyMatrix,
    bidual_quotient,
    combine,
    is_member,
    local_vdim,
    matrix_kernel,
    member_lift,
    module_gb,
    normal_form,
    quotient_vdim,
    s_pairs_reduce_to_zero,
    syzygies,
)
from instanton.polycore import BiPoly, X, Y

ONE = BiPoly.const(1)


def V(*entries):
    return FreeVector(entries)


def test_infinite_sentinel():
    assert INFINITE > 10**9 and not INFINITE < 3
    assert not modgb.is_finite(INFINITE) and modgb.is_finite(0)
    assert str(INFINITE) == "infinite"


@pytest.mark.parametrize("order", [POT, TOP])
def test_key_encoding_round_trip(order):
    for t in [(0, 0, 0), (0, 3, 4), (5, 0, 0), (2, 7, 1), (1, 0, 9)]:
        k = order.encode(*t)
        assert order.decode(k) == t
        assert order.decode(k + order.offset(2, 3)) == (t[0], t[1] + 2, t[2] + 3)


def test_orders_compare_as_documented():
    # POT: lower position wins before degree; TOP: degree wins before position
    assert POT.encode(0, 0, 0) < POT.encode(1, 5, 0)
    assert TOP.encode(1, 5, 0) < TOP.encode(0, 0, 0)
    # grevlex in two variables: degree, then the x exponent
    for order in (POT, TOP):
        assert order.encode(0, 0, 3) < order.encode(0, 2, 0)
        assert order.encode(0, 2, 1) < order.encode(0, 1, 2)


def test_module_gb_examples():
    gb = module_gb([V(X), V(Y)], 1)
    assert set(gb.elements) == {V(X), V(Y)}
    assert module_gb([V(ONE)], 1).elements == [V(ONE)]
    gb = module_gb([V(X * X + X * Y), V(Y * Y)], 1)
    assert s_pairs_reduce_to_zero(gb)
    # x^3 y = xy (x^2 + xy) - x^2 y^2
    assert is_member(V(X**3 * Y), gb)
    assert not is_member(V(X**2), gb)
    assert len(module_gb([], 2)) == 0


def test_rank_mismatch():
    with pytest.raises(ValueError):
        module_gb([V(X), V(X, Y)])


def test_normal_form_examples():
    gb = module_gb([V(X)], 1)
    assert normal_form(V(X * X), gb).is_zero()
    assert normal_form(V(Y), gb) == V(Y)


def test_member_lift_examples():
    assert member_lift(V(X * X + X * Y), [V(X)]) == [X + Y]
    assert member_lift(V(Y), [V(X)]) is None


def test_syzygy_examples():
    (s,) = syzygies([V(X), V(Y)], 1)
    assert s in (V(Y, -X), V(-Y, X))
    assert syzygies([V(ONE)], 1) == []


def test_matrix_kernel_examples():
    A = PolyMatrix.from_columns([V(Y), V(-X)], 1)
    assert matrix_kernel(A) == [V(X, Y)]
    assert matrix_kernel(PolyMatrix(0, 3)) == [FreeVector.unit(3, k) for k in range(3)]
    assert matrix_kernel(PolyMatrix(1, 1, [[ONE]])) == []


def test_bidual_quotient_of_maximal_ideal():
    # (x, y) on two generators, related by (y, -x)
    A = PolyMatrix.from_columns([V(Y, -X)], 2)
    K, I, t = bidual_quotient(A)
    assert t == 1
    assert quotient_vdim(K, I, t) == 1


def test_bidual_quotient_of_free_module():
    K, I, t = bidual_quotient(PolyMatrix(3, 0))
    assert quotient_vdim(K, I, t) == 0


@pytest.mark.parametrize("K, I, rank, want", [
    ([V(ONE)], [V(X), V(Y)], 1, 1),
    ([V(ONE)], [V(X)], 1, INFINITE),
    ([V(ONE)], [V(X), V(Y**6)], 1, 6),
    ([], [], 2, 0),
])
def test_quotient_vdim_examples(K, I, rank, want):
    assert quotient_vdim(K, I, rank) == want


def test_quotient_vdim_requires_containment():
    with pytest.raises(ValueError, match="I not contained in K"):
        quotient_vdim([V(X)], [V(Y)], 1)


@pytest.mark.parametrize("gens, want", [
    ([X, Y**6], 6),
    ([X * X - X, Y], 1),
    ([X * X], INFINITE),
    ([X**2 - Y**2, X * Y], 4),
])
def test_local_vdim(gens, want):
    assert local_vdim(gens) == want


def test_local_vdim_respects_cap():
    assert local_vdim([X, Y**10], nmax=5) == INFINITE


# properties


@st.composite
def vectors(draw, rank):
    return FreeVector([draw(bipolys(max_deg=2, max_terms=3)) for _ in range(rank)])


@st.composite
def generator_sets(draw):
    rank = draw(st.integers(1, 2))
    gens = draw(st.lists(vectors(rank), min_size=1, max_size=3))
    return rank, gens


@settings(max_examples=40)
@given(generator_sets())
def test_gb_spairs_reduce_to_zero(data):
    rank, gens = data
    gb = module_gb(gens, rank)
    assert s_pairs_reduce_to_zero(gb)
    assert all(is_member(g, gb) for g in gens)


@settings(max_examples=40)
@given(generator_sets())
def test_syzygy_identity(data):
    rank, gens = data
    for s in syzygies(gens, rank):
        assert combine(s.entries, gens, rank).is_zero()


@settings(max_examples=30)
@given(generator_sets(), st.data())
def test_lift_identity(data, draw):
    rank, gens = data
    coeffs = [draw.draw(bipolys(max_deg=1, max_terms=2)) for _ in gens]
    v = combine(coeffs, gens, rank)
    lift = member_lift(v, gens)
    assert lift is not None
    assert combine(lift, gens, rank) == v


@settings(max_examples=30)
@given(generator_sets(), vectors(2))
def test_normal_form_idempotent(data, v):
    rank, gens = data
    v = FreeVector(v.entries[:rank])
    gb = module_gb(gens, rank)
    nf = normal_form(v, gb)
    assert normal_form(nf, gb) == nf
    assert is_member(v - nf, gb)


@settings(max_examples=30)
@given(generator_sets())
def test_prune_keeps_the_module(data):
    rank, gens = data
    kept = modgb.prune(gens, rank)
    assert all(any(k is g for g in gens) for k in kept)
    gb = module_gb(kept, rank)
    assert all(is_member(g, gb) for g in gens)


def test_prune_drops_redundant():
    assert modgb.prune([V(X), V(X * Y), V(Y), V(X + Y)], 1) in ([V(X), V(Y)], [V(Y), V(X + Y)], [V(X), V(X + Y)])


def test_local_vdim_is_monotone():
    gens = [X**2 - Y**3, X * Y]
    one = [V(ONE)]
    dims = [quotient_vdim(one, [V(f) for f in gens + modgb._mpower(n)], 1) for n in range(1, 9)]
    assert dims == sorted(dims)
    first = dims.index(dims[-1])
    assert all(d == dims[-1] for d in dims[first:])


# brute-force oracles

SEEDS = range(30)


def random_matrix(rng):
    rows, cols = rng.randint(1, 2), rng.randint(1, 3)
    return PolyMatrix(rows, cols, [[random_poly(rng) for _ in range(cols)] for _ in range(rows)])


@pytest.mark.parametrize("reduced", [False, True], ids=["schreyer", "reduced"])
@pytest.mark.parametrize("seed", SEEDS)
def test_matrix_kernel_matches_linear_algebra(seed, reduced):
    rng = seeded(seed)
    A = random_matrix(rng)
    gens = matrix_kernel(A, reduced=reduced)
    for g in gens:
        assert A.apply(g).is_zero()
    gb = module_gb(gens, A.cols)
    for v in bounded_kernel(A, 4):
        assert is_member(v, gb)


def _power(rank, d):
    return [FreeVector.unit(rank, p).mul(BiPoly.monomial(d - k, k)) for p in range(rank) for k in range(d + 1)]


def random_quotient_instance(rng):
    """``I`` inside ``K``, both containing ``m^(D+1) R^rank``."""
    rank = rng.randint(1, 2)
    D = rng.randint(2, 3)
    K = [FreeVector([random_poly(rng) for _ in range(rank)]) for _ in range(rng.randint(1, 2))] + _power(rank, D)
    I = [combine([random_poly(rng, max_deg=1) for _ in K], K, rank) for _ in range(rng.randint(0, 2))]
    I += [v.mul(m) for v in K[:2] for m in (X, Y) if rng.random() < 0.7]
    I += _power(rank, D + 1)
    return K, I, rank, D + 1


@pytest.mark.parametrize("seed", SEEDS)
def test_quotient_vdim_matches_linear_algebra(seed):
    K, I, rank, D = random_quotient_instance(seeded(seed))
    want = truncated_codim(I, rank, D) - truncated_codim(K, rank, D)
    assert quotient_vdim(K, I, rank) == want
