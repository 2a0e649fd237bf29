from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from instanton import linsys
from instanton.linsys import A, RelationSet, a_, b_, unknown_less
from instanton.parse import parse_poly as P
from instanton.polycore import pbar


def pipeline(src, j):
    pb = pbar(P(src), j)
    N = 2 * j - 2 + pb.degree_in(0)
    a, b = linsys.build_symbolic_ab(j, N)
    fTv = linsys.build_fTv(j, pb, a, b)
    return pb, N, a, b, fTv, linsys.get_relations(fTv)


def test_unknown_order():
    assert unknown_less(b_(9, 9), a_(1, 0))
    assert unknown_less(a_(1, 1), a_(2, 0))
    assert unknown_less(b_(2, 0), b_(2, 1))
    assert str(a_(3, 1)) == "a_3,1"


def test_symbolic_ab_counts():
    a, b = linsys.build_symbolic_ab(2, 3)
    assert len(a) == 10
    assert len(b) == 18
    assert (2, 3) not in a
    with pytest.raises(ValueError):
        linsys.build_symbolic_ab(3, 3)


def test_fTv_coefficients():
    *_, fTv, _ = pipeline("x^2 - y^3", 3)
    assert fTv[(8, 9)] == {b_(6, 9): 1, b_(5, 6): -1}
    *_, fTv, _ = pipeline("x", 2)
    assert fTv[(0, 2)] == {a_(0, 0): 1}
    assert fTv[(2, 3)] == {a_(2, 1): 1, b_(1, 3): 1}


def test_relations_for_x():
    *_, rel = pipeline("x", 2)
    assert a_(0, 0) in rel.nonfree


def test_fake_relation():
    _, N, *_, rel = pipeline("x^2 - y^3", 3)
    assert N == 7
    fake = {b_(6, 9): 1, b_(5, 6): -1}
    assert fake in rel.generating
    assert rel.implies(fake)
    # b_6,9 alone is forced at u^9 z^12, so the echelon form splits the fake row
    assert rel.rows[b_(6, 9)] == {b_(6, 9): 1}
    assert rel.rows[b_(5, 6)] == {b_(5, 6): 1}


def test_no_relation_from_l_le_i():
    fTv = {(3, 3): {a_(0, 0): Fraction(1)}, (2, 1): {b_(0, 0): Fraction(1)}}
    assert len(linsys.get_relations(fTv)) == 0


def test_apply_relations():
    pb, N, a, b, fTv, rel = pipeline("x", 2)
    a2 = linsys.apply_relations(a, rel)
    assert all(a_(0, 0) not in form for form in a2.values())
    assert linsys.apply_relations(a, RelationSet()) == a


def test_changeables():
    a, b = linsys.build_symbolic_ab(2, 3)
    allv = linsys.unknowns_of(a, b)
    ch = linsys.changeables(2, allv, set())
    assert len(ch) == 18
    assert ch == sorted(ch, reverse=True)
    assert all(v.i <= 2 for v in ch)
    *_, rel = pipeline("x", 2)
    assert a_(0, 0) not in linsys.changeables(2, allv, rel.nonfree)


def test_relation_set_back_substitutes():
    rel = RelationSet()
    rel.add({a_(1, 0): Fraction(1), b_(0, 1): Fraction(1)})
    assert rel.add({b_(0, 0): Fraction(-2), b_(0, 1): Fraction(2)}) == b_(0, 1)
    assert rel.rows[b_(0, 1)] == {b_(0, 1): 1, b_(0, 0): -1}
    assert rel.rows[a_(1, 0)] == {a_(1, 0): 1, b_(0, 0): 1}
    assert rel.add({a_(1, 0): Fraction(1), b_(0, 1): Fraction(1)}) is None


CORPUS_SAMPLE = [("x", 2), ("xy", 2), ("x^2y^2", 3), ("x^2-y^3", 3), ("x^3-x^2y+y^3", 3), ("x^2-y^7", 4),
                 ("x^3-y^4", 4), ("x^4-xy^5", 4)]


@pytest.mark.parametrize("src, j", CORPUS_SAMPLE)
def test_relation_set_invariants(src, j):
    pb, N, a, b, fTv, rel = pipeline(src, j)
    pivots = set(rel.rows)
    for piv, row in rel.rows.items():
        assert max(row) == piv and row[piv] == 1
        assert sum(1 for v in row if v.kind == A) <= 1
        assert not (pivots - {piv}) & set(row)
    for series in (a, b):
        for form in series.values():
            for v in form:
                assert v.i <= N
                assert v.l <= (v.i if v.kind == A else v.i + j)


@pytest.mark.parametrize("src, j", CORPUS_SAMPLE)
def test_reduced_series_satisfy_all_relations(src, j):
    pb, N, a, b, fTv, rel = pipeline(src, j)
    a2 = linsys.apply_relations(a, rel)
    b2 = linsys.apply_relations(b, rel)
    fTv2 = linsys.build_fTv(j, pb, a2, b2)
    assert all(not form for (i, l), form in fTv2.items() if l > i)
    assert len(linsys.get_relations(fTv2)) == 0


@settings(max_examples=20)
@given(st.sampled_from(CORPUS_SAMPLE), st.fractions(min_value=-3, max_value=3).filter(bool))
def test_fTv_linear_in_p(case, c):
    src, j = case
    pb = pbar(P(src), j)
    N = 2 * j - 2 + pb.degree_in(0)
    a, b = linsys.build_symbolic_ab(j, N)
    base = linsys.build_fTv(j, pb, a, b)
    scaled = linsys.build_fTv(j, pb.scale(c), a, b)
    for k in set(base) | set(scaled):
        f, g = base.get(k, {}), scaled.get(k, {})
        for v in set(f) | set(g):
            want = f.get(v, 0) if v.kind == A else c * f.get(v, 0)
            assert g.get(v, 0) == want
