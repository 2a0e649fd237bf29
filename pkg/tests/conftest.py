import random
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from instanton.polycore import BiPoly

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_coeff = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def bipolys(draw, max_deg=3, max_terms=4):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e1 = draw(st.integers(0, max_deg))
        e2 = draw(st.integers(0, max_deg - e1))
        terms[(e1, e2)] = draw(small_coeff)
    return BiPoly(terms)


def random_poly(rng, max_deg=2, max_terms=3, zero_ok=True):
    while True:
        terms = {}
        for _ in range(rng.randint(0 if zero_ok else 1, max_terms)):
            e1 = rng.randint(0, max_deg)
            e2 = rng.randint(0, max_deg - e1)
            terms[(e1, e2)] = Fraction(rng.randint(-3, 3))
        p = BiPoly(terms)
        if p or zero_ok:
            return p


def seeded(seed):
    return random.Random(seed)
