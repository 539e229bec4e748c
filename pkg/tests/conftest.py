from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from planemaps.automorph import random_tame
from planemaps.poly import Poly, UPoly

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def polys(draw, gens=("x", "y"), max_deg=4, max_terms=5, coeff=9, nonzero=False):
    n = draw(st.integers(1 if nonzero else 0, max_terms))
    terms = {}
    for _ in range(n):
        exps = draw(st.tuples(*[st.integers(0, max_deg) for _ in gens]).filter(lambda e: sum(e) <= max_deg))
        c = draw(st.integers(-coeff, coeff).filter(bool))
        terms[exps] = c
    P = Poly.from_terms(terms, gens)
    if nonzero and P.is_zero():
        P = Poly(1)
    return P


@st.composite
def rationals(draw, num=999999, den=999):
    return Fraction(draw(st.integers(-num, num)), draw(st.integers(1, den)))


@st.composite
def upolys(draw, max_deg=5, coeff=9, min_deg=0):
    deg = draw(st.integers(min_deg, max_deg))
    coeffs = [draw(st.integers(-coeff, coeff)) for _ in range(deg)]
    coeffs.append(draw(st.integers(-coeff, coeff).filter(bool)))
    return UPoly(coeffs)


@st.composite
def words(draw, max_len=3, deg_bound=3, coeff_bound=3):
    seed = draw(st.integers(0, 2 ** 64 - 1))
    return random_tame(seed, draw(st.integers(0, max_len)), deg_bound, coeff_bound)


X, Y = Poly.var("x"), Poly.var("y")
U, V = Poly.var("u"), Poly.var("v")
