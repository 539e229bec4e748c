from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from conftest import U, V, X, Y, polys, upolys
from planemaps.errors import DegenerateElimination
from planemaps.poly import (Poly, UPoly, cluster, derivative, gcd, interpolate, rational_roots,
                            refine_roots, resultant, squarefree_part, sylvester_resultant,
                            up_decompose, up_roots_numeric)
from planemaps.textio import parse_poly

T = UPoly.t()


def P(text):
    return parse_poly(text)


# -- ring operations ------------------------------------------------------


def test_difference_of_squares():
    assert (X + Y) * (X - Y) == X ** 2 - Y ** 2


def test_substitution_undoes_shear():
    assert (X + Y ** 2).subs({"x": X - Y ** 2}) == X


def test_add_zero():
    p = P("3*x^2*y - 1/2")
    assert p + 0 == p and p + Poly() == p


def test_rational_coefficients_are_exact():
    assert (X / 3 + X * Fraction(2, 3)) == X


# -- derivative -----------------------------------------------------------


def test_derivatives():
    assert derivative(X ** 3 * Y, "x") == 3 * X ** 2 * Y
    assert derivative(X ** 2, "y").is_zero()
    assert derivative(X ** 2 - U, "x") == 2 * X


# -- resultant ------------------------------------------------------------


def test_resultant_constant_in_variable():
    assert resultant(X ** 2 - U, Y - V, "y") == X ** 2 - U


def test_resultant_evaluation():
    assert resultant(Y ** 2 - X, Y - 1, "y") == 1 - X


# reference values from an independent computer-algebra system
@pytest.mark.parametrize("p, q, var, expected", [
    ("x^2*y + x - 3*y^2 - 1", "-x^2 + 2*x*y + y^3 + 4", "y",
     "x^8 - 2*x^6 + 25*x^5 - 36*x^4 - 59*x^3 + 189*x^2 + 15*x - 433"),
    ("x^2 - u", "x^3 - x*y + v", "x", "-u^3 + 2*u^2*y - u*y^2 + v^2"),
    ("x^3 - 3*x*y^2 - 2*y^3 + 3", "2*x*y - y^2 + 5", "x",
     "27*y^6 - 45*y^4 - 24*y^3 - 75*y^2 + 125"),
])
def test_resultant_reference_values(p, q, var, expected):
    assert resultant(P(p), P(q), var) == P(expected)
    assert sylvester_resultant(P(p), P(q), var) == P(expected)


def test_resultant_degenerate():
    with pytest.raises(DegenerateElimination):
        resultant(X + 1, X ** 2, "y")


@given(polys(max_deg=3, nonzero=True), polys(max_deg=3, nonzero=True))
def test_resultant_matches_sylvester_determinant(p, q):
    assume(p.degree("y") > 0 or q.degree("y") > 0)
    assert resultant(p, q, "y") == sylvester_resultant(p, q, "y")


@given(polys(max_deg=4, nonzero=True), polys(max_deg=4, nonzero=True), polys(max_deg=4, nonzero=True))
def test_resultant_multiplicative(p, q, r):
    assume(r.degree("y") > 0 or (p.degree("y") > 0 and q.degree("y") > 0))
    assert resultant(p * q, r, "y") == resultant(p, r, "y") * resultant(q, r, "y")


# -- gcd ------------------------------------------------------------------


def test_gcd_examples():
    assert gcd(X ** 2 - Y ** 2, X - Y) == X - Y
    assert gcd(X, Y) == 1
    p = P("4*x^2 - 2*y")
    assert gcd(p, Poly()) == p.normalized() == X ** 2 - Y / 2


@pytest.mark.parametrize("p, q, expected", [
    ("x^2 - y", "x^3 - x*y", "x^2 - y"),
    ("x^3*y - x*y^3", "x^2*y^2 - y^4", "x^2*y - y^3"),
])
def test_gcd_reference_values(p, q, expected):
    assert gcd(P(p), P(q)) == P(expected)


def test_gcd_with_common_factor():
    a, b = X ** 2 - Y, X * Y + 3
    assert gcd(a * b ** 2, a * (X + Y ** 3)) == a


@given(polys(max_deg=6, nonzero=True), polys(max_deg=6, nonzero=True))
def test_gcd_divides_both(p, q):
    g = gcd(p, q)
    assert g.divides(p) and g.divides(q)


@given(polys(max_deg=3, nonzero=True), polys(max_deg=3, nonzero=True), polys(max_deg=2, nonzero=True))
def test_gcd_recovers_planted_factor(p, q, c):
    g = gcd(p * c, q * c)
    assert c.divides(g)


# -- square-free part -----------------------------------------------------


def test_squarefree_examples():
    assert squarefree_part(X ** 2 * Y) == X * Y
    assert squarefree_part(X ** 2 - Y ** 2) == X ** 2 - Y ** 2
    assert squarefree_part((X + Y) ** 3) == X + Y


def test_squarefree_reference_values():
    assert squarefree_part((X + Y) ** 3 * (X - Y)) == (X - Y) * (X + Y)
    assert squarefree_part(X ** 3 * Y ** 2 * (X + 1)) == X * Y * (X + 1)


@given(polys(max_deg=3, nonzero=True), polys(max_deg=3, nonzero=True))
def test_squarefree_idempotent_on_squares(p, q):
    assume(not p.is_constant() and not q.is_constant() and gcd(p, q) == 1)
    assert squarefree_part(p ** 2 * q) == squarefree_part(p * q)


# -- univariate decomposition ---------------------------------------------


def test_decompose_square_of_quadratic():
    H = T ** 4 + 2 * T ** 2 + 1
    assert up_decompose(H) == [(T ** 2 + 2 * T + 1, T ** 2)]


def test_decompose_prime_degree():
    assert up_decompose(T ** 3 + T) == []


def test_decompose_monomial():
    assert up_decompose(T ** 6) == [(T ** 2, T ** 3), (T ** 3, T ** 2)]


@given(upolys(max_deg=3, min_deg=2), upolys(max_deg=3, min_deg=2))
def test_decompose_recovers_composition(phi, rho):
    H = phi.compose(rho)
    found = up_decompose(H)
    assert found
    assert all(f.compose(r) == H for f, r in found)
    assert any(r.degree() == rho.degree() for _, r in found)


# -- numeric roots --------------------------------------------------------


def _sorted(roots):
    return sorted(roots, key=lambda z: (round(z.real, 6), round(z.imag, 6)))


def test_roots_simple():
    assert [complex(round(z.real, 10), round(z.imag, 10)) for z in _sorted(up_roots_numeric(T ** 2 - 4))] == [-2, 2]
    assert [complex(round(z.real, 10), round(z.imag, 10)) for z in _sorted(up_roots_numeric(T ** 2 + 1))] == [-1j, 1j]


def test_roots_triple():
    report = up_roots_numeric((T - 1) ** 3)
    assert len(report) == 3
    assert all(abs(z - 1) < 1e-6 for z in report)
    assert cluster(list(report)) == [pytest.approx(1)]


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=6))
def test_roots_of_linear_products(roots):
    H = UPoly([1])
    for r in roots:
        H = H * (T - r)
    found = list(up_roots_numeric(H))
    assert len(found) == len(roots)
    for r in set(roots):
        assert any(abs(z - r) < 1e-8 for z in found)


def test_refine_roots_high_precision():
    roots = refine_roots(T ** 2 - 2, dps=50)
    assert len(roots) == 2
    assert min(abs(abs(complex(z)) - 2 ** 0.5) for z in roots) < 1e-15


def test_rational_roots_and_interpolation():
    H = (2 * T - 1) * (T + 3) * (T ** 2 + 1)
    assert sorted(rational_roots(H)) == [Fraction(-3), Fraction(1, 2)]
    xs = [Fraction(i) for i in range(5)]
    assert interpolate(xs, [H(x_) for x_ in xs]) == H
