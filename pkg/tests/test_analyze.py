import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import U, V, X, Y, words
from planemaps.analyze import (branch_locus, critical_value_curve, fiber_count_exact,
                               geometric_degree, jacobian_det, nonproper_curve,
                               rational_points_on_curve, solve_fiber)
from planemaps.automorph import apply_to_map, apply_to_poly, apply_to_target_poly, invert, random_tame
from planemaps.errors import DegenerateMap
from planemaps.maps import PolyMap

IDENTITY = PolyMap(X, Y)
FOLD = PolyMap(X ** 2, Y)
CUBE = PolyMap(X ** 3, X ** 2 * Y)
TILTED_FOLD = PolyMap(X ** 2, Y + X ** 3)
TYPE3 = PolyMap(X ** 2, X ** 2 * Y + X)


def test_jacobians():
    assert jacobian_det(FOLD) == 2 * X
    assert jacobian_det(CUBE) == 3 * X ** 4
    assert jacobian_det(IDENTITY) == 1


def test_non_dominating_rejected():
    with pytest.raises(DegenerateMap):
        geometric_degree(PolyMap(X + Y, (X + Y) ** 2))


@pytest.mark.parametrize("f, d", [(IDENTITY, 1), (FOLD, 2), (PolyMap(X ** 5, Y), 5), (CUBE, 3),
                                  (TYPE3, 2)])
def test_geometric_degree(f, d):
    assert geometric_degree(f) == d


def test_cube_fiber_over_one_five():
    # three cube roots of unity, y = 5/x^2
    sol = solve_fiber(CUBE, (1, 5))
    assert sol.count_distinct == 3
    for x, y in sol.points:
        assert abs(x ** 3 - 1) < 1e-9 and abs(y - 5 / x ** 2) < 1e-9


def test_critical_values():
    assert critical_value_curve(FOLD).defining == U
    assert critical_value_curve(IDENTITY).empty
    assert critical_value_curve(TILTED_FOLD).defining == U


def test_nonproper():
    assert nonproper_curve(FOLD).empty
    assert nonproper_curve(CUBE).defining == U
    assert nonproper_curve(IDENTITY).empty


def test_branch_locus():
    assert branch_locus(FOLD).defining == U
    assert branch_locus(CUBE).defining == U
    assert branch_locus(IDENTITY).empty
    assert branch_locus(TYPE3).defining == U


def test_fibers():
    sol = solve_fiber(FOLD, (4, 0))
    assert sol.count_distinct == 2
    assert sorted(round(p[0].real, 9) for p in sol.points) == [-2, 2]
    assert solve_fiber(CUBE, (0, 5)).count_distinct == 0
    origin = solve_fiber(CUBE, (0, 0))
    assert origin.infinite
    assert fiber_count_exact(CUBE, (0, 0)) is None


def test_fiber_counts_exact_match_numeric():
    for target in [(1, 5), (0, 5), (Fraction(7, 3), -2)]:
        assert fiber_count_exact(CUBE, target) == solve_fiber(CUBE, target).count_distinct


def test_rational_points_on_curve():
    C = U - V ** 2 + 1
    pts = rational_points_on_curve(C, 4)
    assert len(pts) == 4
    assert all(C.evaluate({"u": a, "v": b}) == 0 for a, b in pts)


def _moved(f, seed):
    rng = random.Random(seed)
    pre = random_tame(rng.getrandbits(64), 2, 2, 2)
    post = random_tame(rng.getrandbits(64), 2, 2, 2)
    return pre, post, apply_to_map(pre, f, post)


@pytest.mark.parametrize("f", [FOLD, CUBE, TYPE3, PolyMap(X ** 3, X * Y)])
@pytest.mark.parametrize("seed", [1, 2])
def test_equivariance(f, seed):
    pre, post, g = _moved(f, seed)
    assert geometric_degree(g) == geometric_degree(f)
    expected = apply_to_target_poly(invert(post), branch_locus(f).defining)
    assert branch_locus(g).defining == expected.normalized()


@settings(max_examples=15)
@given(words(max_len=2, deg_bound=2), words(max_len=2, deg_bound=2))
def test_jacobian_chain_rule(pre, post):
    g = apply_to_map(pre, CUBE, post)
    ratio = jacobian_det(g).exact_div(apply_to_poly(pre, jacobian_det(CUBE)))
    assert ratio.is_constant() and not ratio.is_zero()


@settings(max_examples=8)
@given(words(max_len=2, deg_bound=2), words(max_len=2, deg_bound=2))
def test_covering_counts_after_change_of_coordinates(pre, post):
    g = apply_to_map(pre, FOLD, post)
    locus = branch_locus(g).defining
    assert locus == apply_to_target_poly(invert(post), U).normalized()
    rng = random.Random(0)
    for _ in range(3):
        a, b = Fraction(rng.randint(-50, 50), 7), Fraction(rng.randint(-50, 50), 11)
        if locus.evaluate({"u": a, "v": b}) != 0:
            assert solve_fiber(g, (a, b)).count_distinct == 2
    for a, b in rational_points_on_curve(locus, 2):
        assert solve_fiber(g, (a, b)).count_distinct == 1
