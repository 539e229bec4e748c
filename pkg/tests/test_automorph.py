from fractions import Fraction

from hypothesis import given

from conftest import U, V, X, Y, polys, words
from planemaps.automorph import (Affine, AutoWord, TriangularX, TriangularY, apply_to_map,
                                 apply_to_poly, apply_to_target_poly, compose, invert, jacobian,
                                 random_tame)
from planemaps.maps import PolyMap
from planemaps.poly import UPoly

T = UPoly.t()
SWAP = AutoWord.of(Affine.swap())


def test_identity_compose():
    w = random_tame(5, 3)
    assert compose(AutoWord(), w).components == w.components


def test_inverse_pair():
    w = compose(AutoWord.of(TriangularY(T ** 2)), AutoWord.of(TriangularY(-(T ** 2))))
    assert w.components == (X, Y)


def test_swap_twice():
    assert compose(SWAP, SWAP).components == (X, Y)


def test_invert_moves():
    assert invert(AutoWord.of(TriangularY(T ** 2))).moves == (TriangularY(-(T ** 2)),)
    assert invert(AutoWord.of(Affine.scale(2))).moves == (Affine(Fraction(1, 2), 0, 0, 1, 0, 0),)


def test_invert_word_reverses():
    w = AutoWord.of(Affine.swap(), TriangularY(T ** 3))
    assert invert(w).moves == (TriangularY(-(T ** 3)), Affine.swap())
    assert compose(w, invert(w)).components == (X, Y)


def test_triangular_components():
    assert AutoWord.of(TriangularX(T ** 2)).components == (X + Y ** 2, Y)
    assert AutoWord.of(TriangularY(T ** 2)).components == (X, Y + X ** 2)


def test_pullback_examples():
    assert apply_to_poly(AutoWord.of(TriangularX(-(T ** 2))), X + Y ** 2) == X
    p = X ** 3 - 2 * X * Y + 7
    assert apply_to_poly(AutoWord(), p) == p
    assert apply_to_poly(SWAP, X) == Y


def test_apply_to_map_examples():
    f = PolyMap(X ** 2, Y)
    assert apply_to_map(AutoWord(), f, AutoWord()) == f
    assert apply_to_map(AutoWord(), f, SWAP) == PolyMap(Y, X ** 2)
    g = PolyMap(X ** 2, Y + X ** 3)
    assert apply_to_map(AutoWord.of(TriangularY(-(T ** 3))), g, AutoWord()) == PolyMap(X ** 2, Y)


def test_target_word_acts_on_target_variables():
    w = AutoWord.of(TriangularY(T ** 2))
    assert apply_to_target_poly(w, V) == V + U ** 2


def test_random_tame_deterministic():
    assert random_tame(7, 0).is_identity()
    assert random_tame(123, 3) == random_tame(123, 3)
    w = random_tame(7, 2)
    assert compose(w, invert(w)).components == (X, Y)


def test_json_round_trip():
    w = random_tame(99, 3)
    assert AutoWord.from_json(w.to_json()) == w


@given(words(), words(), polys(max_deg=3))
def test_pullback_contravariant(w1, w2, p):
    assert apply_to_poly(compose(w1, w2), p) == apply_to_poly(w2, apply_to_poly(w1, p))


@given(words())
def test_round_trips(w):
    assert compose(w, invert(w)).components == (X, Y)
    assert compose(invert(w), w).components == (X, Y)


@given(words())
def test_jacobian_constant(w):
    J = jacobian(*w.components)
    assert J.is_constant() and not J.is_zero()
