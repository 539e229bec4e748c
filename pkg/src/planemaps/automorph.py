"""Plane polynomial automorphisms as words of elementary moves.

Conventions, fixed once for the whole package:

* A word ``[m1, m2, ..., mk]`` denotes the composition ``m1 o m2 o ... o mk``;
  the rightmost move acts first.
* ``apply_to_poly(w, P)`` is the pullback ``P o w``.  Pullback is
  contravariant: ``apply_to_poly(compose(w1, w2), P) ==
  apply_to_poly(w2, apply_to_poly(w1, P))``.
* ``apply_to_map(pre, f, post)`` is ``post o f o pre``.  Words are written in
  ``x, y``; a word used on the target side acts on ``u, v`` by renaming.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from .poly import Poly, UPoly, to_fraction

X = Poly.var("x")
Y = Poly.var("y")
U = Poly.var("u")
V = Poly.var("v")

_TO_TARGET = {"x": "u", "y": "v"}
_TO_SOURCE = {"u": "x", "v": "y"}


@dataclass(frozen=True)
class Affine:
    """``(x, y) -> (a*x + b*y + e, c*x + d*y + f)`` with ``a*d - b*c != 0``."""

    a: Fraction = Fraction(1)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    d: Fraction = Fraction(1)
    e: Fraction = Fraction(0)
    f: Fraction = Fraction(0)

    def __post_init__(self):
        for name in "abcdef":
            object.__setattr__(self, name, to_fraction(getattr(self, name)))
        if self.a * self.d - self.b * self.c == 0:
            raise ValueError("affine move with zero determinant")

    @classmethod
    def swap(cls) -> "Affine":
        return cls(0, 1, 1, 0)

    @classmethod
    def scale(cls, lam, mu=1) -> "Affine":
        return cls(lam, 0, 0, mu)

    @classmethod
    def translate(cls, e, f=0) -> "Affine":
        return cls(1, 0, 0, 1, e, f)

    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def components(self):
        return (self.a * X + self.b * Y + self.e, self.c * X + self.d * Y + self.f)

    def inverse(self) -> "Affine":
        det = self.det()
        ia, ib, ic, id_ = self.d / det, -self.b / det, -self.c / det, self.a / det
        return Affine(ia, ib, ic, id_, -(ia * self.e + ib * self.f), -(ic * self.e + id_ * self.f))

    def to_json(self) -> dict:
        return {"move": "affine", **{k: str(getattr(self, k)) for k in "abcdef"}}


@dataclass(frozen=True)
class TriangularX:
    """``(x, y) -> (x + q(y), y)``."""

    q: UPoly

    def components(self):
        return (X + self.q(Y), Y)

    def inverse(self) -> "TriangularX":
        return TriangularX(-self.q)

    def to_json(self) -> dict:
        return {"move": "triangular_x", "q": self.q.format("t")}


@dataclass(frozen=True)
class TriangularY:
    """``(x, y) -> (x, y + q(x))``."""

    q: UPoly

    def components(self):
        return (X, Y + self.q(X))

    def inverse(self) -> "TriangularY":
        return TriangularY(-self.q)

    def to_json(self) -> dict:
        return {"move": "triangular_y", "q": self.q.format("t")}


ElementaryMove = Union[Affine, TriangularX, TriangularY]


def move_from_json(data: dict) -> ElementaryMove:
    from .textio import parse_upoly

    kind = data.get("move")
    if kind == "affine":
        return Affine(*(Fraction(str(data.get(k, default)))
                        for k, default in zip("abcdef", (1, 0, 0, 1, 0, 0))))
    if kind == "triangular_x":
        return TriangularX(parse_upoly(str(data["q"]), "t"))
    if kind == "triangular_y":
        return TriangularY(parse_upoly(str(data["q"]), "t"))
    raise ValueError(f"unknown move kind {kind!r}")


def _substitute(pair, P: Poly) -> Poly:
    return P.subs({"x": pair[0], "y": pair[1]})


@dataclass(frozen=True)
class AutoWord:
    """An automorphism stored as a word of moves (rightmost acts first)."""

    moves: tuple = ()
    _components: list = field(default_factory=list, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "moves", tuple(self.moves))

    @classmethod
    def identity(cls) -> "AutoWord":
        return cls(())

    @classmethod
    def of(cls, *moves: ElementaryMove) -> "AutoWord":
        return cls(tuple(moves))

    @property
    def components(self):
        """Expanded coordinate functions ``(w1(x, y), w2(x, y))`` (cached)."""
        if not self._components:
            comps = (X, Y)
            for m in self.moves:
                comps = tuple(_substitute(m.components(), P) for P in comps)
            self._components.append(comps)
        return self._components[0]

    def target_components(self):
        """Components written in ``u, v`` for use on the target side."""
        return tuple(P.rename(_TO_TARGET) for P in self.components)

    def __len__(self):
        return len(self.moves)

    def is_identity(self) -> bool:
        return self.components == (X, Y)

    def to_json(self) -> list:
        return [m.to_json() for m in self.moves]

    @classmethod
    def from_json(cls, data: Iterable[dict]) -> "AutoWord":
        return cls(tuple(move_from_json(m) for m in data))

    def __str__(self):
        c1, c2 = self.components
        return f"({c1}, {c2})"


def compose(w1: AutoWord, w2: AutoWord) -> AutoWord:
    """The word denoting ``w1 o w2``."""
    out = AutoWord(w1.moves + w2.moves)
    if w1._components and w2._components:
        c2 = w2.components
        out._components.append(tuple(_substitute(c2, P) for P in w1.components))
    return out


def invert(w: AutoWord) -> AutoWord:
    return AutoWord(tuple(m.inverse() for m in reversed(w.moves)))


def apply_to_poly(w: AutoWord, P: Poly) -> Poly:
    """Pullback ``P o w`` of a polynomial in ``x, y``."""
    return _substitute(w.components, P)


def apply_to_target_poly(w: AutoWord, P: Poly) -> Poly:
    """Pullback ``P o w`` of a polynomial in ``u, v`` along the word acting on the target."""
    return apply_to_poly(w, P.rename(_TO_SOURCE)).rename(_TO_TARGET)


def apply_to_map(pre: AutoWord, f, post: AutoWord):
    """``post o f o pre`` for a map ``f = (f1, f2)``; returns the same map type."""
    from .maps import PolyMap

    g1, g2 = apply_to_poly(pre, f.f1), apply_to_poly(pre, f.f2)
    p1, p2 = post.components
    return PolyMap(_substitute((g1, g2), p1), _substitute((g1, g2), p2))


def jacobian(P1: Poly, P2: Poly) -> Poly:
    return P1.derivative("x") * P2.derivative("y") - P1.derivative("y") * P2.derivative("x")


# -- random tame automorphisms ------------------------------------------------


def _random_affine(rng: random.Random, coeff_bound: int) -> Affine:
    """Shear/swap product with a diagonal scaling from {+-1, +-2} and an integer translation."""
    lin = Affine()
    for _ in range(2):
        kind = rng.choice(("swap", "shear_x", "shear_y", "none"))
        k = rng.randint(-coeff_bound, coeff_bound)
        if kind == "swap":
            step = Affine.swap()
        elif kind == "shear_x":
            step = Affine(1, k, 0, 1)
        elif kind == "shear_y":
            step = Affine(1, 0, k, 1)
        else:
            step = Affine()
        lin = _affine_compose(lin, step)
    diag = Affine.scale(rng.choice((1, -1, 2, -2)), rng.choice((1, -1, 2, -2)))
    lin = _affine_compose(lin, diag)
    return Affine(lin.a, lin.b, lin.c, lin.d,
                  rng.randint(-coeff_bound, coeff_bound), rng.randint(-coeff_bound, coeff_bound))


def _affine_compose(p: Affine, q: Affine) -> Affine:
    """``p o q`` as a single affine move."""
    return Affine(p.a * q.a + p.b * q.c, p.a * q.b + p.b * q.d,
                  p.c * q.a + p.d * q.c, p.c * q.b + p.d * q.d,
                  p.a * q.e + p.b * q.f + p.e, p.c * q.e + p.d * q.f + p.f)


def _random_triangular(rng: random.Random, deg_bound: int, coeff_bound: int):
    deg = rng.randint(1, deg_bound)
    coeffs = [rng.randint(-coeff_bound, coeff_bound) for _ in range(deg)]
    lead = 0
    while lead == 0:
        lead = rng.randint(-coeff_bound, coeff_bound)
    q = UPoly(coeffs + [lead])
    return TriangularX(q) if rng.random() < 0.5 else TriangularY(q)


def random_tame(seed: int, word_len: int, deg_bound: int = 3, coeff_bound: int = 3) -> AutoWord:
    """Deterministic random tame automorphism of ``word_len`` moves.

    Moves alternate affine, triangular, affine, ... starting with an affine
    move.  Triangular shears have degree in ``1..deg_bound`` and integer
    coefficients in ``[-coeff_bound, coeff_bound]``.
    """
    if word_len < 0 or deg_bound < 1 or coeff_bound < 1:
        raise ValueError("need word_len >= 0, deg_bound >= 1, coeff_bound >= 1")
    rng = random.Random(seed)
    moves = []
    for i in range(word_len):
        if i % 2 == 0:
            moves.append(_random_affine(rng, coeff_bound))
        else:
            moves.append(_random_triangular(rng, deg_bound, coeff_bound))
    return AutoWord(tuple(moves))
