"""Constructive rectification of coordinate polynomials.

A polynomial ``p(x, y)`` is a coordinate when some automorphism ``alpha``
gives ``p o alpha = x``.  :func:`rectify_coordinate` searches for one by
degree reduction: while ``deg p >= 2`` the top form must be a power of a
linear form and, after a linear change making that form an axis, the
weighted leading form along the steepest Newton edge must be a perfect power
of ``x^k + beta*y`` (or ``y^k + beta*x``); a triangular shear then lowers the
degree.  When no such move exists the search stops with a witness.

:func:`stein_decompose` writes ``h = phi(r)`` with ``deg phi`` maximal and
:func:`lemma1_normalize` combines both to straighten a polynomial whose
generic fibers are unions of parallel lines.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .automorph import AutoWord, Affine, TriangularX, TriangularY, apply_to_poly, compose
from .errors import RectifyFailed
from .poly import Poly, UPoly, gcd, is_squarefree, resultant, up_decompose

X = Poly.var("x")
Y = Poly.var("y")


@dataclass(frozen=True)
class Rectified:
    alpha: AutoWord

    @property
    def ok(self) -> bool:
        return True


@dataclass(frozen=True)
class NotRectifiable:
    """``witness`` names the stuck polynomial and why no reducing move applies."""

    witness: dict

    @property
    def ok(self) -> bool:
        return False


RectifyResult = Union[Rectified, NotRectifiable]


@dataclass(frozen=True)
class SteinData:
    """``h == lift(phi)(r)`` with ``r`` graded-lex monic and without constant term."""

    phi: UPoly
    r: Poly
    generic_value: Fraction

    def recompose(self) -> Poly:
        return self.phi(self.r)


@dataclass(frozen=True)
class Lemma1Certificate:
    """``h o alpha == phi_hat(x)``."""

    alpha: AutoWord
    phi_hat: UPoly
    stein: SteinData


# -- reducing moves ----------------------------------------------------------


def _linear_power(top: Poly, D: int):
    """Return ``(c, beta, axis)`` with ``top == c*(x + beta*y)^D`` (axis "x") or ``c*y^D`` (axis "y")."""
    terms = top.terms_in(("x", "y"))
    c = terms.get((D, 0))
    if c:
        beta = terms.get((D - 1, 1), Fraction(0)) / (D * c)
        if top == c * (X + beta * Y) ** D:
            return c, beta, "x"
        return None
    c = terms.get((0, D))
    if c and top == c * Y ** D:
        return c, Fraction(0), "y"
    return None


def _edge_move(p: Poly, D: int, main: str):
    """Triangular move lowering ``deg p`` when the top form of ``p`` is ``c*main^D``.

    With ``main = x`` the Newton edge through ``x^D`` with the shallowest
    slope gives weights ``w(x) = 1, w(y) = k``; the weighted leading form must
    be ``c*(x^k + beta*y)^(D/k)`` and the move is ``y -> y - x^k/beta``.
    """
    other = "y" if main == "x" else "x"
    terms = p.terms_in((main, other))
    candidates = [Fraction(D - i, j) for (i, j) in terms if j > 0]
    if not candidates:
        return None, f"polynomial in {main} alone of degree {D}"
    k = min(candidates)
    if k.denominator != 1:
        return None, f"steepest edge has non-integral slope {k}"
    k = int(k)
    if D % k:
        return None, f"edge weight {k} does not divide degree {D}"
    m = D // k
    c = terms[(D, 0)]
    beta = terms.get((D - k, 1), Fraction(0)) / (c * m)
    M, O = Poly.var(main), Poly.var(other)
    form = Poly.from_terms({(i, j): a for (i, j), a in terms.items() if i + k * j == D}, (main, other))
    if beta == 0 or form != c * (M ** k + beta * O) ** m:
        return None, "weighted leading form is not a perfect power of a binomial"
    q = UPoly.monomial(k, -1 / beta)
    move = TriangularY(q) if main == "x" else TriangularX(q)
    return move, None


def _reducing_word(p: Poly):
    """``(word, None)`` lowering ``deg p``, or ``(None, reason)``."""
    D = p.total_degree()
    if D == 1:
        terms = p.terms_in(("x", "y"))
        a, b, e = terms.get((1, 0), Fraction(0)), terms.get((0, 1), Fraction(0)), terms.get((0, 0), Fraction(0))
        if a == 1 and b == 0 and e == 0:
            return AutoWord(), None
        if a != 0:
            return AutoWord.of(Affine(1 / a, -b / a, 0, 1, -e / a, 0)), None
        return AutoWord.of(Affine(0, 1, 1 / b, 0, 0, -e / b)), None
    top = p.homogeneous_part(D)
    power = _linear_power(top, D)
    if power is None:
        return None, "top-degree form is not a power of a linear form"
    _, beta, axis = power
    word = AutoWord()
    if axis == "x" and beta != 0:
        word = AutoWord.of(TriangularX(UPoly((0, -beta))))
        p = apply_to_poly(word, p)
    move, reason = _edge_move(p, D, axis)
    if move is None:
        return None, reason
    return compose(word, AutoWord.of(move)), None


def newton_reducing_move(p: Poly) -> Optional[AutoWord]:
    """Short word ``mu`` (optional linear step, then one shear) with ``deg(p o mu) < deg p``.

    In degree one the word is the affine move sending ``p`` to ``x`` (empty
    when ``p == x``).  Returns None when no admissible Newton edge exists.
    """
    if p.is_constant():
        raise ValueError("reducing move of a constant polynomial")
    return _reducing_word(p)[0]


def rectify_coordinate(p: Poly) -> RectifyResult:
    """Search for ``alpha`` with ``p o alpha == x`` by repeated degree reduction."""
    if p.is_constant():
        raise ValueError("cannot rectify a constant polynomial")
    alpha = AutoWord()
    current = p
    for _ in range(p.total_degree() + 1):
        D = current.total_degree()
        word, reason = _reducing_word(current)
        if word is None:
            return NotRectifiable({"polynomial": str(current), "degree": D, "reason": reason})
        alpha = compose(alpha, word)
        current = apply_to_poly(word, current)
        if D == 1:
            if current != X:
                raise AssertionError(f"affine step left {current}")
            return Rectified(alpha)
        if current.total_degree() >= D:
            raise AssertionError("reducing move did not lower the degree")
    raise AssertionError("rectification exceeded its iteration cap")


# -- Stein factorization -------------------------------------------------------


def _line_restriction(h: Poly, rng: random.Random):
    D = h.total_degree()
    top = h.homogeneous_part(D)
    while True:
        a, c = rng.randint(-9, 9), rng.randint(-9, 9)
        if top.evaluate({"x": Fraction(a), "y": Fraction(c)}) == 0:
            continue
        b, e = rng.randint(-9, 9), rng.randint(-9, 9)
        T = Poly.var("x")
        restricted = h.subs({"x": a * T + b, "y": c * T + e})
        return restricted.to_upoly("x")


def _approximate_root(H: Poly, k: int) -> Optional[Poly]:
    """The ``r`` (graded-lex monic, no constant term) with ``deg(H - r^k) <= deg H - deg r``.

    ``H`` must have graded-lex leading coefficient 1.  Returns None when a
    leading-term correction is not a monomial.
    """
    D = H.total_degree()
    s = D // k
    (lead, _) = H.leading_term()
    if any(e % k for e in lead):
        return None
    lead_r = Poly.from_terms({tuple(e // k for e in lead): 1}, ("x", "y", "u", "v"))
    r = lead_r
    denom_exps = tuple(e * (k - 1) // k for e in lead)
    cap = (s + 1) * (s + 2) // 2 + 1
    for _ in range(cap):
        E = H - r ** k
        if E.is_zero():
            break
        exps, coeff = E.leading_term()
        if sum(exps) <= (k - 1) * s:
            break
        if any(a < b for a, b in zip(exps, denom_exps)):
            return None
        step = tuple(a - b for a, b in zip(exps, denom_exps))
        r = r + Poly.from_terms({step: coeff / k}, ("x", "y", "u", "v"))
    else:
        return None
    const = r.terms.get((0, 0, 0, 0), Fraction(0))
    return r - const


def _digits(h: Poly, r: Poly, k: int) -> Optional[UPoly]:
    """Constants ``b_j`` with ``h == sum b_j r^j``, or None."""
    s = r.total_degree()
    powers = [Poly(1)]
    for _ in range(k):
        powers.append(powers[-1] * r)
    rem = h
    digits = [Fraction(0)] * (k + 1)
    for j in range(k, -1, -1):
        if rem.is_zero():
            break
        deg = rem.total_degree()
        if deg > j * s:
            return None
        if deg == j * s:
            exps, c = rem.leading_term()
            lexps, lc = powers[j].leading_term()
            if exps != lexps:
                return None
            digits[j] = c / lc
            rem = rem - powers[j] * digits[j]
    if not rem.is_zero():
        return None
    return UPoly(digits)


def _stein_candidate(h: Poly, k: int):
    H = h / h.leading_coefficient()
    r = _approximate_root(H, k)
    if r is None or r.is_constant():
        return None
    phi = _digits(h, r, k)
    if phi is None or phi(r) != h:
        return None
    return phi, r


def _common_zero_free(polys, tries: int = 4) -> bool:
    """True when the polynomials (in x, y) certainly have no common zero."""
    polys = [P for P in polys if not P.is_zero()]
    if any(P.is_constant() for P in polys):
        return True
    if len(polys) < 2:
        return False
    base = polys[0]
    D = base.total_degree()
    used = 0
    for t in range(0, 40):
        if used >= tries:
            break
        tops = [P.homogeneous_part(P.total_degree()) for P in polys]
        if any(T.evaluate({"x": Fraction(-t), "y": Fraction(1)}) == 0 for T in tops):
            continue
        used += 1
        sheared = [P.subs({"x": X - t * Y}) for P in polys]
        g = None
        for Q in sheared[1:]:
            R = resultant(sheared[0], Q, "y")
            g = R if g is None else gcd(g, R)
            if g.is_constant() and not g.is_zero():
                return True
    del D
    return False


def _generic_value(r: Poly, limit: int = 60) -> Fraction:
    rx, ry = r.derivative("x"), r.derivative("y")
    for n in range(limit):
        gamma = Fraction((n + 1) // 2 * (1 if n % 2 else -1)) if n else Fraction(0)
        shifted = r - gamma
        if not is_squarefree(shifted):
            continue
        if _common_zero_free([shifted, rx, ry]):
            return gamma
    raise AssertionError(f"no smooth square-free level of {r} among the first {limit} integers")


def stein_decompose(h: Poly, seed: int = 0) -> SteinData:
    """``h = phi(r)`` with ``deg phi`` maximal.

    Candidate degrees of ``phi`` come from decomposing the restriction of
    ``h`` to a random line; each candidate is tested by computing the
    bivariate approximate root and expanding ``h`` in its powers.
    """
    if h.is_constant():
        raise ValueError("Stein decomposition of a constant polynomial")
    if not set(h.variables()) <= {"x", "y"}:
        raise ValueError(f"{h} is not a polynomial in x, y")
    rng = random.Random(seed)
    restricted = _line_restriction(h, rng)
    # a bivariate phi(r) with deg r >= 2 restricts to a univariate decomposition;
    # deg r == 1 (phi of degree deg h) is always a candidate
    degrees = {phi.degree() for phi, _ in up_decompose(restricted)}
    degrees.add(h.total_degree())
    degrees = sorted(d for d in degrees if d > 1)[::-1]
    for k in degrees:
        found = _stein_candidate(h, k)
        if found is not None:
            phi, r = found
            return SteinData(phi, r, _generic_value(r))
    phi, r = _stein_candidate(h, 1)
    return SteinData(phi, r, _generic_value(r))


def lemma1_normalize(h: Poly, seed: int = 0) -> Lemma1Certificate:
    """Find ``alpha`` with ``h o alpha == phi_hat(x)``.

    Valid when the generic fibers of ``h`` are disjoint unions of lines: then
    ``r - gamma`` is a coordinate and its rectifying word straightens ``h``.
    """
    stein = stein_decompose(h, seed)
    gamma = stein.generic_value
    result = rectify_coordinate(stein.r - gamma)
    if not result.ok:
        raise RectifyFailed(f"level set r = {gamma} of {stein.r} is not a coordinate line",
                            result.witness)
    phi_hat = stein.phi.compose(UPoly((gamma, 1)))
    if apply_to_poly(result.alpha, h) != phi_hat.to_poly("x"):
        raise AssertionError("straightened polynomial does not depend on x alone")
    return Lemma1Certificate(result.alpha, phi_hat, stein)
