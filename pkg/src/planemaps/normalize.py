"""Reduction of maps with a line as branched value set to the three normal forms.

The pipeline:

1. rectify the branch locus ``C(u, v) = 0`` to ``u = 0`` (``alpha_target``);
2. straighten the first component ``C(f1, f2)``: it becomes ``lam*x^d + c``
   after a source automorphism (``beta_source``);
3. rescale and shift the target so the first component is ``x^d``;
4. the second component is then ``a*x^k*y + x^l*g(x)``;
5. split it into the part removable by a target shear ``v - c(u)``, the part
   removable by a source shear ``y - h(x)`` (or ``y - b(x)``) and the rest.

Every step is recorded in a :class:`NormalizationTrace` whose replay is an
exact polynomial identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .analyze import branch_locus, check_dominating
from .automorph import (Affine, AutoWord, TriangularY, apply_to_map, compose, invert)
from .errors import (InvalidParams, Lemma1MiddleCoefficients, NotInClass, RectifyFailed,
                     ReplayMismatch, ShapeMismatch)
from .maps import PolyMap
from .poly import Poly, UPoly, gcd, resultant, squarefree_part
from .rectify import lemma1_normalize, rectify_coordinate

X = Poly.var("x")
Y = Poly.var("y")


# -- normal forms -------------------------------------------------------------


@dataclass(frozen=True)
class TypeI:
    """``(x^d, y)``."""

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise InvalidParams("TypeI needs d >= 1")

    kind = "I"

    def map(self) -> PolyMap:
        return PolyMap(X ** self.d, Y)

    def to_json(self) -> dict:
        return {"type": "I", "d": self.d}


@dataclass(frozen=True)
class TypeII:
    """``(x^d, x^m*y)``."""

    d: int
    m: int

    def __post_init__(self):
        if self.d < 1 or self.m < 1:
            raise InvalidParams("TypeII needs d >= 1 and m >= 1")

    kind = "II"

    def map(self) -> PolyMap:
        return PolyMap(X ** self.d, X ** self.m * Y)

    def to_json(self) -> dict:
        return {"type": "II", "d": self.d, "m": self.m}


@dataclass(frozen=True)
class TypeIII:
    """``(x^d, x^m*(x^n*y + sum a_i x^i))`` with ``a_0 != 0`` and ``a_i = 0`` when ``d | i + m``."""

    d: int
    m: int
    n: int
    a: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(Fraction(c) for c in self.a))
        if self.d < 1 or self.m < 1 or self.n < 1:
            raise InvalidParams("TypeIII needs d, m, n >= 1")
        if len(self.a) != self.n:
            raise InvalidParams(f"TypeIII needs exactly n = {self.n} coefficients a_0..a_(n-1)")
        if self.a[0] == 0:
            raise InvalidParams("TypeIII needs a_0 != 0")
        for i, c in enumerate(self.a):
            if c != 0 and (i + self.m) % self.d == 0:
                raise InvalidParams(f"TypeIII needs a_{i} = 0 since {i} + m is divisible by d")

    kind = "III"

    def h(self) -> UPoly:
        return UPoly(self.a)

    def map(self) -> PolyMap:
        return PolyMap(X ** self.d, X ** self.m * (X ** self.n * Y + self.h()(X)))

    def to_json(self) -> dict:
        return {"type": "III", "d": self.d, "m": self.m, "n": self.n, "a": [str(c) for c in self.a]}


NormalForm = Union[TypeI, TypeII, TypeIII]


def normal_form_from_json(data: dict) -> NormalForm:
    kind = str(data["type"]).upper()
    if kind == "I":
        return TypeI(int(data["d"]))
    if kind == "II":
        return TypeII(int(data["d"]), int(data["m"]))
    if kind == "III":
        return TypeIII(int(data["d"]), int(data["m"]), int(data["n"]),
                       tuple(Fraction(str(c)) for c in data["a"]))
    raise InvalidParams(f"unknown normal form type {data['type']!r}")


# -- semi-monomial shape --------------------------------------------------------


@dataclass(frozen=True)
class SemiMonomial:
    """``a*x^k*y + x^l*g(x)``; ``g == 0`` (and ``l == 0``) when there is no y-free part."""

    a: Fraction
    k: int
    l: int
    g: UPoly

    def poly(self) -> Poly:
        return self.a * X ** self.k * Y + X ** self.l * self.g(X)

    @property
    def y_free_zero(self) -> bool:
        return self.g.is_zero()

    def to_json(self) -> dict:
        return {"a": str(self.a), "k": self.k, "l": self.l, "g": self.g.format("x"),
                "y_free_zero": self.y_free_zero}


def extract_semi_monomial(F2: Poly) -> SemiMonomial:
    if not set(F2.variables()) <= {"x", "y"}:
        raise ShapeMismatch(f"{F2} involves target variables")
    if F2.degree("y") != 1:
        raise ShapeMismatch(f"{F2} has y-degree {F2.degree('y')}, expected 1")
    c0, c1 = F2.coefficients_in("y")
    terms = c1.terms_in(("x", "y"))
    if len(terms) != 1:
        raise ShapeMismatch(f"y-coefficient {c1} is not a monomial in x")
    (k, _), a = next(iter(terms.items()))
    if c0.is_zero():
        return SemiMonomial(a, k, 0, UPoly())
    g = c0.to_upoly("x")
    l = next(i for i, c in enumerate(g.coeffs) if c)
    return SemiMonomial(a, k, l, UPoly(g.coeffs[l:]))


# -- case split ---------------------------------------------------------------


@dataclass(frozen=True)
class SplitResult:
    m: int
    n: int
    h_poly: UPoly
    b_poly: UPoly
    c_poly: UPoly
    gamma1: AutoWord
    gamma2: AutoWord


def _gamma1(a: Fraction, c_poly: UPoly) -> AutoWord:
    """``(u, v) -> (u, (v - c(u))/a)`` as a target word."""
    moves = []
    if a != 1:
        moves.append(Affine(1, 0, 0, 1 / a))
    if not c_poly.is_zero():
        moves.append(TriangularY(-c_poly))
    return AutoWord(tuple(moves))


def _shear_word(q: UPoly) -> AutoWord:
    """``(x, y) -> (x, y - q(x))``."""
    return AutoWord() if q.is_zero() else AutoWord.of(TriangularY(-q))


def split_case(semi: SemiMonomial, d: int) -> SplitResult:
    """Separate ``x^l*g(x)`` into target-shear, source-shear and surviving parts."""
    if semi.k < 1:
        raise ValueError("split_case needs k >= 1; k == 0 is the TypeI branch")
    a, k = semi.a, semi.k
    zero = UPoly()
    if semi.y_free_zero:
        return SplitResult(k, 0, zero, zero, zero, _gamma1(a, zero), AutoWord())
    m = min(k, semi.l)
    n = k - m
    c_coeffs: dict = {}
    h_coeffs: dict = {}
    b_coeffs: dict = {}
    for offset, e in enumerate(semi.g.coeffs):
        if not e:
            continue
        j = semi.l + offset
        i = j - m
        if n == 0:
            if j % d == 0:
                c_coeffs[j // d] = e
            else:
                h_coeffs[i] = e / a
        elif i >= n:
            b_coeffs[i - n] = e / a
        elif j % d == 0:
            c_coeffs[j // d] = e
        else:
            h_coeffs[i] = e / a

    def dense(coeffs: dict) -> UPoly:
        if not coeffs:
            return UPoly()
        return UPoly(coeffs.get(i, 0) for i in range(max(coeffs) + 1))

    h_poly, b_poly, c_poly = dense(h_coeffs), dense(b_coeffs), dense(c_coeffs)
    gamma1 = _gamma1(a, c_poly)
    # n == 0: x^m*y + x^m*h(x) -> x^m*y via y -> y - h(x);  n > 0: only the tail b moves
    gamma2 = _shear_word(h_poly if n == 0 else b_poly)
    return SplitResult(m, n, h_poly, b_poly, c_poly, gamma1, gamma2)


def renormalize_typeiii(m: int, n: int, a: Sequence, d: int) -> NormalForm:
    """Enforce ``a_0 != 0`` by factoring out powers of x; collapses to TypeII when nothing is left.

    Coefficients ``a_i`` with ``d | i + m`` are dropped first: they belong to
    the part removable by a target shear.  That congruence is unchanged by
    the shifts ``m -> m + s, i -> i - s``.
    """
    a = [Fraction(c) for c in a]
    a = a + [Fraction(0)] * (n - len(a))
    while True:
        a = [Fraction(0) if (i + m) % d == 0 else c for i, c in enumerate(a)]
        nonzero = [i for i, c in enumerate(a) if c]
        if not nonzero:
            return TypeII(d, m + n)
        s = nonzero[0]
        if s == 0:
            return TypeIII(d, m, n, tuple(a))
        m, n, a = m + s, n - s, a[s:]


# -- equivalence ----------------------------------------------------------------


def _int_power(r: Fraction, e: int) -> Fraction:
    return r ** e if e >= 0 else (1 / r) ** (-e)


def _bezout(values: Sequence[int]):
    """``(g, coeffs)`` with ``g = gcd(values) = sum coeffs[i]*values[i]``."""
    g, coeffs = 0, []
    for v in values:
        if g == 0:
            g, coeffs = v, [1]
            continue
        # extended Euclid on (g, v)
        old_r, r, old_s, s, old_t, t = g, v, 1, 0, 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        coeffs = [c * old_s for c in coeffs] + [old_t]
        g = old_r
    return g, coeffs


def equivalent_normal_forms(n1: NormalForm, n2: NormalForm) -> bool:
    """Whether diagonal scalings of source and target carry one form to the other.

    For TypeIII the scalings act by ``a_i -> kappa*lam^i*a_i`` with
    ``kappa, lam`` arbitrary nonzero complex numbers.  Fixing ``kappa`` by
    ``a_0`` leaves ``lam^i = r_i`` on the support, which is solvable iff every
    ``r_i`` equals ``R^(i/g)`` where ``g`` is the gcd of the support and
    ``R = lam^g`` is given by a Bezout combination.
    """
    if type(n1) is not type(n2):
        return False
    if isinstance(n1, TypeI):
        return n1.d == n2.d
    if isinstance(n1, TypeII):
        return (n1.d, n1.m) == (n2.d, n2.m)
    if (n1.d, n1.m, n1.n) != (n2.d, n2.m, n2.n):
        return False
    support = [i for i, c in enumerate(n1.a) if c]
    if support != [i for i, c in enumerate(n2.a) if c]:
        return False
    kappa = n2.a[0] / n1.a[0]
    exps = [i for i in support if i > 0]
    if not exps:
        return True
    ratios = {i: n2.a[i] / (kappa * n1.a[i]) for i in exps}
    g, coeffs = _bezout(exps)
    R = Fraction(1)
    for c, i in zip(coeffs, exps):
        R *= _int_power(ratios[i], c)
    return all(ratios[i] == _int_power(R, i // g) for i in exps)


# -- germs and J-curves ---------------------------------------------------------


@dataclass(frozen=True)
class Germ:
    """Monomial germ ``t -> (t^p, c*t^q)``."""

    p: int
    q: int
    c: Fraction = Fraction(1)

    def __post_init__(self):
        if self.p < 1 or self.q < 1 or Fraction(self.c) == 0:
            raise ValueError("germ needs p, q >= 1 and c != 0")


LINE_ONLY = "LineOnly"
BRANCH_AT_ORIGIN = "BranchAtOrigin"
BOUNDED_BRANCH = "BoundedBranch"
BRANCH_AT_INFINITY = "BranchAtInfinity"


def germ_pullback(nf: NormalForm, germ: Germ) -> str:
    """Where the non-line part of the preimage of a germ at the origin goes.

    On the preimage ``x = t^(p/d)``; for TypeII ``y = c*t^q/x^m`` has
    exponent ``e = q - p*m/d``.  For TypeIII the term ``-a_0/x^n`` dominates
    and always escapes.
    """
    if isinstance(nf, TypeI):
        return LINE_ONLY
    if isinstance(nf, TypeIII):
        return BRANCH_AT_INFINITY
    e = Fraction(germ.q) - Fraction(germ.p * nf.m, nf.d)
    if e > 0:
        return BRANCH_AT_ORIGIN
    if e == 0:
        return BOUNDED_BRANCH
    return BRANCH_AT_INFINITY


@dataclass(frozen=True)
class JCurveReport:
    ratio_equal: list
    component_not_line: list
    verdict: str

    def to_json(self) -> dict:
        return {"ratio_equal": self.ratio_equal, "component_not_line": self.component_not_line,
                "verdict": self.verdict}


def _ratios_equal(degrees) -> bool:
    p0, q0 = degrees[0]
    return all(p * q0 == p0 * q for p, q in degrees[1:])


def _not_line(p: UPoly, q: UPoly) -> bool:
    """Sufficient test that a parametrized curve is not an embedded line."""
    if not p.derivative().gcd(q.derivative()).degree() < 1:
        return True
    if p.degree() < 1 or q.degree() < 1:
        return False
    T = Poly.var("u")
    implicit = resultant(p(T) - X, q(T) - Y, "u")
    curve = squarefree_part(implicit)
    return not rectify_coordinate(curve).ok


def jcurve_ratio_check(components: Sequence, probes: Sequence[AutoWord] = ()) -> JCurveReport:
    """Degree-ratio condition under the identity and each probe, plus the not-a-line condition."""
    for p, q in components:
        if p.degree() < 1 and q.degree() < 1:
            raise ValueError("J-curve components must be nonconstant")
    ratio_equal = []
    for probe in (AutoWord(),) + tuple(probes):
        degrees = []
        for p, q in components:
            P1, P2 = probe.components
            sub = {"x": p.to_poly("x"), "y": q.to_poly("x")}
            degrees.append((P1.subs(sub).total_degree(), P2.subs(sub).total_degree()))
        ratio_equal.append(_ratios_equal(degrees))
    not_line = [_not_line(p, q) for p, q in components]
    verdict = "CandidateJCurve" if all(ratio_equal) and all(not_line) else "NotJCurve"
    return JCurveReport(ratio_equal, not_line, verdict)


# -- the pipeline ---------------------------------------------------------------


@dataclass
class NormalizationTrace:
    """Certificate: ``post o f o pre == final_form.map()`` with

    ``post = gamma1 o shift o alpha_target`` (target words) and
    ``pre = beta_source o gamma2`` (source words).  ``shift`` is
    ``(u, v) -> ((u - shift_c)/scale, v)``.
    """

    d: int
    alpha_target: AutoWord
    beta_source: AutoWord
    shift_c: Fraction
    scale: Fraction
    semi: SemiMonomial
    k: int
    l: int
    m: int
    n: int
    h_poly: UPoly
    b_poly: UPoly
    c_poly: UPoly
    gamma1: AutoWord
    gamma2: AutoWord
    final_form: NormalForm
    branch_curve: Poly
    notes: list = field(default_factory=list)

    def shift_word(self) -> AutoWord:
        return AutoWord.of(Affine(1 / self.scale, 0, 0, 1, -self.shift_c / self.scale, 0))

    def post_word(self) -> AutoWord:
        return compose(self.gamma1, compose(self.shift_word(), self.alpha_target))

    def pre_word(self) -> AutoWord:
        return compose(self.beta_source, self.gamma2)

    def replay(self, f: PolyMap) -> PolyMap:
        return apply_to_map(self.pre_word(), f, self.post_word())

    def verify(self, f: PolyMap) -> bool:
        """Exact check of ``post o f o pre == final_form.map()``.

        Evaluated as ``f == post^-1 o final o pre^-1``: the words are exactly
        invertible, and this side never expands ``f`` through a word, whose
        intermediate degree is the product of both.
        """
        want = apply_to_map(invert(self.pre_word()), self.final_form.map(), invert(self.post_word()))
        return want.f1 == f.f1 and want.f2 == f.f2

    def distinguished_point(self):
        """Target point sent to the origin of the normal form."""
        return self.target_point(Fraction(0), Fraction(0))

    def target_point(self, u, v):
        """Original target coordinates of the normal-form target point ``(u, v)``."""
        back = invert(self.post_word()).components
        env = {"x": Fraction(u), "y": Fraction(v)}
        return (back[0].evaluate(env), back[1].evaluate(env))

    def to_json(self) -> dict:
        return {
            "final_form": self.final_form.to_json(),
            "d": self.d,
            "alpha_target": self.alpha_target.to_json(),
            "beta_source": self.beta_source.to_json(),
            "shift_c": str(self.shift_c),
            "scale": str(self.scale),
            "semi_monomial": self.semi.to_json(),
            "k": self.k, "l": self.l, "m": self.m, "n": self.n,
            "h_poly": self.h_poly.format("x"),
            "b_poly": self.b_poly.format("x"),
            "c_poly": self.c_poly.format("u"),
            "gamma1": self.gamma1.to_json(),
            "gamma2": self.gamma2.to_json(),
            "branch_curve": str(self.branch_curve),
            "notes": list(self.notes),
        }


def normalize_map(f: PolyMap, seed: int = 0) -> NormalizationTrace:
    """Reduce ``f`` to its normal form and return the replayable certificate."""
    check_dominating(f)
    locus = branch_locus(f, seed)
    if locus.empty:
        raise NotInClass(f"branch locus of {f} is empty, not a line")
    C = locus.defining
    rect = rectify_coordinate(C.rename({"u": "x", "v": "y"}))
    if not rect.ok:
        raise NotInClass(f"branch locus {C} is not a rectifiable line: {rect.witness['reason']}")
    alpha_target = invert(rect.alpha)
    bar = apply_to_map(AutoWord(), f, alpha_target)
    try:
        cert = lemma1_normalize(bar.f1, seed)
    except RectifyFailed as exc:
        raise NotInClass(f"first component after rectifying the branch locus: {exc}") from exc
    phi_hat = cert.phi_hat
    d = phi_hat.degree()
    beta_source = cert.alpha
    # phi_hat may be lam*(x + e)^d + c: the translation x -> x - e centres it;
    # for d == 1 this also removes c, keeping the branch locus on u = 0
    e = phi_hat[d - 1] / (d * phi_hat.lc())
    if e:
        centre = AutoWord.of(Affine.translate(-e))
        beta_source = compose(beta_source, centre)
        phi_hat = phi_hat.compose(UPoly((-e, 1)))
    if any(phi_hat[i] for i in range(1, d)):
        raise Lemma1MiddleCoefficients(f"straightened first component {cert.phi_hat.format('x')} "
                                       "is not of the form lam*(x + e)^d + c")
    scale, shift_c = phi_hat.lc(), phi_hat[0]
    shifted_word = AutoWord.of(Affine(1 / scale, 0, 0, 1, -shift_c / scale, 0))
    tilde = apply_to_map(beta_source, f, compose(shifted_word, alpha_target))
    if tilde.f1 != X ** d:
        raise AssertionError(f"first component {tilde.f1} is not x^{d}")
    semi = extract_semi_monomial(tilde.f2)
    notes = []
    zero = UPoly()
    if semi.k == 0:
        tail = semi.g.shift(semi.l) if not semi.y_free_zero else zero
        gamma2 = _shear_word(UPoly(c / semi.a for c in tail.coeffs))
        gamma1 = _gamma1(semi.a, zero)
        notes.append("k = 0: source shear y -> y - x^l*g(x)/a and target scaling v -> v/a; "
                     "the single substitution (x, y/a - a*x^l*g(x)) does not give (x^d, y)")
        trace = NormalizationTrace(d, alpha_target, beta_source, shift_c, scale, semi, 0,
                                   semi.l, 0, 0, zero, zero, zero, gamma1, gamma2, TypeI(d), C,
                                   notes)
    else:
        split = split_case(semi, d)
        if split.n == 0:
            final = TypeII(d, split.m)
        else:
            final = renormalize_typeiii(split.m, split.n, split.h_poly.coeffs, d)
        trace = NormalizationTrace(d, alpha_target, beta_source, shift_c, scale, semi, semi.k,
                                   semi.l, split.m, split.n, split.h_poly, split.b_poly,
                                   split.c_poly, split.gamma1, split.gamma2, final, C, notes)
    if not trace.verify(f):
        raise ReplayMismatch(f"replay of the normalization of {f} does not give {final_map_str(trace)}")
    return trace


def final_map_str(trace: NormalizationTrace) -> str:
    return str(trace.final_form.map())


def fiber_contains_curve(f: PolyMap, point) -> bool:
    """``gcd(f1 - a, f2 - b)`` is nonconstant: a whole curve maps to ``point``."""
    a, b = point
    P, Q = f.f1 - a, f.f2 - b
    if P.is_zero() or Q.is_zero():
        return True
    return not gcd(P, Q).is_constant()
