"""Exact polynomial arithmetic over the rationals.

Two polynomial types live here:

* :class:`Poly` -- a sparse polynomial in the source coordinates ``x, y`` and
  the target coordinates ``u, v``.  Plane polynomials only ever use one of the
  two pairs; elimination results may mix them (``R(x, u, v)``).  Storage and
  the heavy kernels (multiplication, composition, gcd, resultants) are FLINT's
  ``fmpq_mpoly``.
* :class:`UPoly` -- a dense univariate polynomial with ``Fraction``
  coefficients, used for the shears of triangular moves, outer factors of
  decompositions and fiber eliminants.

Coefficients are always exact.  The only floating point code is
:func:`up_roots_numeric` and :func:`refine_roots`, which work from exact
coefficients and never feed back into symbolic results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import flint
import mpmath
import numpy as np

from .errors import DegenerateElimination, NumericUnstable

GENS = ("x", "y", "u", "v")
SOURCE = ("x", "y")
TARGET = ("u", "v")

_CTX = flint.fmpq_mpoly_ctx.get(GENS, "lex")
_INDEX = {name: i for i, name in enumerate(GENS)}

CLUSTER_TOL = 1e-6
NEWTON_STEPS = 20


def to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, flint.fmpq):
        return Fraction(int(c.p), int(c.q))
    if isinstance(c, flint.fmpz):
        return Fraction(int(c))
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


def _fmpq(c) -> flint.fmpq:
    if isinstance(c, flint.fmpq):
        return c
    c = to_fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


def grlex_key(exps: Sequence[int]):
    """Sort key for graded lexicographic order with x > y > u > v."""
    return (sum(exps), tuple(exps))


def _var_index(var: str) -> int:
    try:
        return _INDEX[var]
    except KeyError:
        raise ValueError(f"unknown variable {var!r}; expected one of {GENS}") from None


class Poly:
    """Sparse polynomial over Q in the variables ``x, y, u, v``.

    Instances are immutable values; arithmetic accepts ints and Fractions on
    either side.

    >>> x, y = Poly.var("x"), Poly.var("y")
    >>> (x + y) * (x - y)
    Poly('x^2 - y^2')
    """

    __slots__ = ("_p",)

    def __init__(self, value=0):
        if isinstance(value, Poly):
            value = value._p
        elif not isinstance(value, flint.fmpq_mpoly):
            value = _CTX.constant(_fmpq(value))
        self._p = value

    # -- construction -----------------------------------------------------

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls(_CTX.gen(_var_index(name)))

    @classmethod
    def from_terms(cls, terms: Mapping[tuple, object], gens: Sequence[str] = SOURCE) -> "Poly":
        """Build from ``{exponents: coefficient}`` with exponents over ``gens``."""
        idx = [_var_index(g) for g in gens]
        full = {}
        for exps, c in terms.items():
            if len(exps) != len(idx):
                raise ValueError(f"exponent {exps} does not match generators {tuple(gens)}")
            key = [0, 0, 0, 0]
            for i, e in zip(idx, exps):
                if e < 0:
                    raise ValueError("negative exponent")
                key[i] += e
            key = tuple(key)
            c = _fmpq(c)
            if c != 0:
                full[key] = full.get(key, flint.fmpq(0)) + c
        return cls(_CTX.from_dict({k: c for k, c in full.items() if c != 0}))

    # -- inspection -------------------------------------------------------

    def _monoms(self) -> list:
        return [tuple(int(e) for e in m) for m in self._p.monoms()]

    @property
    def terms(self) -> dict:
        """``{(i, j, k, l): Fraction}`` for the monomial ``x^i y^j u^k v^l``."""
        return {tuple(m): to_fraction(c) for m, c in zip(self._monoms(), self._p.coeffs())}

    def terms_in(self, gens: Sequence[str] = SOURCE) -> dict:
        """Terms keyed by exponents over ``gens`` only; other variables must be absent."""
        idx = [_var_index(g) for g in gens]
        out = {}
        for m, c in self.terms.items():
            if any(m[i] for i in range(4) if i not in idx):
                raise ValueError(f"{self} involves variables outside {tuple(gens)}")
            out[tuple(m[i] for i in idx)] = c
        return out

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def is_constant(self) -> bool:
        return self._p.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0, 0, 0, 0), Fraction(0))

    def degree(self, var: str) -> int:
        """Degree in ``var``; the zero polynomial has degree -1."""
        if self.is_zero():
            return -1
        return max(m[_var_index(var)] for m in self._monoms())

    def total_degree(self) -> int:
        if self.is_zero():
            return -1
        return max(sum(m) for m in self._monoms())

    def variables(self) -> tuple:
        used = set()
        for m in self._monoms():
            used.update(i for i, e in enumerate(m) if e)
        return tuple(GENS[i] for i in sorted(used))

    def leading_term(self):
        """``(exponents, coefficient)`` of the graded-lex leading term."""
        if self.is_zero():
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms.items(), key=lambda kv: grlex_key(kv[0]))

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def homogeneous_part(self, degree: int) -> "Poly":
        return Poly(_CTX.from_dict({m: c for m, c in zip(self._monoms(), self._p.coeffs())
                                    if sum(m) == degree}))

    def coefficients_in(self, var: str) -> list:
        """Coefficients as a polynomial in ``var``: ``self == sum(c[k] * var**k)``."""
        i = _var_index(var)
        buckets: dict = {}
        for m, c in zip(self._monoms(), self._p.coeffs()):
            k = m[i]
            stripped = list(m)
            stripped[i] = 0
            buckets.setdefault(k, {})[tuple(stripped)] = c
        if not buckets:
            return []
        return [Poly(_CTX.from_dict(buckets.get(k, {}))) for k in range(max(buckets) + 1)]

    def to_upoly(self, var: str) -> "UPoly":
        others = [g for g in GENS if g != var]
        if any(self.degree(g) > 0 for g in others):
            raise ValueError(f"{self} is not univariate in {var}")
        coeffs = [Fraction(0)] * (self.degree(var) + 1)
        i = _var_index(var)
        for m, c in self.terms.items():
            coeffs[m[i]] = c
        return UPoly(coeffs)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Poly):
            return other._p
        if isinstance(other, (int, Fraction, flint.fmpq)):
            return _CTX.constant(_fmpq(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Poly(self._p + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Poly(self._p - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Poly(o - self._p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is None else Poly(self._p * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero scalar or exact division by a polynomial."""
        if isinstance(other, (int, Fraction, flint.fmpq)):
            c = to_fraction(other)
            if c == 0:
                raise ZeroDivisionError("division by zero")
            return Poly(self._p * _fmpq(1 / c))
        if isinstance(other, Poly):
            return self.exact_div(other)
        return NotImplemented

    def __neg__(self):
        return Poly(-self._p)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("polynomial powers must be integers")
        if n < 0:
            raise ValueError("negative exponent")
        return Poly(self._p ** n)

    def exact_div(self, other: "Poly") -> "Poly":
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        q, r = divmod(self._p, other._p)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return Poly(q)

    def divides(self, other: "Poly") -> bool:
        """True when ``self`` divides ``other`` exactly."""
        if self.is_zero():
            return other.is_zero()
        return divmod(other._p, self._p)[1].is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._p == o

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __bool__(self):
        return not self.is_zero()

    # -- calculus and substitution ---------------------------------------

    def derivative(self, var: str) -> "Poly":
        _var_index(var)
        return Poly(self._p.derivative(var))

    def subs(self, mapping: Mapping[str, object]) -> "Poly":
        """Simultaneous substitution ``var <- mapping[var]`` (polynomials or scalars)."""
        args = []
        for g in GENS:
            if g in mapping:
                val = mapping[g]
                args.append(val._p if isinstance(val, Poly) else _CTX.constant(_fmpq(val)))
            else:
                args.append(_CTX.gen(_INDEX[g]))
        for g in mapping:
            _var_index(g)
        return Poly(self._p.compose(*args))

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        """Rename variables, e.g. ``{"u": "x", "v": "y"}``."""
        return self.subs({a: Poly.var(b) for a, b in mapping.items()})

    def evaluate(self, point: Mapping[str, object]):
        """Evaluate at numbers (exact for rationals, generic for complex/mpmath values)."""
        total = 0
        cache: dict = {}
        for m, c in self.terms.items():
            term = c
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = point[GENS[i]] ** e
                    term = term * cache[key]
            total = total + term
        return total

    def evaluate_mp(self, point: Mapping[str, object]):
        """Evaluate in mpmath at the current working precision."""
        total = mpmath.mpc(0)
        cache: dict = {}
        for m, c in self.terms.items():
            term = mpmath.mpf(c.numerator) / c.denominator
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = mpmath.power(point[GENS[i]], e)
                    term = term * cache[key]
            total += term
        return total

    def normalized(self) -> "Poly":
        """Scale so the graded-lex leading coefficient is 1 (zero stays zero)."""
        if self.is_zero():
            return self
        return self / self.leading_coefficient()

    def __repr__(self):
        return f"Poly({str(self)!r})"

    def __str__(self):
        from .textio import format_poly

        return format_poly(self)


def poly_var(name: str) -> Poly:
    return Poly.var(name)


def derivative(P: Poly, var: str) -> Poly:
    return P.derivative(var)


# -- elimination ----------------------------------------------------------


def resultant(P: Poly, Q: Poly, var: str) -> Poly:
    """Resultant of ``P`` and ``Q`` eliminating ``var``.

    Uses the Sylvester convention: when ``deg_var P == 0`` the result is
    ``P ** deg_var Q`` (and symmetrically).
    """
    if P.degree(var) <= 0 and Q.degree(var) <= 0:
        raise DegenerateElimination(f"both inputs are constant in {var}")
    return Poly(P._p.resultant(Q._p, var))


def sylvester_matrix(P: Poly, Q: Poly, var: str) -> list:
    """Sylvester matrix of ``P`` and ``Q`` in ``var`` (rows of ``Poly`` entries)."""
    p = P.coefficients_in(var)[::-1]
    q = Q.coefficients_in(var)[::-1]
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    zero = Poly(0)
    rows = []
    for i in range(n):
        rows.append([zero] * i + p + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + q + [zero] * (size - n - 1 - i))
    return rows


def bareiss_det(matrix: list) -> Poly:
    """Fraction-free determinant over a polynomial ring (Bareiss elimination)."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return Poly(1)
    sign = 1
    prev = Poly(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return Poly(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def sylvester_resultant(P: Poly, Q: Poly, var: str) -> Poly:
    """Resultant as a Sylvester determinant computed by Bareiss elimination.

    Pure-Python reference route, independent of :func:`resultant`.
    """
    if P.degree(var) <= 0 and Q.degree(var) <= 0:
        raise DegenerateElimination(f"both inputs are constant in {var}")
    if P.is_zero() or Q.is_zero():
        return Poly(0)
    return bareiss_det(sylvester_matrix(P, Q, var))


def gcd(P: Poly, Q: Poly) -> Poly:
    """Greatest common divisor, scaled to graded-lex leading coefficient 1."""
    if P.is_zero() and Q.is_zero():
        return Poly(0)
    return Poly(P._p.gcd(Q._p)).normalized()


def squarefree_part(P: Poly) -> Poly:
    """Product of the distinct irreducible factors of ``P``, monic in graded-lex order."""
    if P.is_zero():
        raise ValueError("square-free part of the zero polynomial")
    g = P
    for var in P.variables():
        g = gcd(g, P.derivative(var))
    return P.exact_div(g).normalized() if P.variables() else Poly(1)


def is_squarefree(P: Poly) -> bool:
    return squarefree_part(P).total_degree() == P.total_degree()


# -- univariate -----------------------------------------------------------


class UPoly:
    """Dense univariate polynomial with Fraction coefficients (lowest degree first)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [to_fraction(c) if not isinstance(c, Fraction) else c for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def t(cls) -> "UPoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, c=1) -> "UPoly":
        return cls([0] * k + [c])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def to_poly(self, var: str) -> Poly:
        i = _var_index(var)
        terms = {}
        for k, c in enumerate(self.coeffs):
            if c:
                key = [0, 0, 0, 0]
                key[i] = k
                terms[tuple(key)] = c
        return Poly.from_terms(terms, GENS)

    def _lift(self, other):
        if isinstance(other, UPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UPoly((other,))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return UPoly(self[k] + o[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return UPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result, base = UPoly((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._lift(other)
        return NotImplemented if o is None else self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def compose(self, inner: "UPoly") -> "UPoly":
        return self(inner) if not self.is_zero() else UPoly()

    def derivative(self) -> "UPoly":
        return UPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def monic(self) -> "UPoly":
        return self if self.is_zero() else UPoly(c / self.lc() for c in self.coeffs)

    def shift(self, k: int) -> "UPoly":
        """Multiply by ``t**k``."""
        return UPoly([0] * k + list(self.coeffs)) if self.coeffs else UPoly()

    def __divmod__(self, other: "UPoly"):
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree()
        q = [Fraction(0)] * max(len(rem) - dq, 0)
        inv = 1 / other.lc()
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv
            if c:
                q[k - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return UPoly(q), UPoly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def gcd(self, other: "UPoly") -> "UPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree_factors(self) -> list:
        """Yun's algorithm: ``[(P_k, k)]`` with ``self ~ prod P_k**k``, each P_k square-free."""
        if self.degree() < 1:
            return []
        f = self.monic()
        df = f.derivative()
        a = f.gcd(df)
        b, c = f // a, df // a
        out = []
        k = 1
        while b.degree() >= 1:
            d = c - b.derivative()
            g = b.gcd(d)
            if g.degree() >= 1:
                out.append((g, k))
            b, c = b // g, d // g
            k += 1
        return out

    def __repr__(self):
        return f"UPoly({self.format('t')!r})"

    def format(self, var: str = "t") -> str:
        from .textio import format_terms

        return format_terms({(k,): c for k, c in enumerate(self.coeffs) if c}, (var,))


def up_decompose(H: UPoly) -> list:
    """All nontrivial decompositions ``H = phi(rho)`` with ``deg phi, deg rho >= 2``.

    ``rho`` is normalized monic with zero constant term, which removes the
    affine ambiguity ``phi(rho) = phi(a*s + b)((rho - b)/a)``; with that
    normalization there is at most one decomposition per degree of ``rho``.
    The list is ordered by increasing ``deg phi``.
    """
    n = H.degree()
    if n < 1:
        raise ValueError("decomposition needs a nonconstant polynomial")
    found = []
    for r in range(2, n // 2 + 1):
        if n % r:
            continue
        s = n // r
        rho = _approximate_root(H.monic(), r, s)
        phi = _rho_adic_digits(H, rho, r, s)
        if phi is not None:
            found.append((phi, rho))
    return found


def _approximate_root(Hm: UPoly, r: int, s: int) -> UPoly:
    """Monic rho of degree s, zero constant term, matching ``Hm`` in the top s coefficients of rho**r."""
    n = r * s
    rho = UPoly.monomial(s)
    for k in range(1, s):
        power = rho ** r
        c = (Hm[n - k] - power[n - k]) / r
        rho = rho + UPoly.monomial(s - k, c)
    return rho


def _rho_adic_digits(H: UPoly, rho: UPoly, r: int, s: int):
    """Constant digits ``b_j`` with ``H = sum b_j rho**j``, or None when they do not exist."""
    rem = H
    digits = [Fraction(0)] * (r + 1)
    powers = [UPoly((1,))]
    for _ in range(r):
        powers.append(powers[-1] * rho)
    for j in range(r, -1, -1):
        if rem.degree() > j * s:
            return None
        b = rem[j * s]
        digits[j] = b
        if b:
            rem = rem - powers[j] * b
    if not rem.is_zero():
        return None
    return UPoly(digits)


# -- numerics -------------------------------------------------------------


@dataclass(frozen=True)
class RootReport:
    """Numeric roots (with multiplicity) and the worst relative residual."""

    roots: list
    residual: float

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)


def _scaled_float_coeffs(P: UPoly) -> np.ndarray:
    big = max(abs(c) for c in P.coeffs)
    scaled = np.array([float(c / big) for c in P.coeffs], dtype=float)
    if scaled[-1] == 0.0 or not np.all(np.isfinite(scaled)):
        raise NumericUnstable(f"leading coefficient of {P.format()} underflows in double precision")
    return scaled


def _relative_residual(coeffs: np.ndarray, z: complex) -> float:
    num = np.polyval(coeffs[::-1], z)
    den = np.polyval(np.abs(coeffs[::-1]), abs(z))
    return abs(num) / den if den else abs(num)


def _simple_roots(P: UPoly) -> list:
    coeffs = _scaled_float_coeffs(P)
    if P.degree() == 1:
        return [complex(-coeffs[0] / coeffs[1])]
    roots = np.roots(coeffs[::-1])
    dcoeffs = np.array([k * c for k, c in enumerate(coeffs)][1:])
    polished = []
    for z in roots:
        z = complex(z)
        for _ in range(NEWTON_STEPS):
            d = np.polyval(dcoeffs[::-1], z)
            if d == 0:
                break
            step = np.polyval(coeffs[::-1], z) / d
            z -= step
            if abs(step) <= 1e-16 * max(1.0, abs(z)):
                break
        polished.append(complex(z))
    return polished


def up_roots_numeric(H: UPoly) -> RootReport:
    """All complex roots of ``H`` with multiplicity, in double precision.

    The exact square-free decomposition is taken first so every numeric root
    problem has simple roots; each square-free factor is solved through the
    eigenvalues of its companion matrix and Newton-polished (at most 20 steps).
    """
    if H.degree() < 1:
        raise ValueError("root finding needs a nonconstant polynomial")
    roots = []
    residual = 0.0
    for factor, mult in H.squarefree_factors():
        coeffs = _scaled_float_coeffs(factor)
        for z in _simple_roots(factor):
            residual = max(residual, _relative_residual(coeffs, z))
            roots.extend([z] * mult)
    return RootReport(roots, residual)


def refine_roots(P: UPoly, dps: int = 60) -> list:
    """Distinct complex roots of ``P`` to about ``dps`` digits (mpmath values).

    Uses FLINT's certified isolation on the exact square-free part, so
    clustered or very large roots are separated reliably.
    """
    sq = UPoly((1,))
    for factor, _ in P.squarefree_factors():
        sq = sq * factor
    if sq.degree() < 1:
        return []
    fp = flint.fmpq_poly([_fmpq(c) for c in sq.coeffs])
    old = flint.ctx.prec
    flint.ctx.dps = dps + 10
    try:
        balls = [z for z, _ in fp.complex_roots()]
    finally:
        flint.ctx.prec = old
    with mpmath.workdps(dps):
        return [mpmath.mpc(mpmath.mpf(z.real.mid().str(dps + 5, radius=False)),
                           mpmath.mpf(z.imag.mid().str(dps + 5, radius=False))) for z in balls]


def close(a, b, tol: float = CLUSTER_TOL) -> bool:
    """Absolute closeness used for root clustering."""
    return abs(a - b) < tol


def close_rel(a, b, tol: float) -> bool:
    """Closeness relative to the magnitude of the larger value (absolute below 1)."""
    return abs(a - b) < tol * max(1, abs(a), abs(b))


def cluster(values: Sequence, tol: float = CLUSTER_TOL) -> list:
    """Greedy clustering of complex scalars; returns one representative per cluster."""
    reps: list = []
    for z in values:
        if not any(close(z, w, tol) for w in reps):
            reps.append(z)
    return reps


def divisors(n: int) -> list:
    return [d for d in range(1, n + 1) if n % d == 0]


def lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def interpolate(xs: Sequence, ys: Sequence) -> UPoly:
    """Exact interpolating polynomial through ``(xs[i], ys[i])`` (Newton divided differences)."""
    xs = [to_fraction(a) for a in xs]
    coef = [to_fraction(b) for b in ys]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    result = UPoly((coef[-1],)) if n else UPoly()
    for i in range(n - 2, -1, -1):
        result = result * UPoly((-xs[i], 1)) + coef[i]
    return result


def rational_roots(P: UPoly) -> list:
    """Distinct rational roots of ``P``."""
    if P.degree() < 1:
        return []
    fp = flint.fmpq_poly([_fmpq(c) for c in P.coeffs])
    return sorted(to_fraction(r) for r, _ in fp.roots())
