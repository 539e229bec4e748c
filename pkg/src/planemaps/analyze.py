"""Map-level analysis: Jacobian, geometric degree, fibers and the branched value set.

Elimination always runs in sheared source coordinates ``w = x + t*y`` chosen
so that both equations have constant leading coefficient in ``y``.  Then the
resultant ``R(w) = Res_y(f1 - a, f2 - b)`` vanishes exactly at the
``w``-values of the fiber over ``(a, b)``, with the intersection
multiplicities as root multiplicities.  Over the bivariate target the same
resultant ``R(w, u, v)`` has degree ``deg_f`` in ``w``; its leading
coefficient cuts out the non-properness set and its discriminant the
critical values (plus projection artifacts, removed by comparing two
shears).

Target curves are never eliminated in full.  The locus is recovered from
vertical slices ``u = u0``: each slice is a univariate problem in ``v`` and
the coefficients of the monic defining polynomial are interpolated in ``u``
(after a generic linear change of target coordinates making the curve monic
in ``v``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import flint
import mpmath

from .automorph import jacobian
from .errors import DegenerateMap, NumericUnstable
from .maps import PolyMap
from .poly import (CLUSTER_TOL, Poly, UPoly, _fmpq, close, close_rel, gcd, interpolate, rational_roots,
                   refine_roots, resultant, squarefree_part, to_fraction)

X = Poly.var("x")
Y = Poly.var("y")
U = Poly.var("u")
V = Poly.var("v")

DPS = 60
TARGET_RANGE = 10 ** 4
# projection directions away from small slopes: fibers of maps built from
# small-integer words often contain point pairs aligned along those
_SHEARS = (7, -11, 13, -17, 19, -23, 29, -31, 37, -41, 43, -47)


@dataclass(frozen=True)
class CurveSpec:
    """Square-free ``defining(u, v)``; a nonzero constant means the empty curve."""

    defining: Poly
    evidence: dict = field(default_factory=dict, compare=False)

    @property
    def empty(self) -> bool:
        return self.defining.is_constant()

    @classmethod
    def empty_curve(cls, **evidence) -> "CurveSpec":
        return cls(Poly(1), dict(evidence))

    def contains(self, point) -> bool:
        return self.defining.evaluate({"u": Fraction(point[0]), "v": Fraction(point[1])}) == 0


@dataclass(frozen=True)
class FiberSolution:
    points: list
    count_distinct: int
    residual_bound: float
    infinite: bool


def jacobian_det(f: PolyMap) -> Poly:
    return jacobian(f.f1, f.f2)


def check_dominating(f: PolyMap) -> Poly:
    J = jacobian_det(f)
    if J.is_zero():
        raise DegenerateMap(f"Jacobian determinant of {f} vanishes identically")
    return J


# -- shears -------------------------------------------------------------------


def _top_at(P: Poly, t) -> Fraction:
    top = P.homogeneous_part(P.total_degree())
    return top.evaluate({"x": Fraction(-t), "y": Fraction(1), "u": Fraction(0), "v": Fraction(0)})


def good_shears(polys, count: int, skip=()):
    """Shear parameters ``t`` for which every polynomial has constant leading coefficient in y."""
    out = []
    for t in _SHEARS:
        if t in skip:
            continue
        if all(_top_at(P, t) != 0 for P in polys if not P.is_constant()):
            out.append(t)
            if len(out) == count:
                return out
    raise AssertionError("no admissible shear found")


def shear(P: Poly, t) -> Poly:
    """``P(w - t*y, y)`` written with ``w`` in the slot of ``x``."""
    return P if t == 0 else P.subs({"x": X - t * Y})


def _eliminant(P: Poly, Q: Poly, t) -> Poly:
    return resultant(shear(P, t), shear(Q, t), "y")


# -- fibers -------------------------------------------------------------------


def _relative_residual(P: Poly, x, y) -> float:
    den = mpmath.mpf(0)
    ax, ay = abs(x), abs(y)
    val = mpmath.mpc(0)
    for (i, j, _, _), c in P.terms.items():
        cf = mpmath.mpf(c.numerator) / c.denominator
        val += cf * x ** i * y ** j
        den += abs(cf) * ax ** i * ay ** j
    return float(abs(val) / den) if den else float(abs(val))


def _cluster_points(points, tol=CLUSTER_TOL):
    reps = []
    for p in points:
        if not any(close(p[0], q[0], tol) and close(p[1], q[1], tol) for q in reps):
            reps.append(p)
    return reps


def solve_fiber(f: PolyMap, target) -> FiberSolution:
    """Numeric fiber of ``f`` over a rational target point.

    A common factor of ``f1 - a`` and ``f2 - b`` means a whole curve maps to
    the target (``infinite`` is set); the isolated points are then solved
    from the cofactors and points on that curve are discarded.
    """
    a, b = Fraction(target[0]), Fraction(target[1])
    P, Q = f.f1 - a, f.f2 - b
    if P.is_zero() or Q.is_zero():
        return FiberSolution([], 0, 0.0, True)
    g = gcd(P, Q)
    infinite = not g.is_constant()
    if infinite:
        P, Q = P.exact_div(g), Q.exact_div(g)
    if P.is_constant() or Q.is_constant():
        return FiberSolution([], 0, 0.0, infinite)
    t1, t2, t3 = good_shears([P, Q], 3)
    elim = [_eliminant(P, Q, t).to_upoly("x") for t in (t1, t2, t3)]
    if any(E.degree() < 1 for E in elim):
        return FiberSolution([], 0, 0.0, infinite)
    with mpmath.workdps(DPS):
        r1, r2, r3 = (refine_roots(E, DPS) for E in elim)
        candidates = []
        for w1 in r1:
            for w2 in r2:
                y = (w1 - w2) / (t1 - t2)
                x = w1 - t1 * y
                w3 = x + t3 * y
                if not any(close_rel(w3, z, 1e-20) for z in r3):
                    continue
                res = max(_relative_residual(P, x, y), _relative_residual(Q, x, y))
                if res >= 1e-6:
                    continue
                if infinite and _relative_residual(g, x, y) < 1e-20:
                    continue
                candidates.append(((x, y), res))
        points = _cluster_points([p for p, _ in candidates])
        residual = max((r for _, r in candidates), default=0.0)
        out = [(complex(x), complex(y)) for x, y in points]
    return FiberSolution(out, len(out), residual, infinite)


def fiber_count_exact(f: PolyMap, target) -> Optional[int]:
    """Distinct fiber points by exact elimination, or None for an infinite fiber.

    The count is the number of distinct values of a projection ``x + t*y``
    on the fiber, maximized over three shears.
    """
    a, b = Fraction(target[0]), Fraction(target[1])
    P, Q = f.f1 - a, f.f2 - b
    if P.is_zero() or Q.is_zero() or not gcd(P, Q).is_constant():
        return None
    if P.is_constant() or Q.is_constant():
        return 0
    best = 0
    for t in good_shears([P, Q], 3):
        E = _eliminant(P, Q, t)
        best = max(best, squarefree_part(E).total_degree() if not E.is_constant() else 0)
    return best


def random_target(rng: random.Random, avoid=()):
    """Integer target in ``[-10^4, 10^4]^2`` off the given curves."""
    for _ in range(100):
        pt = (Fraction(rng.randint(-TARGET_RANGE, TARGET_RANGE)),
              Fraction(rng.randint(-TARGET_RANGE, TARGET_RANGE)))
        if all(C.evaluate({"u": pt[0], "v": pt[1]}) != 0 for C in avoid):
            return pt
    raise AssertionError("could not sample a generic target")


@lru_cache(maxsize=512)
def _geometric_degree(f1: Poly, f2: Poly, seed: int) -> int:
    f = PolyMap(f1, f2)
    check_dominating(f)
    rng = random.Random(seed)
    for _ in range(10):
        t1, t2 = random_target(rng), random_target(rng)
        n1, n2 = fiber_count_exact(f, t1), fiber_count_exact(f, t2)
        if n1 is None or n1 != n2:
            continue
        if solve_fiber(f, t1).count_distinct != n1:
            continue
        return n1
    raise NumericUnstable(f"geometric degree of {f} did not stabilize")


def geometric_degree(f: PolyMap, seed: int = 0) -> int:
    """Number of points in a generic fiber, cross-checked at two random targets."""
    return _geometric_degree(f.f1, f.f2, seed)


# -- branch locus by slicing --------------------------------------------------


@dataclass
class _Slice:
    u0: Fraction
    G: list          # sheared resultants G_t(x, v), one per projection
    nonproper: UPoly
    critical: UPoly


def _monic_sqf(P: Poly) -> UPoly:
    if P.is_zero():
        raise AssertionError("zero slice polynomial")
    if P.is_constant():
        return UPoly((1,))
    U1 = P.to_upoly("v")
    out = UPoly((1,))
    for factor, _ in U1.squarefree_factors():
        out = out * factor
    return out.monic()


def _discriminant_x(G: Poly) -> Poly:
    return resultant(G, G.derivative("x"), "x")


def _grid_values(count: int) -> list:
    return [Fraction((n + 1) // 2 * (1 if n % 2 else -1)) for n in range(count)]


def _y_slices(P: Poly) -> list:
    """Coefficients of ``P`` in y as univariate polynomials in x, lowest first."""
    return [c.to_upoly("x") for c in P.coefficients_in("y")]


def _parametric_resultant(p_y, q_y) -> UPoly:
    """``Res_y(p, q - v)`` as a polynomial in v.

    Equals ``lc(p)^deg(q) * (-1)^deg(p) * chi(v)`` with ``chi`` the
    characteristic polynomial of multiplication by ``q`` on ``Q[y]/(p)``.
    """
    dp, dq = p_y.degree(), q_y.degree()
    y = flint.fmpq_poly([0, 1])
    cols = []
    r = q_y % p_y
    for _ in range(dp):
        cols.append([r[i] for i in range(dp)])
        r = (r * y) % p_y
    M = flint.fmpq_mat(dp, dp, [cols[j][i] for i in range(dp) for j in range(dp)])
    chi = M.charpoly()
    scale = p_y[dp] ** dq * (-1) ** dp
    return UPoly(to_fraction(scale * chi[k]) for k in range(dp + 1))


def _slice_resultant(P: Poly, Q: Poly, deg_x: int) -> Poly:
    """``Res_y(P, Q - v)`` for ``P, Q`` in x, y with constant leading coefficients in y.

    Constant leading coefficients make specialization of x commute with
    the resultant, so the result is interpolated from ``deg_x + 2`` values
    of x, the last one checking the x-degree bound.  Falls back to direct
    elimination when that check fails.
    """
    p_cols, q_cols = _y_slices(P), _y_slices(Q)
    xs = _grid_values(deg_x + 2)
    rows = []
    for x0 in xs:
        p_y = flint.fmpq_poly([_fmpq(c(x0)) for c in p_cols])
        q_y = flint.fmpq_poly([_fmpq(c(x0)) for c in q_cols])
        rows.append(_parametric_resultant(p_y, q_y))
    top = max(r.degree() for r in rows)
    G = Poly()
    for k in range(top + 1):
        column = [r[k] for r in rows]
        ck = interpolate(xs[:-1], column[:-1])
        if ck(xs[-1]) != column[-1]:
            return resultant(P, Q - V, "y")
        G = G + ck.to_poly("x") * V ** k
    return G


def _slice(F1: Poly, F2: Poly, u0: Fraction, shears, deg_f: int) -> Optional[_Slice]:
    Gs = []
    for t in shears:
        G = _slice_resultant(shear(F1, t) - u0, shear(F2, t), deg_f)
        if G.degree("x") != deg_f:
            return None
        Gs.append(G)
    lc = Gs[0].coefficients_in("x")[-1]
    nonproper = _monic_sqf(lc)
    disc = _discriminant_x(Gs[0])
    for G in Gs[1:]:
        disc = gcd(disc, _discriminant_x(G))
    if disc.is_zero():
        return None
    crit = _monic_sqf(disc)
    shared = crit.gcd(nonproper)
    if shared.degree() > 0:
        crit = crit // shared
    return _Slice(u0, Gs, nonproper, crit)


def _slice_values():
    n = 0
    while True:
        yield Fraction((n + 1) // 2 * (1 if n % 2 else -1)) if n else Fraction(0)
        n += 1


def _interpolate_curve(slices, attr: str) -> Optional[Poly]:
    """Monic-in-v curve through the slice polynomials, or None when they disagree."""
    degrees = [getattr(s, attr).degree() for s in slices]
    D = max(set(degrees), key=lambda d: (degrees.count(d), d))
    good = [s for s in slices if getattr(s, attr).degree() == D]
    if D == 0:
        return Poly(1)
    if len(good) < D + 2:
        return None
    fit, check = good[:D + 1], good[D + 1:]
    xs = [s.u0 for s in fit]
    C = V ** D
    for j in range(D):
        cj = interpolate(xs, [getattr(s, attr)[j] for s in fit])
        C = C + cj.to_poly("u") * V ** j
    for s in check:
        if C.subs({"u": s.u0}).to_upoly("v") != getattr(s, attr):
            return None
    return C


@dataclass(frozen=True)
class LocusData:
    """Everything the slicing pass produced for one map."""

    nonproper: Poly
    critical: Poly
    tau: int
    shears: tuple
    slices: tuple
    deg_f: int
    probe_u0: Fraction
    probe_deficient: tuple   # Res_x(G_t, dG_t/dx) at the probe slice, one per projection


# target directions for slicing; large primes rarely line up with the
# directions of curves coming from small-integer automorphisms
_TAUS = (17, -19, 23, -29, 31, -37, 41, -43, 47, -53, 59, -61)


def _on_line(P: Poly, tau, u0) -> Optional[UPoly]:
    """Monic square-free restriction of ``P(u, v)`` to ``u + tau*v = u0``, or None if it vanishes."""
    R = P.subs({"u": u0 - tau * V})
    return None if R.is_zero() else _monic_sqf(R)


def _slice_consistent(f: PolyMap, deg_f: int, nonproper: Poly, critical: Poly, tau, rng) -> bool:
    """Exact completeness check of the candidate curves on one slice in another direction.

    A component along which the slicing coordinate is constant is missed by
    every slice; in a second direction it meets the slice and the sets differ.
    """
    F1 = f.f1 + tau * f.f2
    shears = tuple(good_shears([F1, f.f2], 3))
    for _ in range(20):
        u0 = Fraction(rng.randint(-97, 97), rng.randint(1, 9))
        n_exp, c_exp = _on_line(nonproper, tau, u0), _on_line(critical, tau, u0)
        if n_exp is None or c_exp is None:
            continue
        s = _slice(F1, f.f2, u0, shears, deg_f)
        if s is None:
            continue
        shared = c_exp.gcd(n_exp)
        if shared.degree() > 0:
            c_exp = c_exp // shared
        return s.nonproper == n_exp and s.critical == c_exp
    return False


def _locus_data(f: PolyMap, seed: int = 0) -> LocusData:
    deg_f = geometric_degree(f, seed)
    rng = random.Random(seed)
    taus = list(_TAUS)
    rng.shuffle(taus)
    for attempt in range(6):
        tau = taus[attempt]
        F1, F2 = f.f1 + tau * f.f2, f.f2
        shears = tuple(good_shears([F1, F2], 3))
        slices = []
        values = _slice_values()
        nonproper = critical = None
        for _ in range(80):
            s = _slice(F1, F2, next(values), shears, deg_f)
            if s is None:
                continue
            slices.append(s)
            if len(slices) < 3:
                continue
            if nonproper is None:
                nonproper = _interpolate_curve(slices, "nonproper")
            if critical is None:
                critical = _interpolate_curve(slices, "critical")
            if nonproper is not None and critical is not None:
                break
        if nonproper is None or critical is None:
            continue
        probe = None
        for _ in range(20):
            probe = _slice(F1, F2, next(values), shears, deg_f)
            if probe is not None:
                break
        if probe is None:
            continue
        deficient = tuple(_discriminant_x(G) for G in probe.G)
        back = {"u": U + tau * V}
        nonproper, critical = nonproper.subs(back).normalized(), critical.subs(back).normalized()
        if not _slice_consistent(f, deg_f, nonproper, critical, taus[attempt + 6], rng):
            continue
        return LocusData(nonproper, critical, tau, shears, tuple(slices), deg_f, probe.u0, deficient)
    raise NumericUnstable(f"branch locus slices of {f} did not interpolate")


_LOCUS_CACHE: dict = {}


def locus_data(f: PolyMap, seed: int = 0) -> LocusData:
    key = (f.f1, f.f2, seed)
    if key not in _LOCUS_CACHE:
        if len(_LOCUS_CACHE) > 256:
            _LOCUS_CACHE.clear()
        _LOCUS_CACHE[key] = _locus_data(f, seed)
    return _LOCUS_CACHE[key]


def _confirm_piece(data: LocusData, piece: Poly) -> dict:
    """Count points of ``piece`` on a fresh slice over which the fiber is deficient.

    On the slice ``u = u0`` (in the sheared target coordinates) the points of
    the piece are the roots of a square-free ``S(v)``.  A root is deficient
    when both projections see fewer than ``deg_f`` distinct fiber values,
    i.e. it is also a root of ``Res_x(G_t, dG_t/dx)`` for both shears ``t``
    (this covers both a multiple root and a drop in degree).  The count is
    exact: ``deg gcd(S, R_1, R_2)``.
    """
    moved = piece.subs({"u": U - data.tau * V}).subs({"u": data.probe_u0})
    if moved.is_constant():
        return {"piece": str(piece), "slice_u": str(data.probe_u0), "confirmed_points": 0,
                "unconfirmed_points": 0}
    S = squarefree_part(moved)
    common = S
    for R in data.probe_deficient:
        common = gcd(common, R)
    confirmed = common.total_degree()
    return {"piece": str(piece), "slice_u": str(data.probe_u0), "confirmed_points": confirmed,
            "unconfirmed_points": S.total_degree() - confirmed}


def _pieces(A: Poly, B: Poly) -> list:
    """Split the two candidate curves by gcd into coprime pieces."""
    out = []
    g = gcd(A, B) if not (A.is_constant() or B.is_constant()) else Poly(1)
    for P in (g, A.exact_div(g) if not A.is_constant() else Poly(1),
              B.exact_div(g) if not B.is_constant() else Poly(1)):
        if not P.is_constant():
            out.append(P.normalized())
    return out


def _confirmed_curve(data: LocusData, candidates, label: str) -> CurveSpec:
    pieces = _pieces(*candidates)
    kept = Poly(1)
    evidence = []
    for P in pieces:
        record = _confirm_piece(data, P)
        record["kept"] = record["confirmed_points"] > 0
        record["mixed"] = record["kept"] and record["unconfirmed_points"] > 0
        evidence.append(record)
        if record["kept"]:
            kept = kept * P
    if kept.is_constant():
        return CurveSpec.empty_curve(kind=label, pieces=evidence)
    return CurveSpec(squarefree_part(kept), {"kind": label, "pieces": evidence})


def critical_value_curve(f: PolyMap, seed: int = 0) -> CurveSpec:
    """Closure of the image of the critical set when it is a curve."""
    J = check_dominating(f)
    if J.is_constant():
        return CurveSpec.empty_curve(kind="critical", reason="constant Jacobian")
    data = locus_data(f, seed)
    return _confirmed_curve(data, (data.critical, Poly(1)), "critical")


def nonproper_curve(f: PolyMap, seed: int = 0) -> CurveSpec:
    """Target points over which part of the fiber escapes to infinity."""
    check_dominating(f)
    data = locus_data(f, seed)
    return _confirmed_curve(data, (data.nonproper, Poly(1)), "nonproper")


def branch_locus(f: PolyMap, seed: int = 0) -> CurveSpec:
    """Square-free defining polynomial of ``{a : #f^-1(a) != deg_f}``."""
    check_dominating(f)
    data = locus_data(f, seed)
    return _confirmed_curve(data, (data.critical, data.nonproper), "branch")


def rational_points_on_curve(C: Poly, count: int, avoid=(), start: int = 0) -> list:
    """Up to ``count`` rational points on ``C(u, v) = 0`` found on lines ``u = const`` and ``v = const``."""
    pts = []
    n = start
    while len(pts) < count and n < start + 400:
        k = Fraction((n + 1) // 2 * (1 if n % 2 else -1)) if n else Fraction(0)
        n += 1
        for var, other in (("u", "v"), ("v", "u")):
            restricted = C.subs({var: k})
            if restricted.is_zero():
                sols = [Fraction(n + 1)]
            elif restricted.is_constant():
                continue
            else:
                sols = rational_roots(restricted.to_upoly(other))
            for s in sols:
                pt = (k, s) if var == "u" else (s, k)
                if pt not in pts and pt not in avoid:
                    pts.append(pt)
    return pts[:count]
