"""Acceptance criteria, one test each; every test prints a single verdict line."""

import random
import time
from fractions import Fraction
from functools import lru_cache

from planemaps.analyze import (branch_locus, fiber_count_exact, geometric_degree, solve_fiber)
from planemaps.automorph import (apply_to_map, apply_to_poly, apply_to_target_poly, compose, invert,
                                 random_tame)
from planemaps.instances import generate_instance, random_params
from planemaps.normalize import (BRANCH_AT_INFINITY, BRANCH_AT_ORIGIN, Germ, TypeI, TypeIII,
                                 equivalent_normal_forms, germ_pullback, jcurve_ratio_check,
                                 normalize_map)
from planemaps.poly import Poly, UPoly, gcd, resultant, squarefree_part
from planemaps.rectify import rectify_coordinate

X, Y, U = Poly.var("x"), Poly.var("y"), Poly.var("u")
T = UPoly.t()

PER_TYPE = 20
WORD_LEN = 3
DEG_BOUND = 3
COEFF_BOUND = 3
SEED = 20261016


def _verdict(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\n[criterion {n}] {'PASS' if ok else 'FAIL'}: {detail}")


@lru_cache(maxsize=1)
def _instances():
    """60 instances, 20 per type: d <= 5, m, n <= 3, numerators in [-3, 3], words of length 3."""
    rng = random.Random(SEED)
    out = []
    for kind in ("i", "ii", "iii"):
        for _ in range(PER_TYPE):
            params = random_params(kind, rng, max_d=5, max_mn=3, coeff_range=3)
            out.append(generate_instance(kind, params, rng.getrandbits(64), WORD_LEN, DEG_BOUND,
                                         COEFF_BOUND))
    return out


@lru_cache(maxsize=1)
def _round_trip():
    """Normalize every instance, replay the trace literally, compare with ground truth."""
    results = []
    start = time.perf_counter()
    for inst in _instances():
        try:
            trace = normalize_map(inst.map)
        except Exception as exc:  # recorded as a failure of this instance
            results.append((inst, None, f"{type(exc).__name__}: {exc}"))
            continue
        replayed = trace.replay(inst.map) == trace.final_form.map()
        matched = equivalent_normal_forms(trace.final_form, inst.ground_truth)
        problem = None if replayed and matched else f"replay={replayed} match={matched}"
        results.append((inst, trace, problem))
    return results, time.perf_counter() - start


def test_criterion_1_round_trip(capsys):
    results, seconds = _round_trip()
    failures = [(inst.ground_truth, p) for inst, _, p in results if p]
    ok = not failures and len(results) == 3 * PER_TYPE and seconds < 300
    _verdict(capsys, 1, ok, f"{len(results) - len(failures)}/{len(results)} instances normalized, "
             f"replayed exactly and matched ground truth in {seconds:.1f} s (limit 300 s)"
             + (f"; failures {failures[:3]}" if failures else ""))
    assert not failures
    assert seconds < 300


def test_criterion_2_finite_fibers_only_for_type_i(capsys):
    results, _ = _round_trip()
    bad = []
    for inst, trace, problem in results:
        if trace is None:
            bad.append((inst.ground_truth, problem))
            continue
        if isinstance(inst.ground_truth, TypeI):
            finite = all(fiber_count_exact(inst.map, inst.map.at(s)) is not None
                         for s in [(0, 0), (Fraction(1, 2), -3)])
            if not isinstance(trace.final_form, TypeI) or not finite:
                bad.append((inst.ground_truth, trace.final_form))
        else:
            a, b = trace.distinguished_point()
            common = gcd(inst.map.f1 - a, inst.map.f2 - b)
            if common.is_constant() or not rectify_coordinate(squarefree_part(common)).ok:
                bad.append((inst.ground_truth, "no line in distinguished fiber"))
    ok = not bad
    _verdict(capsys, 2, ok, f"{len(results) - len(bad)}/{len(results)} classifications consistent: "
             "TypeI has finite fibers, TypeII/III have a line over the distinguished point"
             + (f"; failures {bad[:3]}" if bad else ""))
    assert ok


NEGATIVES = [X ** 2 - Y ** 3, Y ** 2 - X ** 2 * (X + 1), X * Y]


def test_criterion_3_rectifier(capsys):
    rng = random.Random(SEED + 3)
    start = time.perf_counter()
    failures = 0
    for _ in range(50):
        w = random_tame(rng.getrandbits(64), rng.randint(0, 3), 3, 3)
        p = apply_to_poly(w, X)
        result = rectify_coordinate(p)
        if not (result.ok and apply_to_poly(result.alpha, p) == X):
            failures += 1
    negatives = [not rectify_coordinate(p).ok for p in NEGATIVES]
    seconds = time.perf_counter() - start
    ok = failures == 0 and all(negatives) and seconds < 60
    _verdict(capsys, 3, ok, f"{50 - failures}/50 coordinates rectified exactly, "
             f"{sum(negatives)}/3 negatives rejected, {seconds:.1f} s (limit 60 s)")
    assert ok


def _generic_target(rng, curve):
    while True:
        pt = (Fraction(rng.randint(-999, 999), rng.randint(1, 9)),
              Fraction(rng.randint(-999, 999), rng.randint(1, 9)))
        if curve.evaluate({"u": pt[0], "v": pt[1]}) != 0:
            return pt


def _branch_samples(trace, count=5):
    # images of (0, s), s != 0, on the line u = 0 of the normal form
    return [trace.target_point(0, s) for s in (1, -1, 2, -2, 3)[:count]]


def test_criterion_4_covering_certificate(capsys):
    results, _ = _round_trip()
    rng = random.Random(SEED + 4)
    bad, generic_total, branch_total = [], 0, 0
    for inst, trace, _ in results:
        if trace is None:
            bad.append((inst.ground_truth, "not normalized"))
            continue
        d = trace.final_form.map().f1.total_degree()
        curve = branch_locus(inst.map).defining
        counts = [solve_fiber(inst.map, _generic_target(rng, curve)).count_distinct for _ in range(20)]
        special = []
        for pt in _branch_samples(trace):
            assert curve.evaluate({"u": pt[0], "v": pt[1]}) == 0
            sol = solve_fiber(inst.map, pt)
            special.append("inf" if sol.infinite else sol.count_distinct)
        generic_total += sum(c == d for c in counts)
        branch_total += sum(c != d for c in special)
        if any(c != d for c in counts) or any(c == d for c in special):
            bad.append((inst.ground_truth, counts, special))
    ok = not bad
    _verdict(capsys, 4, ok, f"{generic_total}/{20 * len(results)} generic targets with deg_f points, "
             f"{branch_total}/{5 * len(results)} branch points with a different count"
             + (f"; failures {bad[:2]}" if bad else ""))
    assert ok


def test_criterion_5_equivariance(capsys):
    results, _ = _round_trip()
    rng = random.Random(SEED + 5)
    checked, bad = 0, []
    for inst, _, _ in results:
        nf = inst.ground_truth.map()
        d = nf.f1.total_degree()
        # the instance is itself one pair applied to the normal form
        pairs = [(inst.pre_word, inst.post_word, inst.map)]
        for _ in range(10):
            pre = random_tame(rng.getrandbits(64), rng.randint(1, 3), 2, 3)
            post = random_tame(rng.getrandbits(64), rng.randint(1, 3), 2, 3)
            pairs.append((pre, post, apply_to_map(pre, nf, post)))
        for pre, post, g in pairs:
            expected = apply_to_target_poly(invert(post), U).normalized()
            if branch_locus(g).defining != expected or geometric_degree(g) != d:
                bad.append((inst.ground_truth, str(g)))
            checked += 1
    ok = not bad
    _verdict(capsys, 5, ok, f"{checked - len(bad)}/{checked} automorphism pairs preserve the degree and "
             "move the branch locus equivariantly (exact up to constants)"
             + (f"; failures {bad[:2]}" if bad else ""))
    assert ok


def test_criterion_6_germ_dichotomy(capsys):
    results, _ = _round_trip()
    forms = [inst.ground_truth for inst, _, _ in results if not isinstance(inst.ground_truth, TypeI)]
    rng = random.Random(SEED + 6)
    germs = [Germ(rng.randint(1, 6), rng.randint(1, 6), Fraction(rng.choice([-3, -2, -1, 1, 2, 3]),
                                                                  rng.randint(1, 4)))
             for _ in range(10)]
    bad = []
    for germ in germs:
        for nf in forms:
            outcome = germ_pullback(nf, germ)
            if isinstance(nf, TypeIII):
                expected_ok = outcome == BRANCH_AT_INFINITY
            else:
                # exponent of y along the branch: q - p*m/d
                at_origin = Fraction(germ.q) > Fraction(germ.p * nf.m, nf.d)
                expected_ok = (outcome == BRANCH_AT_ORIGIN) == at_origin
            if not expected_ok:
                bad.append((nf, germ, outcome))
    ok = not bad and len(germs) == 10
    n_iii = sum(isinstance(f, TypeIII) for f in forms)
    _verdict(capsys, 6, ok, f"10 germs x {len(forms)} forms ({n_iii} TypeIII, {len(forms) - n_iii} TypeII): "
             f"{10 * len(forms) - len(bad)} outcomes match the exponent oracle")
    assert ok


def _random_poly(rng, max_deg, coeff=9, terms=5):
    out = {}
    for _ in range(rng.randint(1, terms)):
        i = rng.randint(0, max_deg)
        j = rng.randint(0, max_deg - i)
        out[(i, j)] = rng.choice([c for c in range(-coeff, coeff + 1) if c])
    return Poly.from_terms(out)


def _nonconstant(rng, max_deg):
    while True:
        p = _random_poly(rng, max_deg)
        if p.degree("y") > 0 and p.total_degree() > 0:
            return p


def test_criterion_7_algebra_laws(capsys):
    rng = random.Random(SEED + 7)
    tallies = {}

    def law(name, holds):
        tallies.setdefault(name, [0, 0])
        tallies[name][0] += bool(holds)
        tallies[name][1] += 1

    for _ in range(100):
        p, q, r = _nonconstant(rng, 4), _nonconstant(rng, 4), _nonconstant(rng, 4)
        law("resultant multiplicativity",
            resultant(p * q, r, "y") == resultant(p, r, "y") * resultant(q, r, "y"))
    for _ in range(100):
        p, q = _random_poly(rng, 6), _random_poly(rng, 6)
        g = gcd(p, q)
        law("gcd divisibility", g.divides(p) and g.divides(q))
    done = 0
    while done < 100:
        p, q = _nonconstant(rng, 3), _nonconstant(rng, 3)
        if not gcd(p, q).is_constant():
            continue
        law("square-free idempotence", squarefree_part(p ** 2 * q) == squarefree_part(p * q))
        done += 1
    for _ in range(100):
        w = random_tame(rng.getrandbits(64), rng.randint(0, 3), 3, 3)
        law("automorphism round trip", compose(w, invert(w)).components == (X, Y)
            and compose(invert(w), w).components == (X, Y))
    ok = all(passed == total == 100 for passed, total in tallies.values())
    _verdict(capsys, 7, ok, ", ".join(f"{name} {p}/{t}" for name, (p, t) in tallies.items()))
    assert ok


def test_criterion_8_jcurve_fixtures(capsys):
    cusps = jcurve_ratio_check([(T ** 2, T ** 3), (T ** 4, T ** 6)]).verdict
    ratios = jcurve_ratio_check([(T ** 2, T ** 3), (T ** 3, T ** 4)]).verdict
    line = jcurve_ratio_check([(T, T ** 2)]).verdict
    got = (cusps, ratios, line)
    want = ("CandidateJCurve", "NotJCurve", "NotJCurve")
    ok = got == want
    _verdict(capsys, 8, ok, f"fixtures gave {', '.join(got)} (expected {', '.join(want)})")
    assert ok
