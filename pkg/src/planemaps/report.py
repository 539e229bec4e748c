"""Machine-readable verification reports."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .analyze import (branch_locus, fiber_count_exact, geometric_degree, jacobian_det,
                      random_target, rational_points_on_curve, solve_fiber)
from .automorph import apply_to_map, apply_to_target_poly, invert, random_tame
from .errors import PlaneMapsError
from .instances import Instance
from .maps import PolyMap
from .normalize import (NormalizationTrace, TypeI, equivalent_normal_forms, fiber_contains_curve,
                        normalize_map)


@dataclass
class Record:
    name: str
    passed: bool
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "status": "pass" if self.passed else "fail",
                "evidence": self.evidence}


@dataclass
class Report:
    records: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def add(self, name: str, passed: bool, **evidence) -> Record:
        rec = Record(name, bool(passed), evidence)
        self.records.append(rec)
        return rec

    def record(self, name: str) -> Optional[Record]:
        return next((r for r in self.records if r.name == name), None)

    def to_json(self) -> dict:
        return {"records": [r.to_json() for r in self.records],
                "overall": "pass" if self.passed else "fail"}


def _pt(p) -> list:
    return [str(Fraction(p[0])), str(Fraction(p[1]))]


def branch_sample_points(f: PolyMap, count: int, trace: Optional[NormalizationTrace] = None,
                         locus=None) -> list:
    """Rational points of the branch locus away from the distinguished point.

    With a trace they are images of ``(0, s)``, ``s = 1, -1, 2, ...`` under
    the inverse target normalization; otherwise rational roots along lines.
    """
    if trace is not None:
        pts = []
        s = 1
        while len(pts) < count:
            pts.append(trace.target_point(0, s))
            s = -s if s > 0 else -s + 1
        return pts
    if locus is None:
        locus = branch_locus(f)
    return rational_points_on_curve(locus.defining, count)


def verify_report(subject: Union[PolyMap, Instance], samples: int = 20, seed: int = 0,
                  equivariance_pairs: int = 2, branch_samples: int = 5) -> Report:
    """Fiber-count, equivariance and replay checks for a map or an instance."""
    report = Report()
    instance = subject if isinstance(subject, Instance) else None
    f = instance.map if instance else subject
    rng = random.Random(seed)

    J = jacobian_det(f)
    report.add("dominating", not J.is_zero(), jacobian=str(J))
    if J.is_zero():
        return report
    deg = geometric_degree(f, seed)
    locus = branch_locus(f, seed)
    report.add("branch locus computed", True, degree=deg, branch_locus=str(locus.defining),
               pieces=locus.evidence.get("pieces", []))

    trace, error = None, None
    try:
        trace = normalize_map(f, seed)
    except PlaneMapsError as exc:
        error = f"{type(exc).__name__}: {exc}"
    evidence = {"trace_replay": trace is not None and trace.verify(f)}
    if trace is not None:
        evidence["final_form"] = trace.final_form.to_json()
    else:
        evidence["error"] = error
    if instance is not None:
        # the stored words must replay the ground truth onto the map
        evidence["instance_words"] = instance.check()
    passed = evidence["trace_replay"] and evidence.get("instance_words", True)
    report.add("replay identity", passed, **evidence)

    if trace is not None and instance is not None:
        report.add("normal form matches ground truth",
                   equivalent_normal_forms(trace.final_form, instance.ground_truth),
                   found=trace.final_form.to_json(), expected=instance.ground_truth.to_json())

    counts, residual = [], 0.0
    for _ in range(samples):
        target = random_target(rng, avoid=[locus.defining] if not locus.empty else [])
        sol = solve_fiber(f, target)
        counts.append(sol.count_distinct)
        residual = max(residual, sol.residual_bound)
    report.add("generic fiber counts", all(c == deg for c in counts), expected=deg, counts=counts,
               residual_bound=residual)

    if not locus.empty:
        pts = branch_sample_points(f, branch_samples, trace, locus)
        special = []
        for p in pts:
            sol = solve_fiber(f, p)
            special.append({"target": _pt(p), "count": sol.count_distinct, "infinite": sol.infinite})
        report.add("branch point counts",
                   len(special) > 0 and all(s["infinite"] or s["count"] != deg for s in special),
                   expected_not=deg, samples=special)

    if trace is not None and not isinstance(trace.final_form, TypeI):
        point = trace.distinguished_point()
        report.add("fiber over distinguished point is a line", fiber_contains_curve(f, point),
                   point=_pt(point))
    elif trace is not None:
        finite = all(fiber_count_exact(f, (Fraction(rng.randint(-9, 9)), Fraction(rng.randint(-9, 9))))
                     is not None for _ in range(3))
        report.add("fibers are finite", finite)

    for i in range(equivariance_pairs):
        pre = random_tame(rng.getrandbits(64), 2, 2, 2)
        post = random_tame(rng.getrandbits(64), 2, 2, 2)
        g = apply_to_map(pre, f, post)
        moved = branch_locus(g, seed).defining
        expected = apply_to_target_poly(invert(post), locus.defining).normalized()
        report.add(f"equivariance {i}", moved == expected and geometric_degree(g, seed) == deg,
                   branch_locus=str(moved), expected=str(expected))
    return report
