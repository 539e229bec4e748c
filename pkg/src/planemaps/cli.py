"""Command-line interface.

Exit codes: 0 success, 2 parse or usage error, 3 input outside the class
(NotInClass, NotRectifiable, non-dominating map), 4 internal consistency
failure (replay identity or a verification record failed).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Optional

from .analyze import (branch_locus, critical_value_curve, geometric_degree, jacobian_det,
                      nonproper_curve)
from .automorph import random_tame
from .errors import (DegenerateMap, InvalidParams, Lemma1MiddleCoefficients, NotInClass,
                     ParseError, PlaneMapsError, ReplayMismatch, ShapeMismatch)
from .instances import Instance, generate_instance
from .maps import PolyMap
from .normalize import final_map_str, jcurve_ratio_check, normalize_map
from .poly import Poly
from .rectify import rectify_coordinate
from .report import verify_report
from .textio import format_poly, parse_poly, parse_upoly

EXIT_OK, EXIT_USAGE, EXIT_NOT_IN_CLASS, EXIT_INCONSISTENT = 0, 2, 3, 4


class InputError(Exception):
    """Unreadable or malformed input file."""


def _load(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid document: {exc}") from exc


def load_subject(path: str):
    """A map file holds ``f1`` and ``f2``; instance files add ground truth and words."""
    data = _load(path)
    if not isinstance(data, dict) or "f1" not in data or "f2" not in data:
        raise InputError(f"{path}: expected an object with fields f1 and f2")
    try:
        if "ground_truth" in data:
            return Instance.from_json(data)
        return PolyMap.parse(str(data["f1"]), str(data["f2"]))
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: malformed field: {exc}") from exc


def _curve_json(spec) -> dict:
    return {"defining": format_poly(spec.defining), "empty": spec.empty}


def cmd_analyze(args) -> tuple[int, dict]:
    subject = load_subject(args.map_file)
    f = subject.map if isinstance(subject, Instance) else subject
    J = jacobian_det(f)
    if J.is_zero():
        raise DegenerateMap("Jacobian determinant vanishes identically")
    doc = {"map": f.to_json(), "jacobian": format_poly(J),
           "geometric_degree": geometric_degree(f, args.seed),
           "branch_locus": _curve_json(branch_locus(f, args.seed)),
           "critical_value_curve": _curve_json(critical_value_curve(f, args.seed)),
           "nonproper_curve": _curve_json(nonproper_curve(f, args.seed))}
    return EXIT_OK, doc


def cmd_rectify(args) -> tuple[int, dict]:
    p = parse_poly(args.poly, ("x", "y"))
    result = rectify_coordinate(p)
    if result.ok:
        P1, P2 = result.alpha.components
        return EXIT_OK, {"status": "Rectified", "input": format_poly(p),
                         "alpha": result.alpha.to_json(),
                         "components": [format_poly(P1), format_poly(P2)]}
    witness = {k: (format_poly(v) if isinstance(v, Poly) else v) for k, v in result.witness.items()}
    return EXIT_NOT_IN_CLASS, {"status": "NotRectifiable", "input": format_poly(p), "witness": witness}


def cmd_normalize(args) -> tuple[int, dict]:
    subject = load_subject(args.map_file)
    f = subject.map if isinstance(subject, Instance) else subject
    trace = normalize_map(f, args.seed)
    doc = {"status": "Normalized", "normal_form": trace.final_form.to_json(),
           "normal_map": final_map_str(trace), "replay_identity": True}
    if args.trace:
        doc["trace"] = trace.to_json()
    return EXIT_OK, doc


def cmd_generate(args) -> tuple[int, dict]:
    params = {"d": args.d}
    if args.type in ("ii", "iii"):
        if args.m is None:
            raise InvalidParams(f"type {args.type} needs --m")
        params["m"] = args.m
    if args.type == "iii":
        if args.n is None or args.a is None:
            raise InvalidParams("type iii needs --n and --a")
        params["n"] = args.n
        params["a"] = _parse_list(args.a)
    inst = generate_instance(args.type, params, args.seed, args.word_len, args.deg_bound,
                             args.coeff_bound, args.max_degree)
    return EXIT_OK, inst.to_json()


def _parse_list(text: str) -> list:
    items = [s for s in text.replace("[", "").replace("]", "").split(",") if s.strip()]
    try:
        return [Fraction(s.strip()) for s in items]
    except ValueError as exc:
        raise InvalidParams(f"bad coefficient list {text!r}") from exc


def cmd_verify(args) -> tuple[int, dict]:
    subject = load_subject(args.map_file)
    report = verify_report(subject, args.samples, args.seed, args.pairs, args.branch_samples)
    return (EXIT_OK if report.passed else EXIT_INCONSISTENT), report.to_json()


def cmd_jcurve(args) -> tuple[int, dict]:
    data = _load(args.components_file)
    comps = data.get("components") if isinstance(data, dict) else data
    if not isinstance(comps, list) or not comps:
        raise InputError(f"{args.components_file}: expected a nonempty list of components")
    try:
        components = [(parse_upoly(p, "t"), parse_upoly(q, "t")) for p, q in comps]
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise InputError(f"{args.components_file}: components must be pairs of strings") from exc
    rng = random.Random(args.seed)
    probes = [random_tame(rng.getrandbits(64), 2, 2, 2) for _ in range(args.probes)]
    report = jcurve_ratio_check(components, probes)
    return EXIT_OK, {"components": comps, **report.to_json()}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="planemaps",
                                     description="Quasi-finite polynomial plane maps with a line as branch locus.")
    parser.add_argument("--out", help="also write the report document to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="degree, Jacobian and branch locus of a map")
    p.add_argument("map_file")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("rectify", help="find an automorphism sending a coordinate to x")
    p.add_argument("poly")
    p.set_defaults(func=cmd_rectify)

    p = sub.add_parser("normalize", help="reduce a map to its normal form")
    p.add_argument("map_file")
    p.add_argument("--trace", action="store_true", help="include the full certificate")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("generate", help="random instance with known normal form")
    p.add_argument("--type", required=True, choices=["i", "ii", "iii"])
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--a", help="comma-separated coefficients, e.g. 1,0,-2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--word-len", type=int, default=2)
    p.add_argument("--deg-bound", type=int, default=3)
    p.add_argument("--coeff-bound", type=int, default=3)
    p.add_argument("--max-degree", type=int)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="sampled covering, equivariance and replay checks")
    p.add_argument("map_file")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pairs", type=int, default=2, help="random automorphism pairs")
    p.add_argument("--branch-samples", type=int, default=5)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("jcurve", help="necessary conditions for a J-curve")
    p.add_argument("components_file")
    p.add_argument("--probes", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_jcurve)
    return parser


def _error(kind: str, exc: Exception) -> dict:
    doc = {"status": "error", "error": kind, "message": str(exc)}
    if isinstance(exc, ParseError):
        doc["position"] = exc.position
        doc["expected"] = sorted(exc.expected)
    return doc


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, doc = args.func(args)
    except (ParseError, InvalidParams, InputError) as exc:
        code, doc = EXIT_USAGE, _error(type(exc).__name__, exc)
    except (NotInClass, DegenerateMap, Lemma1MiddleCoefficients) as exc:
        code, doc = EXIT_NOT_IN_CLASS, _error(type(exc).__name__, exc)
    except (ReplayMismatch, ShapeMismatch) as exc:
        code, doc = EXIT_INCONSISTENT, _error(type(exc).__name__, exc)
    except PlaneMapsError as exc:
        code, doc = EXIT_INCONSISTENT, _error(type(exc).__name__, exc)
    text = json.dumps(doc, indent=2, default=str)
    print(text)
    if code != EXIT_OK and doc.get("status") == "error":
        print(f"planemaps: {doc['error']}: {doc['message']}", file=sys.stderr)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
