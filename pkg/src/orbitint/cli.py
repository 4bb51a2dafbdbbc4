"""Command-line surface: parse maps and points, run analyses, emit
structured reports.

Exit status 0 on success, 2 on precondition errors (named in the report),
3 when a resource cap truncated the computation (report still emitted).
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone

from . import __version__
from .divisors import build_tower, diagonal_critical_intersections
from .exactarith import PlaceSet
from .integrality import IntegralityError
from .mapexpr import ParseError, parse_map
from .projective import ProjectiveError, parse_point
from .ratmap import (
    FormDegreeCapError,
    RatMapError,
    bad_reduction_primes,
    certify_wandering,
    critical_data,
    exceptional_points,
    is_powering_conjugate,
    iterate,
)
from .report import (
    SCHEMA_VERSION,
    coset_doc,
    critical_datum_doc,
    exceptional_doc,
    pair_report_doc,
    pair_table,
    point_doc,
    powering_doc,
    tower_doc,
    wandering_doc,
)
from .search import (
    DEFAULT_DIGIT_BUDGET,
    PairWindow,
    SearchError,
    detect_coset_structure,
    exceptional_case_enlarge,
    find_integral_pairs,
    powering_pair_analysis,
)

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_TRUNCATED = 3


def _parse_window(text: str) -> PairWindow:
    try:
        m, n = text.lower().split("x")
        return PairWindow(int(m), int(n))
    except (ValueError, SearchError):
        raise SearchError(f"cannot parse window {text!r}; expected MxN") from None


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="orbitint",
        description=(
            "Exact S-integrality of two-parameter orbits of rational "
            "self-maps of the projective line over Q"
        ),
    )
    ap.add_argument("--format", choices=("json", "table"), default="json")
    ap.add_argument("--no-timestamp", action="store_true")
    ap.add_argument("--output", default=None, help="output path (default stdout)")
    ap.add_argument("--digit-budget", type=int, default=DEFAULT_DIGIT_BUDGET)
    ap.add_argument("--degree-cap", type=int, default=4096)
    sub = ap.add_subparsers(dest="command", required=True)

    def add_map(p):
        p.add_argument("--map", required=True, help="map expression or num=..;den=..")

    p = sub.add_parser("analyze", help="degree, reduction, critical structure")
    add_map(p)

    p = sub.add_parser("orbit", help="forward orbit of a point")
    add_map(p)
    p.add_argument("--point", required=True)
    p.add_argument("--n", type=int, default=8, help="orbit length")

    p = sub.add_parser("pairs", help="integral index pairs over a window")
    add_map(p)
    p.add_argument("--u", required=True)
    p.add_argument("--w", required=True)
    p.add_argument("--S", default="", help="comma-separated primes")
    p.add_argument("--window", default="6x6")

    p = sub.add_parser("divisor", help="divisor tower G_1..G_n, B_0..B_n")
    add_map(p)
    p.add_argument("--n", type=int, default=2, help="tower depth")

    p = sub.add_parser("certify", help="preperiodic / wandering certificate")
    add_map(p)
    p.add_argument("--point", required=True)
    p.add_argument("--n", type=int, default=64, help="max iterations")

    p = sub.add_parser("powering", help="powering-case pair analysis")
    add_map(p)
    p.add_argument("--u", required=True)
    p.add_argument("--w", required=True)
    p.add_argument("--S", default="")
    p.add_argument("--window", default="6x6")

    p = sub.add_parser("exceptional", help="S-enlargement for exceptional w = inf")
    add_map(p)
    p.add_argument("--u", required=True)
    p.add_argument("--S", default="")
    p.add_argument("--window", default="8x8")

    return ap


def _run_command(args) -> tuple[dict, int]:
    f = parse_map(args.map)
    status = EXIT_OK
    if args.command == "analyze":
        body = {
            "map": f.serialize_coefficients(),
            "degree": f.degree,
            "polynomial": f.is_polynomial,
            "resultant": f.resultant,
            "bad_reduction_primes": bad_reduction_primes(f).serialize(),
            "critical_data": [critical_datum_doc(c) for c in critical_data(f)],
            "exceptional_points": exceptional_doc(exceptional_points(f)),
            "powering": powering_doc(is_powering_conjugate(f)),
        }
    elif args.command == "orbit":
        pt = parse_point(args.point)
        orbit = [pt]
        for _ in range(args.n):
            orbit.append(iterate(f, orbit[-1], 1))
        body = {
            "map": f.serialize_coefficients(),
            "start": pt.serialize(),
            "orbit": [point_doc(p) for p in orbit],
        }
    elif args.command == "pairs":
        report = find_integral_pairs(
            f,
            parse_point(args.u),
            parse_point(args.w),
            PlaceSet.parse(args.S),
            _parse_window(args.window),
            digit_budget=args.digit_budget,
        )
        body = pair_report_doc(report)
        body["coset_structure"] = coset_doc(detect_coset_structure(report))
        if args.format == "table":
            body["table"] = pair_table(report)
        if report.truncated:
            status = EXIT_TRUNCATED
    elif args.command == "divisor":
        tower = build_tower(f, args.n)
        body = tower_doc(tower)
        body["diagonal_critical_intersections"] = [
            p.serialize() for p in diagonal_critical_intersections(tower)
        ]
    elif args.command == "certify":
        result = certify_wandering(f, parse_point(args.point), args.n)
        body = {
            "map": f.serialize_coefficients(),
            "point": args.point,
            "result": wandering_doc(result),
        }
    elif args.command == "powering":
        analysis = powering_pair_analysis(
            f,
            parse_point(args.u),
            parse_point(args.w),
            PlaceSet.parse(args.S),
            _parse_window(args.window),
            digit_budget=args.digit_budget,
        )
        from .report import format_fraction

        body = pair_report_doc(analysis.report)
        body["enlarged_S"] = analysis.enlarged_places.serialize()
        body["tau_values"] = [format_fraction(t) for t in analysis.tau_values]
        body["tau_unit_checks_passed"] = analysis.tau_unit_checks_passed
    elif args.command == "exceptional":
        u = parse_point(args.u)
        enlarged = exceptional_case_enlarge(
            f,
            u,
            PlaceSet.parse(args.S),
            _parse_window(args.window),
            digit_budget=args.digit_budget,
        )
        body = {
            "map": f.serialize_coefficients(),
            "u": u.serialize(),
            "enlarged_S": enlarged.serialize(),
            "window_verified": True,
        }
    else:  # pragma: no cover
        raise SearchError(f"unknown command {args.command!r}")
    return body, status


def _render_table(doc: dict, out) -> None:
    rows = doc.get("body", {}).get("table")
    if rows:
        out.write("m\tn\tverdict\tsmallest_violating_prime\n")
        for row in rows:
            out.write(
                f"{row['m']}\t{row['n']}\t{row['verdict']}\t"
                f"{row['smallest_violating_prime']}\n"
            )
        return
    for key, value in sorted(doc.get("body", {}).items()):
        out.write(f"{key}\t{json.dumps(value, sort_keys=True)}\n")


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    doc: dict = {"schema_version": SCHEMA_VERSION, "tool_version": __version__,
                 "command": args.command}
    if not args.no_timestamp:
        doc["timestamp"] = datetime.now(timezone.utc).isoformat()
    try:
        body, status = _run_command(args)
        doc["body"] = body
        doc["status"] = status
    except (
        ParseError,
        ProjectiveError,
        RatMapError,
        FormDegreeCapError,
        IntegralityError,
        SearchError,
        ValueError,
    ) as exc:
        doc["error"] = str(exc)
        doc["status"] = EXIT_PRECONDITION
        status = EXIT_PRECONDITION

    out = sys.stdout if args.output is None else open(args.output, "w")
    try:
        if args.format == "table" and "body" in doc:
            _render_table(doc, out)
        else:
            out.write(json.dumps(doc, indent=2, sort_keys=True))
            out.write("\n")
    finally:
        if args.output is not None:
            out.close()
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
