"""Batch command-line surface: JSON in, JSON out, deterministic bytes.

Exit codes: 0 success, 1 validation or usage error, 2 obstruction (a
mathematically meaningful negative: failed lift, inexact column or node),
3 internal identity failure.
"""

from __future__ import annotations

import argparse
import sys

from .checks import run_suite
from .cohomology import cohomology_group
from .continuity import ContinuityClass, all_class, quotient_class
from .errors import (ClassViolationError, InternalCheckError, ObstructionError,
                     ValidationError)
from .groups import FiniteGroup, make_cyclic
from .jsonio import (bicochain_to_json, canonical_dumps, certificate_to_json,
                     class_from_json, cochain_from_json, cohomology_to_json,
                     exactness_report_to_json, group_from_json,
                     ladder_report_to_json, les_report_to_json, load_json,
                     module_from_json, ses_from_json)
from .ladder import ladder_check, les_segment
from .modules import GModule, trivial_module
from .transfer import column_exactness_check, transfer_lc_to_c

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_OBSTRUCTION = 2
EXIT_INTERNAL = 3


def _parse_group(spec: str) -> FiniteGroup:
    if spec.startswith("cyclic:"):
        n = int(spec.split(":", 1)[1])
        if n < 1:
            raise ValidationError("cyclic group order must be >= 1")
        return make_cyclic(n)
    return group_from_json(load_json(spec))


def _parse_module(spec: str, group: FiniteGroup) -> GModule:
    """Inline presentations like Z, Z/4, Z+Z/2; anything else is a file."""
    terms = spec.replace(" ", "").split("+")
    if all(t == "Z" or (t.startswith("Z/") and t[2:].isdigit()) for t in terms):
        rank = sum(1 for t in terms if t == "Z")
        torsion = tuple(int(t[2:]) for t in terms if t != "Z")
        return trivial_module(group, rank, torsion)
    return module_from_json(group, load_json(spec))


def _parse_class(spec: str, group: FiniteGroup) -> ContinuityClass:
    if spec == "all":
        return all_class(group)
    if spec.startswith("quotient:"):
        elements = [int(v) for v in spec.split(":", 1)[1].split(",")]
        return quotient_class(group, elements)
    return class_from_json(group, load_json(spec))


def _emit(obj, out_path: str | None) -> None:
    text = canonical_dumps(obj)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _note(args, message: str) -> None:
    if args.verbose:
        print(message, file=sys.stderr)


def cmd_cohomology(args) -> int:
    group = _parse_group(args.group)
    module = _parse_module(args.module, group)
    cls = _parse_class(args.cls, group)
    cohom = cohomology_group(group, module, args.degree, cls, args.variant)
    _note(args, f"H^{args.degree} = {cohom.structure}")
    _emit(cohomology_to_json(cohom), args.out)
    return EXIT_OK


def cmd_transfer(args) -> int:
    obj = load_json(args.infile)
    f = cochain_from_json(obj)
    cls = _parse_class(args.cls, f.group)
    try:
        cert = transfer_lc_to_c(f, cls)
    except ObstructionError as exc:
        _emit({
            "obstructed": True,
            "bidegree": list(exc.bidegree),
            "message": str(exc),
            "obstruction": bicochain_to_json(exc.obstruction),
        }, args.out)
        _note(args, f"obstruction at bidegree {exc.bidegree}")
        return EXIT_OBSTRUCTION
    _note(args, f"certificate verified, {len(cert.steps)} lifting steps")
    _emit(certificate_to_json(cert), args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    results = run_suite(args.suite, seed=args.seed, samples=args.samples,
                        max_order=args.max_order)
    payload = {
        "suite": args.suite,
        "results": [
            {"suite": r.suite, "name": r.name, "passed": r.passed,
             "detail": r.detail}
            for r in results
        ],
        "all_passed": all(r.passed for r in results),
    }
    for r in results:
        _note(args, f"{'PASS' if r.passed else 'FAIL'} {r.suite}: {r.name}"
                    + (f" ({r.detail})" if r.detail and not r.passed else ""))
    _emit(payload, args.out)
    return EXIT_OK if payload["all_passed"] else EXIT_INTERNAL


def cmd_les(args) -> int:
    ses = ses_from_json(load_json(args.infile))
    cls = _parse_class(args.cls, ses.group)
    if args.coarse_class is not None:
        coarse = _parse_class(args.coarse_class, ses.group)
        report = ladder_check(ses, cls, coarse, args.degrees,
                              variant=args.variant)
        ok = (report.fine.all_exact() and report.coarse.all_exact()
              and report.all_squares_commute())
        _note(args, f"ladder: exact={ok}, "
                    f"five-lemma windows={list(report.five_lemma_checks)}")
        _emit(ladder_report_to_json(report), args.out)
        return EXIT_OK if ok else EXIT_OBSTRUCTION
    report = les_segment(ses, args.degrees, cls, variant=args.variant)
    _note(args, f"exact at {sum(report.exact_at)}/{len(report.exact_at)} nodes")
    _emit(les_report_to_json(report), args.out)
    return EXIT_OK if report.all_exact() else EXIT_OBSTRUCTION


def cmd_exactness(args) -> int:
    group = _parse_group(args.group)
    module = _parse_module(args.module, group)
    cls = _parse_class(args.cls, group)
    report = column_exactness_check(cls, group, module, args.p, args.q_max)
    _note(args, f"column p={args.p}: "
                + ", ".join(f"q={e.q}:{'exact' if e.exact else 'INEXACT'}"
                            for e in report.entries))
    _emit(exactness_report_to_json(report), args.out)
    return EXIT_OK if report.all_exact() else EXIT_OBSTRUCTION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gcohom",
        description="Exact cohomology engine: compute, transfer, check.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON payload here instead of stdout")
    common.add_argument("--verbose", action="store_true",
                        help="human-readable progress on stderr")

    p = sub.add_parser("cohomology", parents=[common],
                       help="invariant factors of one cohomology group")
    p.add_argument("--group", required=True, help="cyclic:N or a group JSON file")
    p.add_argument("--module", required=True,
                   help="Z, Z/4, Z+Z/2, ... or a module JSON file")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--class", dest="cls", default="all",
                   help="all, quotient:<elements>, or a class JSON file")
    p.add_argument("--variant", choices=("continuous", "member"),
                   default="continuous")
    p.set_defaults(fn=cmd_cohomology)

    p = sub.add_parser("transfer", parents=[common],
                       help="run the staircase transfer on a cocycle file")
    p.add_argument("--in", dest="infile", required=True,
                   help="cochain JSON file")
    p.add_argument("--class", dest="cls", default="all")
    p.set_defaults(fn=cmd_transfer)

    p = sub.add_parser("check", parents=[common],
                       help="run a structural identity suite")
    p.add_argument("--suite", required=True,
                   help="differentials, homotopy, equivariantize, corner, "
                        "snf, signs, or all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--max-order", type=int, default=None)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("les", parents=[common],
                       help="long exact sequence of a coefficient sequence")
    p.add_argument("--in", dest="infile", required=True, help="ses JSON file")
    p.add_argument("--degrees", type=int, default=2,
                   help="largest degree of the segment")
    p.add_argument("--class", dest="cls", default="all")
    p.add_argument("--coarse-class", default=None,
                   help="second class: compare the two rows as a ladder")
    p.add_argument("--variant", choices=("continuous", "member"),
                   default="continuous")
    p.set_defaults(fn=cmd_les)

    p = sub.add_parser("exactness", parents=[common],
                       help="column exactness report for one class")
    p.add_argument("--group", required=True)
    p.add_argument("--module", required=True)
    p.add_argument("--class", dest="cls", default="all")
    p.add_argument("--p", type=int, required=True, help="column index")
    p.add_argument("--q-max", type=int, default=1)
    p.set_defaults(fn=cmd_exactness)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse reserves 2 for usage errors; here 2 means obstruction
        return EXIT_OK if exc.code == 0 else EXIT_VALIDATION
    try:
        return args.fn(args)
    except ObstructionError as exc:
        print(f"obstruction: {exc}", file=sys.stderr)
        return EXIT_OBSTRUCTION
    except ClassViolationError as exc:
        print(f"continuity violation: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"witness: {exc.witness}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValidationError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        for violation in exc.violations:
            print(f"  {violation.kind}: {violation.message}", file=sys.stderr)
        return EXIT_VALIDATION
    except InternalCheckError as exc:
        print(f"internal identity failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as exc:
        print(f"file error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
