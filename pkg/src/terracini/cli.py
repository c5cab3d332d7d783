"""Command-line interface.

Exit codes: 0 when every requested check passes, 1 when a mathematical
counterexample or failed check was found (the witness is serialized in the
report), 2 on input or usage errors. Identical invocations produce
byte-identical reports; seeds are explicit flags with documented defaults.
"""

from __future__ import annotations

import argparse
import json
import sys

from .curves import (
    CanonicalHyperelliptic,
    Divisor,
    HyperplaneSystem,
    PlaneImplicit,
)
from .defects import defect_report, scheme_report
from .errors import InputError, TerraciniError
from .fileio import (
    curve_to_json,
    divisor_to_json,
    input_digest,
    load_curve,
    load_divisor,
    parse_points_option,
    point_to_json,
    render_document,
    report_to_json,
)
from .probes import (
    bitangent_search,
    coplanar_tangent_locus,
    emptiness_probe,
    generic_rank_probe,
    sample_reduced_divisor,
)
from .suites import SUITES, run_suite
from .witness import (
    split_hyperelliptic,
    tangent_elliptic_quartic,
    tangent_nodal_union,
    tangent_rational_curve,
    total_flex_plane_curve,
)

RECIPES = {
    "tangent-rational": lambda args: tangent_rational_curve(
        args.r, args.d, [s.strip() for s in args.contacts.split(",")]
    ),
    "total-flex": lambda args: total_flex_plane_curve(args.d),
    "elliptic-quartic": lambda args: tangent_elliptic_quartic(),
    "nodal-union": lambda args: tangent_nodal_union(),
    "split-hyperelliptic": lambda args: split_hyperelliptic(
        args.g,
        [s.strip() for s in args.roots.split(",")],
        fiber_x=args.fiber_x,
        find_fiber=args.find_fiber,
    ),
}


def _system(name: str):
    if name == "hyperplane":
        return HyperplaneSystem()
    if name == "canonical":
        return CanonicalHyperelliptic()
    raise InputError("unknown system %r" % name)


def _file_digest(path: str) -> str:
    try:
        with open(path, "rb") as handle:
            return input_digest(handle.read().decode("utf-8", "replace"))
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc)) from exc


def _emit(payload: dict, digest_parts, fmt: str) -> None:
    if fmt == "structured":
        sys.stdout.write(render_document(payload, tuple(digest_parts)))
    else:
        _emit_table(payload)


def _emit_table(payload: dict, indent: str = "") -> None:
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, dict):
            print("%s%s:" % (indent, key))
            _emit_table(value, indent + "  ")
        elif isinstance(value, list):
            print("%s%s: %s" % (indent, key, json.dumps(value, default=str)))
        else:
            print("%s%s: %s" % (indent, key, value))


def _divisor_from_args(args, curve) -> Divisor:
    if getattr(args, "divisor", None):
        return load_divisor(args.divisor)
    if getattr(args, "points", None):
        return Divisor.reduced(parse_points_option(args.points, curve))
    raise InputError("provide --points or --divisor")


def _cmd_defect(args) -> int:
    curve, curve_id = load_curve(args.curve)
    divisor = _divisor_from_args(args, curve)
    report = defect_report(curve, _system(args.system), divisor)
    payload = {
        "command": "defect",
        "curve": curve_id,
        "system": args.system,
        "divisor": divisor_to_json(divisor),
        "report": report_to_json(report),
    }
    _emit(payload, (_file_digest(args.curve), args.system, repr(divisor)), args.format)
    return 0


def _cmd_member(args) -> int:
    curve, curve_id = load_curve(args.curve)
    divisor = _divisor_from_args(args, curve)
    report = defect_report(curve, _system(args.system), divisor)
    payload = {
        "command": "member",
        "curve": curve_id,
        "system": args.system,
        "divisor": divisor_to_json(divisor),
        "member": report.member,
        "report": report_to_json(report),
    }
    _emit(payload, (_file_digest(args.curve), args.system, repr(divisor)), args.format)
    return 0


def _cmd_scheme_member(args) -> int:
    curve, curve_id = load_curve(args.curve)
    divisor = _divisor_from_args(args, curve)
    report = scheme_report(curve, _system(args.system), divisor)
    payload = {
        "command": "scheme-member",
        "curve": curve_id,
        "system": args.system,
        "divisor": divisor_to_json(divisor),
        "member_scheme": report.member_scheme,
        "report": report_to_json(report),
    }
    _emit(payload, (_file_digest(args.curve), args.system, repr(divisor)), args.format)
    return 0


def _cmd_construct(args) -> int:
    if args.name not in RECIPES:
        raise InputError("unknown recipe %r; available: %s" % (args.name, ", ".join(sorted(RECIPES))))
    recipe = RECIPES[args.name](args)
    payload = {
        "command": "construct",
        "recipe": recipe.name,
        "parameters": {k: str(v) for k, v in recipe.parameters.items()},
        "curve": curve_to_json(recipe.curve, curve_id=recipe.name),
        "divisor": divisor_to_json(recipe.divisor),
        "scheme_variant": recipe.scheme_variant,
        "report": report_to_json(recipe.report),
    }
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            json.dump(curve_to_json(recipe.curve, curve_id=recipe.name), handle,
                      indent=2, sort_keys=True)
            handle.write("\n")
    _emit(payload, (args.name, repr(sorted(vars(args).items()))), args.format)
    return 0


def _cmd_probe(args) -> int:
    curve, curve_id = load_curve(args.curve)
    system = _system(args.system)
    if args.kind == "emptiness":
        result = emptiness_probe(curve, system, args.x, args.trials, args.seed)
    elif args.kind == "generic-rank":
        lengths = [int(v) for v in args.lengths.split(",")]
        result = generic_rank_probe(curve, system, lengths, args.trials, args.seed)
    else:
        raise InputError("unknown probe kind %r" % args.kind)
    witnesses = []
    if args.kind == "emptiness":
        import random

        for trial in result.failing_seeds:
            rng = random.Random("emptiness:%s:%d" % (args.seed, trial))
            witnesses.append(divisor_to_json(sample_reduced_divisor(curve, args.x, rng)))
    else:
        witnesses = [{"trial": trial} for trial in result.failing_seeds]
    payload = {
        "command": "probe",
        "kind": args.kind,
        "curve": curve_id,
        "seed": args.seed,
        "trials": result.trials,
        "failures": result.failures,
        "failing_seeds": list(result.failing_seeds),
        "witnesses": witnesses,
        "verdict": result.verdict,
    }
    _emit(payload, (_file_digest(args.curve), args.kind, str(args.seed), str(args.trials)), args.format)
    return 0 if result.verdict == "all-passed" else 1


def _cmd_scan(args) -> int:
    curve, curve_id = load_curve(args.curve)
    if args.kind == "coplanar":
        locus = coplanar_tangent_locus(curve)
        payload = {
            "command": "scan",
            "kind": "coplanar",
            "curve": curve_id,
            "diagonal_order": locus.diagonal_order,
            "reduced_constant": locus.reduced.is_constant(),
            "rational_zeros": [[str(s), str(t)] for s, t in locus.rational_zeros],
            "zero_reports": [report_to_json(r) for r in locus.zero_reports],
            "float_hints": [[round(a, 6), round(b, 6)] for a, b in locus.float_hints[:20]],
        }
        _emit(payload, (_file_digest(args.curve), "coplanar"), args.format)
        return 0
    if args.kind == "bitangent":
        if not isinstance(curve, PlaneImplicit):
            raise InputError("bitangent scan needs a plane curve")
        findings = bitangent_search(curve, trials=args.trials, seed=args.seed)
        payload = {
            "command": "scan",
            "kind": "bitangent",
            "curve": curve_id,
            "confirmed_pairs": [
                {"points": [point_to_json(a), point_to_json(b)], "report": report_to_json(rep)}
                for (a, b), rep in findings.confirmed_pairs
            ],
            "hyperflexes": [
                {"point": point_to_json(p), "report": report_to_json(rep)}
                for p, rep in findings.hyperflexes
            ],
            "float_hints_count": len(findings.hints),
        }
        _emit(payload, (_file_digest(args.curve), "bitangent", str(args.seed)), args.format)
        return 0
    raise InputError("unknown scan kind %r" % args.kind)


def _cmd_suite(args) -> int:
    if args.action == "list":
        payload = {"command": "suite-list", "suites": sorted(SUITES)}
        _emit(payload, ("suite-list",), args.format)
        return 0
    results = run_suite(args.name)
    all_passed = all(r.passed for r in results)
    payload = {
        "command": "suite-run",
        "suite": args.name,
        "passed": all_passed,
        "checks": [
            {
                "suite": r.suite,
                "name": r.name,
                "passed": r.passed,
                "provenance": r.provenance,
                "details": r.details,
            }
            for r in results
        ],
    }
    if args.format == "table":
        for r in results:
            print("[%s] %s :: %s" % ("PASS" if r.passed else "FAIL", r.suite, r.name))
        print("suite %s: %s" % (args.name, "all checks passed" if all_passed else "FAILURES"))
    else:
        _emit(payload, ("suite", args.name), args.format)
    return 0 if all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="terracini",
        description="Exact defect and membership calculus for explicit projective curves.",
    )
    parser.add_argument("--format", choices=("structured", "table"), default="structured",
                        help="structured JSON (default) or a flat table")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_sub(name):
        p = sub.add_parser(name)
        # also accepted after the subcommand; SUPPRESS keeps the global default
        p.add_argument("--format", choices=("structured", "table"), default=argparse.SUPPRESS)
        return p

    def add_query(name, func):
        p = add_sub(name)
        p.add_argument("--curve", required=True, help="curve description file")
        p.add_argument("--points", help="inline point list, e.g. \"0,1\" or \"1,0;2,0\"")
        p.add_argument("--divisor", help="divisor file (JSON)")
        p.add_argument("--system", choices=("hyperplane", "canonical"), default="hyperplane")
        p.set_defaults(func=func)
        return p

    add_query("defect", _cmd_defect)
    add_query("member", _cmd_member)
    add_query("scheme-member", _cmd_scheme_member)

    c = add_sub("construct")
    c.add_argument("name", help="recipe: %s" % ", ".join(sorted(RECIPES)))
    c.add_argument("--r", type=int, default=3)
    c.add_argument("--d", type=int, default=4)
    c.add_argument("--g", type=int, default=3)
    c.add_argument("--contacts", default="0,1")
    c.add_argument("--roots", default="1,2,3,4,5,6,7,8")
    c.add_argument("--fiber-x", dest="fiber_x", default=None)
    c.add_argument("--find-fiber", dest="find_fiber", action="store_true")
    c.add_argument("--output", help="write the curve file here")
    c.set_defaults(func=_cmd_construct)

    pr = add_sub("probe")
    pr.add_argument("--kind", choices=("emptiness", "generic-rank"), required=True)
    pr.add_argument("--curve", required=True)
    pr.add_argument("--system", choices=("hyperplane", "canonical"), default="hyperplane")
    pr.add_argument("--x", type=int, default=2)
    pr.add_argument("--lengths", default="1,1")
    pr.add_argument("--trials", type=int, default=200)
    pr.add_argument("--seed", default="0")
    pr.set_defaults(func=_cmd_probe)

    sc = add_sub("scan")
    sc.add_argument("--kind", choices=("coplanar", "bitangent"), required=True)
    sc.add_argument("--curve", required=True)
    sc.add_argument("--trials", type=int, default=40)
    sc.add_argument("--seed", default="0")
    sc.set_defaults(func=_cmd_scan)

    st = add_sub("suite")
    st.add_argument("action", choices=("run", "list"))
    st.add_argument("name", nargs="?", default="all")
    st.set_defaults(func=_cmd_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except InputError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return 2
    except TerraciniError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("i/o error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
