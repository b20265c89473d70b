"""Command-line front end.

Exit codes: 0 pass, 1 counterexample inside a proven range, 2 usage or input
error, 3 truncated or undecided.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from .complexes import (
    ComplexError,
    SimplicialComplex,
    ci_degrees,
    circuit_lists,
    coloops,
    f_vector,
    from_circuits,
    from_facets,
    h_vector,
    is_complete_intersection,
    is_cone,
    is_matroid,
    is_pure,
    parallel_classes,
    series_classes,
    tutte_h,
)
from .bits import elements_of
from .enumeration import DEFAULT_MAX_N
from .osequences import (
    first_difference,
    is_differentiable,
    is_flawless,
    is_O_sequence,
    is_pure_O_sequence,
    strip_zeros,
)
from .search import DEFAULT_CAP, SearchCapExceeded
from .stanley import brown_colbourn_check, rank3_certificate, stanley_check
from .sweeps import ccc_sweep, enumerate_report, icp_sweep, probe_assumptions

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNDECIDED = 0, 1, 2, 3


class InputError(ValueError):
    pass


def parse_complex(data: dict[str, Any]) -> SimplicialComplex:
    if "n" not in data:
        raise InputError("complex input needs 'n'")
    has_f, has_c = "facets" in data, "circuits" in data
    if has_f == has_c:
        raise InputError("give exactly one of 'facets' or 'circuits'")
    n = int(data["n"])
    if has_f:
        return from_facets(n, data["facets"])
    return from_circuits(n, data["circuits"])


def parse_sequence(data: dict[str, Any]) -> list[int]:
    h = data.get("h")
    if not isinstance(h, list) or not h or not all(isinstance(x, int) and x >= 0 for x in h):
        raise InputError("'h' must be a nonempty list of nonnegative integers")
    return h


def load_input(args: argparse.Namespace) -> dict[str, Any]:
    if args.data is not None:
        text = args.data
    elif args.input == "-":
        text = sys.stdin.read()
    elif args.input:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    else:
        raise InputError("no input: use -i FILE, -i - or --data JSON")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("input must be a JSON object")
    return data


def complex_report(c: SimplicialComplex, cap: int) -> tuple[dict[str, Any], int]:
    matroid = is_matroid(c)
    h = h_vector(c)
    report: dict[str, Any] = {
        "kind": "complex",
        "n": c.n,
        "facets": c.facet_lists(),
        "loops": elements_of(c.loops),
        "f": f_vector(c),
        "h": h,
        "circuits": circuit_lists(c),
        "matroid": matroid,
        "pure": is_pure(c),
        "cone": is_cone(c),
        "coloops": coloops(c),
        "complete_intersection": is_complete_intersection(c),
        "series_classes": series_classes(c),
        "parallel_classes": parallel_classes(c),
    }
    if report["complete_intersection"]:
        report["ci_degrees"] = ci_degrees(c)
    code = EXIT_OK
    if matroid:
        report["brown_colbourn"] = brown_colbourn_check(h).to_json("holds")
        t = tutte_h(c)
        report["tutte_h"] = t
        report["tutte_agrees"] = t == h
        v = stanley_check(c, cap)
        report["stanley"] = v.to_json("pure")
        if v.outcome is None:
            code = EXIT_UNDECIDED
        elif v.outcome is False or not report["brown_colbourn"]["holds"] or t != h:
            code = EXIT_FAIL
    return report, code


def sequence_report(h: Sequence[int], cap: int) -> tuple[dict[str, Any], int]:
    v = is_pure_O_sequence(h, cap)
    report = {
        "kind": "sequence",
        "h": list(h),
        "o_sequence": is_O_sequence(h),
        "first_difference": first_difference(h),
        "differentiable": is_differentiable(h),
        "flawless": is_flawless(strip_zeros(h)),
        "purity": v.to_json("pure"),
    }
    return report, EXIT_UNDECIDED if v.outcome is None else EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    data = load_input(args)
    if "h" in data:
        return sequence_report(parse_sequence(data), args.cap_nodes)
    return complex_report(parse_complex(data), args.cap_nodes)


def cmd_witness(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    h = parse_sequence(load_input(args))
    v = is_pure_O_sequence(h, args.cap_nodes)
    return {"h": h, **v.to_json("pure")}, EXIT_UNDECIDED if v.outcome is None else EXIT_OK


def cmd_certify(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    c = parse_complex(load_input(args))
    if c.rank > 3:
        raise InputError("out of theorem scope: rank above 3")
    if not is_matroid(c):
        raise InputError("input is not a matroid")
    try:
        cert = rank3_certificate(c, args.cap_nodes)
    except SearchCapExceeded as exc:
        return {"verified": "undecided", "truncated": True, "error": str(exc)}, EXIT_UNDECIDED
    ok = cert.verify()
    return {"verified": ok, "certificate": cert.to_json()}, EXIT_OK if ok else EXIT_FAIL


def cmd_enumerate(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    report = enumerate_report(
        args.n,
        rank=args.rank,
        iso=args.iso,
        certify=args.certify,
        list_matroids=args.list,
        cap=args.cap_nodes,
        n_cap=args.max_n,
        jobs=args.jobs,
    )
    if report.get("failures"):
        return report, EXIT_FAIL
    return report, EXIT_UNDECIDED if report.get("undecided") else EXIT_OK


def _sweep_code(report: dict[str, Any], in_range: bool) -> int:
    if report["failures"] and in_range:
        return EXIT_FAIL
    if report["undecided"]:
        return EXIT_UNDECIDED
    return EXIT_OK


def cmd_sweep_ccc(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    report = ccc_sweep(args.max_r, args.max_e, args.cap_nodes, args.jobs, args.sample, args.seed)
    return report, _sweep_code(report, report["in_proven_range"])


def cmd_sweep_icp(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    report = icp_sweep(args.max_r, args.max_e, args.cap_nodes)
    return report, _sweep_code(report, report["in_proven_range"])


def cmd_probe(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    report = probe_assumptions(args.max_n, args.cap_nodes, args.jobs, n_cap=max(args.max_n, DEFAULT_MAX_N))
    in_range = any(x["in_proven_range"] for x in report["a_failures"] + report["b_failures"])
    if in_range:
        return report, EXIT_FAIL
    return report, EXIT_UNDECIDED if report["b_undecided"] else EXIT_OK


def render_table(report: dict[str, Any]) -> str:
    """Flat ``key  value`` rendering of a report; lists of records show as counts."""
    rows: list[tuple[str, str]] = []

    def walk(prefix: str, value: Any) -> None:
        if isinstance(value, dict):
            for k, v in value.items():
                walk(f"{prefix}.{k}" if prefix else str(k), v)
        elif isinstance(value, list) and any(isinstance(x, (dict, list)) for x in value):
            rows.append((prefix, f"[{len(value)} item{'' if len(value) == 1 else 's'}]"))
        else:
            rows.append((prefix, json.dumps(value)))

    walk("", report)
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows) + "\n"


def positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--cap-nodes", type=positive, default=DEFAULT_CAP, help="search node budget")
    common.add_argument("--jobs", type=positive, default=1, help="worker processes")
    common.add_argument("--seed", type=int, default=0)

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("-i", "--input", help="JSON file, or - for stdin")
    source.add_argument("--data", help="inline JSON payload")

    parser = argparse.ArgumentParser(prog="matroid-oseq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common, source], help="report on a complex or a sequence")
    p.set_defaults(func=cmd_analyze)
    p = sub.add_parser("witness", parents=[common, source], help="decide purity of a sequence")
    p.set_defaults(func=cmd_witness)
    p = sub.add_parser("certify-rank3", parents=[common, source], help="rank-3 case-analysis certificate")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("enumerate", parents=[common], help="enumerate loopless matroids")
    p.add_argument("--n", type=positive, required=True)
    p.add_argument("--rank", type=int)
    p.add_argument("--iso", action="store_true", help="one matroid per isomorphism class")
    p.add_argument("--certify", action="store_true", help="certify every matroid of rank <= 3")
    p.add_argument("--list", action="store_true", help="include the facets of every matroid")
    p.add_argument("--max-n", type=positive, default=DEFAULT_MAX_N, help="refuse larger ground sets")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("sweep-ccc", parents=[common], help="shifted-sum purity sweep")
    p.add_argument("--max-r", type=positive, default=4)
    p.add_argument("--max-e", type=positive, default=3)
    p.add_argument("--sample", type=positive, help="check a seeded sample of this many pairs")
    p.set_defaults(func=cmd_sweep_ccc)

    p = sub.add_parser("sweep-icp", parents=[common], help="interval property sweep")
    p.add_argument("--max-r", type=positive, default=4)
    p.add_argument("--max-e", type=positive, default=3)
    p.set_defaults(func=cmd_sweep_icp)

    p = sub.add_parser("probe-assumptions", parents=[common], help="probe assumptions (a) and (b)")
    p.add_argument("--max-n", type=positive, default=7)
    p.set_defaults(func=cmd_probe)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        report, code = args.func(args)
    except (InputError, ComplexError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render_table(report) if args.format == "table" else json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
