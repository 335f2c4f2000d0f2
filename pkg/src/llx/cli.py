"""Command-line front end.

    llx check   --graph G --p P [--method M] [--mu auto|X|FILE]
    llx findmu  --graph G --p P [--safety S]
    llx app transversal --graph G --classes C [--montecarlo T --seed S]
    llx app latin --matrix M.csv [...]
    llx app ksat --cnf F.cnf [...]

A JSON report goes to stdout.  Exit status: 0 certified, 1 not certified,
2 input or resource error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

import numpy as np

from . import io
from .applications import (
    build_transversal_dependency,
    check_ksat,
    check_latin,
    check_transversal,
    ksat_sampler,
    latin_sampler,
    monte_carlo,
    transversal_sampler,
)
from .criteria import (
    DEFAULT_SHEARER_CAP,
    METHODS,
    check_classical,
    check_improved,
    check_shearer,
)
from .errors import InvalidInputError, ResourceLimitError
from .fixedpoint import find_mu
from .graph import DEFAULT_ENUMERATION_CAP
from .hardcore import DEFAULT_TOL, as_activity

SCHEMA = "llx/1"

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _emit(payload: dict, args: argparse.Namespace, summary: str) -> None:
    json.dump(payload, sys.stdout, indent=2, default=_json_default)
    sys.stdout.write("\n")
    if not args.json_only:
        print(summary, file=sys.stderr)


def _json_default(obj: Any):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"not JSON serialisable: {type(obj).__name__}")


# -- check -------------------------------------------------------------------


def _resolve_mu(args, g):
    if args.mu == "auto":
        return None
    return as_activity(g, io.parse_values(args.mu, g), "activity")


def cmd_check(args: argparse.Namespace) -> int:
    g = io.read_graph(args.graph)
    p = as_activity(g, io.parse_values(args.p, g), "probability")
    mu = _resolve_mu(args, g)
    cap = args.max_vertices
    methods = METHODS if args.method == "all" else (args.method,)
    reports = []
    skipped = {}
    for method in methods:
        if method == "classical":
            mu_c = mu
            if mu_c is None:
                mu_c, _ = find_mu(g, p)
                if mu_c is None:
                    skipped[method] = "no activities given and the fixed-point search failed"
                    continue
            reports.append(check_classical(g, p, mu_c, tol=args.tol))
        elif method == "improved":
            reports.append(
                check_improved(g, p, mu, tol=args.tol, cap=cap or DEFAULT_ENUMERATION_CAP)
            )
        else:
            try:
                reports.append(
                    check_shearer(g, p, tol=args.tol, max_vertices=cap or DEFAULT_SHEARER_CAP)
                )
            except ResourceLimitError as exc:
                if args.method != "all":
                    raise
                skipped[method] = str(exc)
    holds = any(r.holds for r in reports)
    if len(methods) == 1 and reports:
        payload = {"schema": SCHEMA, "command": "check", **reports[0].to_dict()}
    else:
        payload = {
            "schema": SCHEMA,
            "command": "check",
            "method": "all",
            "holds": holds,
            "reports": [r.to_dict() for r in reports],
            "skipped": skipped,
        }
    lines = [
        f"{r.method}: {'HOLDS' if r.holds else 'fails'}"
        + (f", lower bound {r.lower_bound:.6g}" if r.lower_bound is not None else "")
        for r in reports
    ]
    lines += [f"{m}: skipped ({why})" for m, why in skipped.items()]
    _emit(payload, args, "\n".join(lines))
    return EXIT_OK if holds else EXIT_FAIL


# -- findmu ------------------------------------------------------------------


def cmd_findmu(args: argparse.Namespace) -> int:
    g = io.read_graph(args.graph)
    p = as_activity(g, io.parse_values(args.p, g), "probability")
    mu, trace = find_mu(g, p, safety=args.safety)
    payload: dict = {
        "schema": SCHEMA,
        "command": "findmu",
        "safety": args.safety,
        "verdict": trace.verdict.value,
        "found": mu is not None,
    }
    if mu is not None:
        report = check_improved(g, p, mu, tol=args.tol)
        payload["mu"] = {str(lab): float(m) for lab, m in zip(g.labels, mu)}
        payload["vertices"] = [v.to_dict() for v in report.vertices]
        payload["lower_bound"] = report.lower_bound
        summary = f"found mu after {trace.iterations} iterations; min slack " + (
            f"{min(v.slack for v in report.vertices):.3g}" if report.vertices else "n/a"
        )
    else:
        payload["mu"] = None
        payload["trace"] = trace.to_dict(g.labels)
        summary = f"no certifying mu: {trace.verdict.value} after {trace.iterations} iterations"
    _emit(payload, args, summary)
    return EXIT_OK if mu is not None else EXIT_FAIL


# -- app ---------------------------------------------------------------------


def cmd_app(args: argparse.Namespace) -> int:
    if args.montecarlo and args.seed is None:
        raise InvalidInputError("--montecarlo needs --seed")
    cap = args.max_vertices or DEFAULT_ENUMERATION_CAP
    if args.kind == "transversal":
        if not args.graph or not args.classes:
            raise InvalidInputError("transversal needs --graph and --classes")
        pg = io.read_classes(args.classes, io.read_graph(args.graph))
        report = check_transversal(pg, tol=args.tol, cap=cap)
        sampler = transversal_sampler(build_transversal_dependency(pg)) if args.montecarlo else None
    elif args.kind == "latin":
        if not args.matrix:
            raise InvalidInputError("latin needs --matrix")
        a = io.read_matrix(args.matrix)
        report = check_latin(a, tol=args.tol, cap=cap)
        sampler = latin_sampler(a) if args.montecarlo else None
    else:
        if not args.cnf:
            raise InvalidInputError("ksat needs --cnf")
        f = io.read_dimacs(args.cnf)
        report = check_ksat(f, tol=args.tol, cap=cap)
        sampler = ksat_sampler(f) if args.montecarlo else None
    payload = {"schema": SCHEMA, "command": "app", "application": args.kind, **report.to_dict()}
    payload["seed"] = args.seed
    summary = f"{args.kind}: {'CERTIFIED' if report.holds else 'not certified'}"
    if report.lower_bound is not None:
        summary += f", lower bound {report.lower_bound:.6g}"
    if sampler is not None:
        mc = monte_carlo(sampler, args.montecarlo, args.seed)
        payload["montecarlo"] = mc.to_dict()
        summary += f"; empirical {mc.rate:.6g} [{mc.low:.6g}, {mc.high:.6g}]"
    _emit(payload, args, summary)
    return EXIT_OK if report.holds else EXIT_FAIL


# -- wiring ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="llx", description=__doc__.splitlines()[0] if __doc__ else None)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--max-vertices", type=int, default=None,
                       help="enumeration / Shearer size cap")
        p.add_argument("--json-only", action="store_true",
                       help="suppress the human-readable summary on stderr")

    c = sub.add_parser("check", help="certify a graph and probability vector")
    c.add_argument("--graph", required=True)
    c.add_argument("--p", required=True, help="scalar, JSON map or file")
    c.add_argument("--method", choices=(*METHODS, "all"), default="improved")
    c.add_argument("--mu", default="auto", help="'auto', scalar, JSON map or file")
    common(c)
    c.set_defaults(func=cmd_check)

    f = sub.add_parser("findmu", help="search certifying activities by fixed-point iteration")
    f.add_argument("--graph", required=True)
    f.add_argument("--p", required=True)
    f.add_argument("--safety", type=float, default=0.999)
    common(f)
    f.set_defaults(func=cmd_findmu)

    a = sub.add_parser("app", help="run one of the applications")
    a.add_argument("kind", choices=("transversal", "latin", "ksat"))
    a.add_argument("--graph")
    a.add_argument("--classes")
    a.add_argument("--matrix")
    a.add_argument("--cnf")
    a.add_argument("--montecarlo", type=int, default=0, metavar="TRIALS")
    a.add_argument("--seed", type=int, default=None)
    common(a)
    a.set_defaults(func=cmd_app)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        hint = " (try --method improved)" if getattr(args, "method", None) == "shearer" else ""
        print(f"llx: resource limit: {exc}{hint}", file=sys.stderr)
        return EXIT_INPUT
    except (InvalidInputError, OSError) as exc:
        print(f"llx: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
