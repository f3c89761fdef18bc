"""Command-line interface.

Subcommands: bound, indecomposable, table-s, sample, verify-paper.
Exit codes: 0 success, 2 parse error, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .driver import (
    default_threads,
    indecomposability_test,
    index_lower_bound,
    table_s,
)
from .exterior import AlgebraContext
from .forms import FormParseError, parse_form
from .hotchkiss import DEFAULT_BUDGET
from .model import BrauerClassSpec, hamming_weight, symbol_length
from .reproduce import verify_paper
from .sampling import CSV_COLUMNS, sample_campaign

TABLE_HEADERS = ["2", "3", "2^2", "5", "7", "2^3", "3^2", "11", "13", "2^4"]


def _parse_methods(text: str):
    methods = tuple(m.strip() for m in text.split(",") if m.strip())
    for m in methods:
        if m not in ("djp", "refined", "hotchkiss"):
            raise argparse.ArgumentTypeError(f"unknown method {m!r}")
    return methods


def _parse_primes(text: str):
    try:
        primes = tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    if not primes or any(p < 2 for p in primes):
        raise argparse.ArgumentTypeError("primes must be integers >= 2")
    return primes


def _spec_from_args(args) -> BrauerClassSpec:
    ctx = AlgebraContext(args.g)
    expr = parse_form(args.form, args.g)
    return BrauerClassSpec(ctx, expr.to_multivector(ctx), args.period)


def _spec_summary(spec: BrauerClassSpec, form_text: str) -> dict:
    return {
        "g": spec.g,
        "period": spec.period,
        "form": form_text,
        "hamming_weight": hamming_weight(spec),
        "symbol_length": symbol_length(spec),
    }


def cmd_bound(args) -> int:
    spec = _spec_from_args(args)
    report = index_lower_bound(spec, methods=args.methods, primes=args.primes, budget=args.budget)
    payload = report.to_json()
    payload["spec"] = _spec_summary(spec, args.form)
    print(f"period          {spec.period}")
    print(f"symbol length   {payload['spec']['symbol_length']}")
    print(f"cap             {report.cap}")
    print(f"lower bound     {report.lower_bound}")
    print(f"determined      {str(report.determined).lower()}")
    for rec in report.degrees:
        verdicts = ", ".join(
            f"{m}={rec.verdicts.get(m, 'skipped')}" for m in ("djp", "refined", "hotchkiss")
        )
        print(f"  degree {rec.d}: {verdicts}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True, default=str)
        print(f"wrote {args.json}")
    return 0


def cmd_indecomposable(args) -> int:
    spec = _spec_from_args(args)
    result = indecomposability_test(
        spec,
        args.target,
        methods=args.methods,
        primes=args.primes,
        threads=args.threads,
        budget=args.budget,
    )
    print(f"verdict     {result.verdict}")
    print(f"candidates  {result.candidates}")
    if result.witness is not None:
        print(f"witness     {list(result.witness)}")
    print(f"counts      {result.stats['counts']}")
    if args.json:
        payload = {
            "spec": _spec_summary(spec, args.form),
            "target": args.target,
            "verdict": result.verdict,
            "witness": list(result.witness) if result.witness is not None else None,
            "candidates": result.candidates,
            "stats": result.stats,
        }
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True, default=str)
        print(f"wrote {args.json}")
    return 0


def cmd_table_s(args) -> int:
    rows = table_s(args.max_dim)
    width = 6
    print("dim(X)" + "".join(h.rjust(width) for h in TABLE_HEADERS))
    for g, cells in rows:
        print(str(g).rjust(6) + "".join(c.rjust(width) for c in cells))
    return 0


def cmd_sample(args) -> int:
    records, exhausted = sample_campaign(
        args.g,
        args.period,
        args.weight,
        args.count,
        args.seed,
        methods=args.methods,
        primes=args.primes,
        budget=args.budget,
        orbit_uniform=args.orbit_uniform,
        threads=args.threads,
    )
    with open(args.csv, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            writer.writerow(rec.row())
    if exhausted:
        print(
            f"warning: orbit space exhausted, emitted {len(records)} of {args.count}",
            file=sys.stderr,
        )
    print(f"wrote {len(records)} records to {args.csv}")
    return 0


def cmd_verify_paper(args) -> int:
    results = verify_paper(threads=args.threads)
    ok = True
    for name, passed, detail in results:
        print(f"{'PASS' if passed else 'FAIL'}: {name} - {detail}")
        ok = ok and passed
    return 0 if ok else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brauerbounds",
        description="Certified index lower bounds for B-field Brauer classes on very general principally polarized abelian varieties.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_methods=True):
        p.add_argument("--g", type=int, required=True, help="abelian variety dimension")
        p.add_argument("--period", type=int, required=True, help="period candidate n")
        p.add_argument("--form", type=str, required=True, help="two-form, e.g. 'x1^y1 + 2*x2^y3'")
        if with_methods:
            p.add_argument("--methods", type=_parse_methods, default=("djp", "refined"))
            p.add_argument("--primes", type=_parse_primes, default=(2,))
            p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p_bound = sub.add_parser("bound", help="index lower bound for one class")
    add_common(p_bound)
    p_bound.add_argument("--json", type=str, default=None)
    p_bound.set_defaults(func=cmd_bound)

    p_indec = sub.add_parser("indecomposable", help="exhaustive indecomposability certificate")
    add_common(p_indec)
    p_indec.add_argument("--target", type=int, required=True, help="certified index of the class")
    p_indec.add_argument("--threads", type=int, default=default_threads())
    p_indec.add_argument("--json", type=str, default=None)
    p_indec.set_defaults(func=cmd_indecomposable)

    p_table = sub.add_parser("table-s", help="print the failure-degree table")
    p_table.add_argument("--max-dim", type=int, default=12)
    p_table.set_defaults(func=cmd_table_s)

    p_sample = sub.add_parser("sample", help="random orbit campaign to CSV")
    p_sample.add_argument("--g", type=int, required=True)
    p_sample.add_argument("--period", type=int, required=True)
    p_sample.add_argument("--weight", type=int, required=True)
    p_sample.add_argument("--count", type=int, required=True)
    p_sample.add_argument("--seed", type=int, required=True)
    p_sample.add_argument("--methods", type=_parse_methods, default=("djp", "refined"))
    p_sample.add_argument("--primes", type=_parse_primes, default=(2,))
    p_sample.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p_sample.add_argument("--threads", type=int, default=default_threads())
    p_sample.add_argument("--orbit-uniform", action="store_true",
                          help="weight orbits exactly uniformly instead of by qualifying members")
    p_sample.add_argument("--csv", type=str, required=True)
    p_sample.set_defaults(func=cmd_sample)

    p_verify = sub.add_parser("verify-paper", help="run the built-in reproductions")
    p_verify.add_argument("--threads", type=int, default=default_threads())
    p_verify.set_defaults(func=cmd_verify_paper)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
