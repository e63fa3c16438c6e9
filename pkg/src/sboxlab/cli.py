"""Command-line front end: analyze, enumerate, verify-facts, check-implications.

Exit codes: 0 success, 1 failed checks, 2 usage or input errors. JSON output
is byte-stable for identical inputs (sorted keys, no timestamps).
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .core import parse_sbox
from .enumeration import enumerate_strong
from .predicates import analyze
from .verification import check_implications, verify_facts

USAGE_ERROR = 2
CHECK_FAILED = 1


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _cmd_analyze(args) -> int:
    try:
        box = parse_sbox(args.sbox)
    except ValueError as exc:
        print(f"error: invalid S-box: {exc}", file=sys.stderr)
        return USAGE_ERROR
    if not box.bijective:
        print("error: invalid S-box: table is not a permutation "
              "(duplicate output values)", file=sys.stderr)
        return USAGE_ERROR
    report = analyze(box)
    if args.json:
        print(_dump_json(report.to_json_dict()))
        return 0
    flat = report.to_json_dict()
    width = max(len(k) for k in flat)
    for key in sorted(flat):
        print(f"{key:<{width}}  {flat[key]}")
    return 0


def _cmd_enumerate(args) -> int:
    emit = args.emit is not None
    result = enumerate_strong(shards=args.shards, shard_id=args.shard_id,
                              emit_tables=emit, threads=args.threads)
    if emit:
        with open(args.emit, "w") as handle:
            for table in result.strong_list:
                handle.write(",".join(str(v) for v in table) + "\n")
    summary = {
        "strong_count": result.strong_count,
        "very_strong_count": result.very_strong_count,
        "translation_closure": result.translation_closure,
        "very_strong_translation_closure": result.very_strong_translation_closure,
        "shards": result.shards,
        "shard_id": result.shard_id,
        "nodes_visited": result.nodes_visited,
        "leaves_visited": result.leaves_visited,
        "emitted_to": args.emit,
    }
    if args.json:
        print(_dump_json(summary))
    else:
        print(f"strong: {result.strong_count}  "
              f"(x16 translations: {result.translation_closure})")
        print(f"very strong: {result.very_strong_count}  "
              f"(x16 translations: {result.very_strong_translation_closure})")
        print(f"shard {result.shard_id}/{result.shards}  "
              f"nodes={result.nodes_visited}  leaves={result.leaves_visited}")
        if emit:
            print(f"strong tables written to {args.emit}")
    return 0


def _cmd_verify_facts(args) -> int:
    results = verify_facts(args.fixtures)
    if args.json:
        payload = {
            "ok": all(r.passed for r in results),
            "facts": [
                {"id": r.id, "status": r.status, "error": r.error,
                 "claims": [{"sbox": c.sbox, "measure": c.measure,
                             "relation": c.relation, "actual": c.actual,
                             "ok": c.ok} for c in r.claims]}
                for r in results
            ],
        }
        print(_dump_json(payload))
    else:
        for r in results:
            print(f"[{r.status.upper():5s}] {r.id}")
            if r.error:
                print(f"        {r.error}")
            for c in r.claims:
                if not c.ok:
                    print(f"        {c.describe()}")
    return 0 if all(r.passed for r in results) else CHECK_FAILED


def _cmd_check_implications(args) -> int:
    try:
        dims = [int(d) for d in args.dims.split(",") if d.strip()]
    except ValueError:
        print(f"error: --dims must be comma-separated integers, got {args.dims!r}",
              file=sys.stderr)
        return USAGE_ERROR
    try:
        report = check_implications(args.samples, args.seed, dims,
                                    threads=args.threads)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    if args.json:
        print(_dump_json(report.to_json_dict()))
    else:
        for o in report.outcomes:
            flag = "ok" if o.ok else f"{len(o.violations)} VIOLATION(S)"
            print(f"[m={o.dim}] {o.name}: holds={o.holds} "
                  f"vacuous={o.vacuous} {flag}")
            for v in o.violations:
                print(f"        witness {v['table']}")
                print(f"        measures {v['measures']}")
                print(f"        oracle   {v['oracle']}")
    return 0 if report.ok else CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sboxlab",
        description="Security measures, classification and exhaustive "
                    "search for small S-boxes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="measure one S-box")
    p.add_argument("sbox", help="decimal CSV (any dimension) or 16 hex digits")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("enumerate",
                       help="count (and optionally list) strong 4-bit S-boxes")
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--shard-id", type=int, default=0)
    p.add_argument("--emit", metavar="FILE",
                   help="write the strong tables, one decimal CSV per line")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("verify-facts", help="check every pinned fact fixture")
    p.add_argument("--fixtures", metavar="DIR",
                   help="fixture directory (default: bundled data)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify_facts)

    p = sub.add_parser("check-implications",
                       help="test the theorem-shaped implications on samples")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--dims", default="4", help="comma-separated, e.g. 3,4,5")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_check_implications)
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
