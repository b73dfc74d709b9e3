"""Command-line surface.

Subcommands:
  analyze       full report on a set file: representation table, unique
                sums, balanced/irreducible flags, dimension, span size,
                ratio, and all size-bound checks
  construct     build a balanced or no-unique-sum set and emit it with a
                verification block
  search        exact minimum balanced / no-unique-sum subset with an
                exhaustion certificate
  increment     run the density-increment iteration on a set and emit the
                trace
  verify-paper  run the acceptance suite; exit 0 only if everything passes

Exit codes: 0 success, 1 predicate or invariant failure, 2 usage error,
3 cap exceeded.  Structured output is versioned JSON, byte-identical for
identical inputs regardless of --threads.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from typing import Optional

from .acceptance import format_report, run_acceptance
from .balanced import is_irreducible
from .config import DEFAULT, RunConfig
from .construct import (
    balanced_multiplicative,
    balanced_search,
    grid_construction,
    sumset_construction,
)
from .errors import SetFileError, SizeLimitError, UniqueSumsError
from .fileio import dump_json, load_set, schema, set_to_dict
from .groups import GSet, has_no_unique_sum, is_balanced, make_group, minspan, sum_table, unique_sums
from .increment import increment_iterate
from .search import bounds_dashboard, smallest_balanced, smallest_no_unique_sum
from .span import dimension_ratio, span_bounds_report

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _config_from(args) -> RunConfig:
    cfg = DEFAULT
    updates = {}
    if getattr(args, "threads", None):
        updates["threads"] = args.threads
    if getattr(args, "seed", None) is not None:
        updates["seed"] = args.seed
    if getattr(args, "format", None):
        updates["output"] = args.format
    for name in ("cap_span", "cap_dimension", "cap_search"):
        value = getattr(args, name, None)
        if value is not None:
            updates[name.replace("cap_", "") + "_cap"] = value
    return replace(cfg, **updates)


def _emit(doc: dict, cfg: RunConfig, human: str) -> None:
    if cfg.output == "structured":
        sys.stdout.write(dump_json(doc))
    else:
        sys.stdout.write(human + "\n")


def _analyze_doc(A: GSet, cfg: RunConfig) -> dict:
    table = sum_table(A, threads=cfg.threads)
    uniq = unique_sums(A)
    balanced = is_balanced(A)
    doc = {
        "schema": schema("analysis"),
        "seed": cfg.seed,
        "set": set_to_dict(A),
        "ordered_counts": {str(list(g)): c for g, c in sorted(table.ordered.items())},
        "unique_sums": [list(g) for g in uniq],
        "no_unique_sum": uniq.is_empty(),
        "balanced": balanced,
    }
    try:
        doc["irreducible"] = is_irreducible(A, cfg) if balanced else None
    except SizeLimitError:
        doc["irreducible"] = "cap-exceeded"
    try:
        bounds = span_bounds_report(A, cfg)
        doc["dimension"] = bounds.dim
        doc["span_size"] = bounds.span_size
        doc["span_bounds_ok"] = bounds.ok
        if bounds.dim > 0:
            ratio = dimension_ratio(A, cfg)
            doc["ratio"] = str(ratio.ratio)
            doc["ratio_inequality_ok"] = ratio.span_inequality_ok
    except SizeLimitError:
        doc["dimension"] = "cap-exceeded"
    if balanced:
        p = A.group.smallest_prime
        doc["balanced_size_floor_ok"] = 2 ** (len(A) - 1) >= p
        try:
            ms = minspan(A, cfg.minspan_cap)
            doc["minspan"] = ms
            if doc.get("irreducible") is True:
                doc["irreducible_minspan_floor_ok"] = 2 ** (len(A) - 1) >= ms
        except SizeLimitError:
            doc["minspan"] = "cap-exceeded"
    return doc


def _cmd_analyze(args) -> int:
    cfg = _config_from(args)
    A = load_set(args.set)
    doc = _analyze_doc(A, cfg)
    lines = [f"set of {len(A)} elements in {list(A.group.moduli)}"]
    lines.append(f"  no unique sum: {doc['no_unique_sum']}")
    if not doc["no_unique_sum"]:
        lines.append(f"  unique sums: {doc['unique_sums']}")
    lines.append(f"  balanced: {doc['balanced']} (irreducible: {doc.get('irreducible')})")
    lines.append(f"  dimension: {doc.get('dimension')}, span size: {doc.get('span_size')}")
    _emit(doc, cfg, "\n".join(lines))
    checks = [v for k, v in doc.items() if k.endswith("_ok") and v is not None]
    return EXIT_OK if all(c is not False for c in checks) else EXIT_FAIL


def _cmd_construct(args) -> int:
    cfg = _config_from(args)
    p = args.prime
    if args.kind == "multiplicative":
        result = balanced_multiplicative(p)
    elif args.kind == "search":
        result = balanced_search(p, args.max_size or p, cfg)
        if result is None:
            print(f"no balanced subset of Z/{p}Z within the size limit", file=sys.stderr)
            return EXIT_FAIL
    elif args.kind == "grid":
        result = grid_construction(balanced_multiplicative(p))
    else:
        result = sumset_construction(balanced_multiplicative(p))
    verification = {
        "balanced": is_balanced(result),
        "no_unique_sum": has_no_unique_sum(result),
        "size": len(result),
    }
    doc = {
        "schema": schema("construction"),
        "seed": cfg.seed,
        "kind": args.kind,
        "prime": p,
        "set": set_to_dict(result),
        "verification": verification,
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dump_json(doc))
    human = (
        f"{args.kind} construction for p={p}: {len(result)} elements, "
        f"balanced={verification['balanced']}, no_unique_sum={verification['no_unique_sum']}"
    )
    _emit(doc, cfg, human)
    return EXIT_OK


def _cmd_search(args) -> int:
    cfg = _config_from(args)
    group = make_group([int(x) for x in args.group.split(",")])
    fn = smallest_no_unique_sum if args.m else smallest_balanced
    cert = fn(group, args.max_size, cfg)
    if cert is None:
        doc = {
            "schema": schema("certificate"),
            "seed": cfg.seed,
            "kind": "m-value" if args.m else "b-value",
            "group": list(group.moduli),
            "value": None,
            "witness": None,
            "search_space": f"all sizes up to {args.max_size or group.order} exhausted",
            "status": "none",
        }
        _emit(doc, cfg, f"no qualifying subset of {list(group.moduli)} exists")
        return EXIT_OK
    doc = {**cert.to_dict(), "seed": cfg.seed}
    human = (
        f"value {cert.value} for {list(group.moduli)}, witness "
        f"{[list(e) for e in cert.witness]}"
    )
    _emit(doc, cfg, human)
    return EXIT_OK


def _cmd_increment(args) -> int:
    cfg = _config_from(args)
    A = load_set(args.set)
    trace = increment_iterate(A, cfg=cfg, force=args.force)
    doc = {"schema": schema("trace"), "seed": cfg.seed, **trace.to_dict()}
    human = (
        f"dimension {trace.dim}, {len(trace.records)} step(s), "
        f"exit: {trace.exit_branch} ({trace.exit_reason})"
    )
    _emit(doc, cfg, human)
    return EXIT_OK


def _cmd_dashboard(args) -> int:
    cfg = _config_from(args)
    primes = [int(x) for x in args.primes.split(",")]
    doc = {**bounds_dashboard(primes, cfg), "seed": cfg.seed}
    lines = []
    for row in doc["rows"]:
        lines.append(
            f"p={row['p']}: b={row['b']} ({row['b_status']}), m={row['m']} "
            f"({row['m_status']}), sumset<= {row['sumset_size']}"
        )
    if doc["violations"]:
        lines.append(f"VIOLATIONS: {doc['violations']}")
    _emit(doc, cfg, "\n".join(lines))
    return EXIT_FAIL if doc["violations"] else EXIT_OK


def _cmd_verify_paper(args) -> int:
    cfg = _config_from(args)
    report = run_acceptance(cfg, quick=args.quick)
    if cfg.output == "structured":
        sys.stdout.write(dump_json(report))
    else:
        sys.stdout.write(format_report(report) + "\n")
    return EXIT_OK if report["passed"] else EXIT_FAIL


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threads", type=int, default=None, help="worker threads (results never depend on this)")
    p.add_argument("--seed", type=int, default=None, help="seed for randomized suites, echoed in output")
    p.add_argument("--format", choices=["human", "structured"], default=None)
    p.add_argument("--cap-span", dest="cap_span", type=int, default=None)
    p.add_argument("--cap-dimension", dest="cap_dimension", type=int, default=None)
    p.add_argument("--cap-search", dest="cap_search", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uniquesums",
        description="exact unique-sum / balanced-set computations in finite abelian groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report on a set file")
    p.add_argument("--set", required=True, help="path to a set file")
    _add_common(p)
    p.set_defaults(fn=_cmd_analyze)

    p = sub.add_parser("construct", help="build a balanced or no-unique-sum set")
    p.add_argument("--kind", choices=["multiplicative", "search", "grid", "sumset"], required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--out", default=None, help="also write the document to a file")
    _add_common(p)
    p.set_defaults(fn=_cmd_construct)

    p = sub.add_parser("search", help="exact minimum subset with a certificate")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--m", action="store_true", help="smallest set with no unique sum")
    group.add_argument("--b", action="store_true", help="smallest balanced set")
    p.add_argument("--group", required=True, help="comma-separated cyclic factor orders")
    p.add_argument("--max-size", type=int, default=None)
    _add_common(p)
    p.set_defaults(fn=_cmd_search)

    p = sub.add_parser("increment", help="density-increment trace for a set file")
    p.add_argument("--set", required=True)
    p.add_argument("--force", action="store_true", help="run the pipeline even when hypotheses fail")
    _add_common(p)
    p.set_defaults(fn=_cmd_increment)

    p = sub.add_parser("dashboard", help="b/m table with construction sizes and checks")
    p.add_argument("--primes", required=True, help="comma-separated primes")
    _add_common(p)
    p.set_defaults(fn=_cmd_dashboard)

    p = sub.add_parser("verify-paper", help="run the acceptance suite")
    p.add_argument("--quick", action="store_true", help="reduced instance sizes")
    _add_common(p)
    p.set_defaults(fn=_cmd_verify_paper)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SetFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeLimitError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except UniqueSumsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
