"""Command-line front end for the rank-count toolkit.

Every subcommand assembles an OutputRecord (command, parameters,
results, status) and renders it as text, CSV, or JSON.  Structured
output is deterministic: stable key order, big integers as decimal
strings, identical content for any --threads value.

Exit codes: 0 success (including conjecture mismatches, which are
reported but never gate), 1 a verified claim failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import dataclass, field
from typing import Any, Iterator

from . import __version__
from .bounds import (
    BUDGET_CAP,
    ConstantTable,
    envelope,
    error_budget,
    hardy_ramanujan,
    lehmer_bounds,
    lehmer_estimate,
    lemma_threshold,
    main_term,
    ratio_bound,
)
from .cache import CacheFormatError, load_table, save_table
from .convexity import scan_region
from .core import (
    RankTable,
    a_third_exact,
    build_rank_table,
    partition_number,
    partition_numbers,
    residue_count,
)
from .maxprod import (
    CLOSED_FORM_START,
    closed_form,
    conjecture_max_mod2,
    max_table,
    verify_closed_forms,
    verify_replacement_rules,
    verify_small_tables,
)
from .reference import counts_column

__all__ = ["OutputRecord", "main", "record_from_json", "record_to_json",
           "render"]

# Integers at or beyond 2**53 lose precision in common JSON readers, so
# they serialize as decimal strings; the parser restores them.
_BIG = 1 << 53
_INT_RE = re.compile(r"-?[0-9]+\Z")

# Scan thresholds above which the product inequality is expected to
# hold, keyed by (t, r); t = 3 is proven, t = 2 conjectured.
_SCAN_MIN = {(3, 0): 12, (3, 1): 11, (3, 2): 11, (2, 0): 11, (2, 1): 12}

_EXIT_BY_STATUS = {"ok": 0, "violation-found": 1, "conjecture-mismatch": 0}


class UsageError(Exception):
    """Invalid flag combination or a request the table cannot serve."""


def _plain(value: Any) -> Any:
    """Normalize to JSON-shaped data (tuples become lists) so records
    compare equal after a serialization round trip."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (int, float, str)):
        return value
    return str(value)


@dataclass
class OutputRecord:
    """One command's machine-readable outcome."""
    command: str
    parameters: dict[str, Any]
    results: dict[str, Any]
    status: str = "ok"

    def __post_init__(self) -> None:
        self.parameters = _plain(self.parameters)
        self.results = _plain(self.results)

    def as_dict(self) -> dict[str, Any]:
        return {"command": self.command, "parameters": self.parameters,
                "results": self.results, "status": self.status}


def _encode(value: Any) -> Any:
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value) if abs(value) >= _BIG else value
    if isinstance(value, list):
        return [_encode(v) for v in value]
    if isinstance(value, dict):
        return {k: _encode(v) for k, v in value.items()}
    return value


def _decode(value: Any) -> Any:
    if isinstance(value, str) and _INT_RE.match(value):
        return int(value)
    if isinstance(value, list):
        return [_decode(v) for v in value]
    if isinstance(value, dict):
        return {k: _decode(v) for k, v in value.items()}
    return value


def record_to_json(record: OutputRecord) -> str:
    return json.dumps(_encode(record.as_dict()), indent=2)


def record_from_json(text: str) -> OutputRecord:
    data = json.loads(text)
    decoded = {"command": data["command"],
               "parameters": _decode(data["parameters"]),
               "results": _decode(data["results"]),
               "status": data["status"]}
    return OutputRecord(**decoded)


def _is_partition(value: Any) -> bool:
    return isinstance(value, list) and all(
        isinstance(v, int) and not isinstance(v, bool) for v in value)


def _flatten(prefix: str, value: Any) -> Iterator[tuple[str, Any]]:
    """Depth-first (path, scalar) pairs; partitions and sets of
    partitions collapse to single readable cells."""
    if isinstance(value, dict):
        for k, v in value.items():
            yield from _flatten(f"{prefix}.{k}" if prefix else k, v)
    elif isinstance(value, list):
        if value and _is_partition(value):
            yield prefix, "(" + ",".join(map(str, value)) + ")"
        elif value and all(_is_partition(v) for v in value):
            yield prefix, "{" + " ".join(
                "(" + ",".join(map(str, p)) + ")" for p in value) + "}"
        elif not value:
            yield prefix, "[]"
        else:
            for i, v in enumerate(value):
                yield from _flatten(f"{prefix}[{i}]", v)
    else:
        yield prefix, value


def _pairs(record: OutputRecord) -> list[tuple[str, Any]]:
    pairs: list[tuple[str, Any]] = [("command", record.command),
                                    ("status", record.status)]
    pairs.extend(_flatten("param", record.parameters))
    pairs.extend(_flatten("result", record.results))
    return pairs


def render_text(record: OutputRecord) -> str:
    return "\n".join(f"{key} = {value}" for key, value in _pairs(record))


def render_csv(record: OutputRecord) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["key", "value"])
    for key, value in _pairs(record):
        writer.writerow([key, value])
    return out.getvalue().rstrip("\n")


def render(record: OutputRecord, fmt: str) -> str:
    if fmt == "json":
        return record_to_json(record)
    if fmt == "csv":
        return render_csv(record)
    return render_text(record)


# ---------------------------------------------------------------- table


def _table_for(args: argparse.Namespace, need: int) -> RankTable:
    """A table holding counts up to at least `need`: from the cache
    when present and big enough, otherwise built at --n-max (and saved
    back to the cache when one was named)."""
    if need > args.n_max:
        raise UsageError(
            f"this command requires --n-max >= {need} (got {args.n_max})")
    path = args.table_cache
    if path and os.path.exists(path):
        cached = load_table(path)
        if cached.n_max >= need:
            return cached
    table = build_rank_table(args.n_max)
    if path:
        save_table(table, path)
    return table


# ------------------------------------------------------------- commands


def _cmd_count(args: argparse.Namespace) -> OutputRecord:
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    table = _table_for(args, args.n)
    value = residue_count(table, args.r, args.t, args.n)
    params = {"r": args.r, "t": args.t, "n": args.n, "n_max": args.n_max}
    results: dict[str, Any] = {"count": value}
    if args.show_row:
        row = table.row(args.n)
        lo = 0 if args.n == 0 else 1 - args.n
        results["row"] = [[lo + i, c] for i, c in enumerate(row)]
    return OutputRecord("count", params, results)


def _cmd_rank_table(args: argparse.Namespace) -> OutputRecord:
    lo = 0 if args.lo is None else args.lo
    hi = args.hi if args.hi is not None else (
        args.lo if args.lo is not None else None)
    if hi is not None and (lo < 0 or hi < lo):
        raise UsageError("row range must satisfy 0 <= --from <= --to")
    table = _table_for(args, hi if hi is not None else 0)
    params: dict[str, Any] = {"n_max": args.n_max}
    results: dict[str, Any] = {"n_max": table.n_max,
                               "partitions_of_n_max": partition_number(
                                   table.n_max)}
    if hi is not None:
        params["from"] = lo
        params["to"] = hi
        rows = []
        for n in range(lo, hi + 1):
            row = table.row(n)
            mlo = 0 if n == 0 else 1 - n
            rows.append({"n": n,
                         "counts": [[mlo + i, c] for i, c in enumerate(row)]})
        results["rows"] = rows
    if args.table_cache:
        results["cache"] = args.table_cache
    return OutputRecord("rank-table", params, results)


def _cmd_maxn(args: argparse.Namespace) -> OutputRecord:
    if args.n is not None and (args.lo is not None or args.hi is not None):
        raise UsageError("pass --n or --from/--to, not both")
    if args.n is not None:
        lo = hi = args.n
    else:
        if args.hi is None:
            raise UsageError("pass --n for one value or --to for a range")
        lo = 0 if args.lo is None else args.lo
        hi = args.hi
    if lo < 0 or hi < lo:
        raise UsageError("range must satisfy 0 <= from <= to")
    table = _table_for(args, hi)
    entries = max_table(table, args.r, args.t, hi)
    closed_start = (CLOSED_FORM_START[args.r]
                    if args.t == 3 and args.r in (0, 1, 2) else None)
    rows = []
    disagreements = 0
    for n in range(lo, hi + 1):
        entry = entries[n]
        row: dict[str, Any] = {"n": n, "value": entry.value}
        if closed_start is not None and n >= closed_start:
            cf_value, cf_parts = closed_form(args.r, n)
            agrees = (cf_value == entry.value and not entry.truncated
                      and entry.optima == (cf_parts,))
            row["closed_form"] = cf_value
            row["closed_form_agrees"] = agrees
            if not agrees:
                disagreements += 1
        if args.show_partitions:
            row["optima"] = [list(p) for p in entry.optima]
            if entry.truncated:
                row["optima_truncated"] = True
        rows.append(row)
    params = {"r": args.r, "t": args.t, "n_max": args.n_max}
    if args.n is not None:
        params["n"] = args.n
    else:
        params["from"] = lo
        params["to"] = hi
    status = "violation-found" if disagreements else "ok"
    return OutputRecord("maxn", params,
                        {"rows": rows, "closed_form_disagreements":
                         disagreements}, status)


def _cmd_convexity(args: argparse.Namespace) -> OutputRecord:
    b_max = 500 if args.max is None else args.max
    a_min = args.min
    if a_min is None:
        a_min = _SCAN_MIN.get((args.t, args.r), 1)
    table = _table_for(args, 2 * b_max)
    report = scan_region(table, args.r, args.t, a_min, b_max,
                         workers=args.threads)
    params = {"r": args.r, "t": args.t, "min": a_min, "max": b_max,
              "n_max": args.n_max}
    results = {"pairs_checked": report.pairs_checked,
               "violations_found": len(report.violations),
               "violations": [list(v) for v in report.violations[:20]]}
    status = "ok" if report.ok else "violation-found"
    return OutputRecord("convexity", params, results, status)


def _cmd_bounds(args: argparse.Namespace) -> OutputRecord:
    n = args.n
    if n < 1:
        raise UsageError("--n must be >= 1")
    p = partition_number(n)
    pair = lehmer_bounds(n)
    est, cap = lehmer_estimate(n)
    lower, upper = envelope(n)
    budget = error_budget(n)
    constants = ConstantTable()
    results: dict[str, Any] = {
        "p": p,
        "mu": pair.mu,
        "lehmer_lower": pair.lower,
        "lehmer_upper": pair.upper,
        "sandwich_ok": pair.lower < p < pair.upper,
        "estimate": est,
        "estimate_cap": cap,
        "estimate_ok": abs(est - p) <= cap,
        "hardy_ramanujan": hardy_ramanujan(n),
        "main_term": main_term(n),
        "envelope_lower": lower,
        "envelope_upper": upper,
        "error_terms": list(budget.terms),
        "error_total": budget.total,
    }
    checks = [results["sandwich_ok"], results["estimate_ok"]]
    if n >= 500:
        # The aggregate budget and the ratio caps are claims about
        # n >= 500 only, so they gate the status only there.
        results["budget_ok"] = budget.total <= BUDGET_CAP * lower
        checks.append(results["budget_ok"])
        ratios = [ratio_bound(i, n) for i in range(1, 7)]
        results["ratios"] = ratios
        results["ratio_caps"] = list(constants.caps)
        results["ratio_caps_ok"] = all(
            f <= c for f, c in zip(ratios, constants.caps))
        results["cap_2_alternate"] = constants.cap_2_derived
        results["cap_2_discrepant"] = constants.discrepant
        checks.append(results["ratio_caps_ok"])
    status = "ok" if all(checks) else "violation-found"
    return OutputRecord("bounds", {"n": n}, results, status)


# ---------------------------------------------------------- verify suites


def _suite_tables(args: argparse.Namespace) -> OutputRecord:
    table = _table_for(args, 32)
    rows = []
    bad = 0
    for r in (0, 1, 2):
        column = counts_column(r)
        count_bad = sum(1 for n, v in column.items()
                        if residue_count(table, r, 3, n) != v)
        report = verify_small_tables(table, r)
        rows.append({"r": r, "counts_checked": len(column),
                     "count_mismatches": count_bad,
                     "max_checked": report.checked,
                     "max_mismatches": len(report.mismatches)})
        bad += count_bad + len(report.mismatches)
    status = "ok" if bad == 0 else "violation-found"
    return OutputRecord("verify", {"suite": "tables", "n_max": args.n_max},
                        {"rows": rows}, status)


def _suite_convexity(args: argparse.Namespace) -> OutputRecord:
    b_max = 500 if args.max is None else args.max
    targets = [args.r] if args.r is not None else [0, 1, 2]
    table = _table_for(args, 2 * b_max)
    rows = []
    bad = 0
    for r in targets:
        a_min = args.min
        if a_min is None:
            a_min = _SCAN_MIN.get((args.t, r), 1)
        report = scan_region(table, r, args.t, a_min, b_max,
                             workers=args.threads)
        rows.append({"r": r, "min": a_min, "max": b_max,
                     "pairs_checked": report.pairs_checked,
                     "violations_found": len(report.violations),
                     "violations": [list(v) for v in report.violations[:20]]})
        bad += len(report.violations)
    params = {"suite": "convexity", "t": args.t, "max": b_max,
              "n_max": args.n_max}
    if args.r is not None:
        params["r"] = args.r
    if args.min is not None:
        params["min"] = args.min
    status = "ok" if bad == 0 else "violation-found"
    return OutputRecord("verify", params, {"rows": rows}, status)


def _suite_theorem2(args: argparse.Namespace) -> OutputRecord:
    hi = 500 if args.max is None else args.max
    table = _table_for(args, hi)
    rows = []
    bad = 0
    for r in (0, 1, 2):
        closed = verify_closed_forms(table, r, hi)
        rules = verify_replacement_rules(table, r)
        rows.append({"r": r, "closed_checked": closed.checked,
                     "closed_mismatches": len(closed.mismatches),
                     "rules_checked": rules.checked,
                     "rule_failures": len(rules.mismatches)})
        bad += len(closed.mismatches) + len(rules.mismatches)
    status = "ok" if bad == 0 else "violation-found"
    return OutputRecord("verify", {"suite": "theorem2", "max": hi,
                                   "n_max": args.n_max}, {"rows": rows},
                        status)


def _suite_bounds(args: argparse.Namespace) -> OutputRecord:
    hi = 1000 if args.max is None else args.max
    if hi < 2:
        raise UsageError("--max must be >= 2")
    exact = partition_numbers(hi)
    sandwich_bad = []
    for n in range(2, hi + 1):
        pair = lehmer_bounds(n)
        if not pair.lower < exact[n] < pair.upper:
            sandwich_bad.append(n)
    estimate_hi = min(hi, 500)
    estimate_bad = []
    for n in range(1, estimate_hi + 1):
        est, cap = lehmer_estimate(n)
        if abs(est - exact[n]) > cap:
            estimate_bad.append(n)
    xs = list(range(500, 601)) + [1000, 2000, 5000]
    threshold_bad = [x for x in xs if not lemma_threshold(x)]
    bad = len(sandwich_bad) + len(estimate_bad) + len(threshold_bad)
    results = {
        "sandwich_range": [2, hi],
        "sandwich_failures": sandwich_bad[:20],
        "estimate_range": [1, estimate_hi],
        "estimate_failures": estimate_bad[:20],
        "threshold_points": len(xs),
        "threshold_failures": threshold_bad[:20],
    }
    status = "ok" if bad == 0 else "violation-found"
    return OutputRecord("verify", {"suite": "bounds", "max": hi},
                        results, status)


def _suite_budget(args: argparse.Namespace) -> OutputRecord:
    lo = 500 if args.lo is None else args.lo
    hi = 1000 if args.hi is None else args.hi
    step = 50 if args.step is None else args.step
    if lo < 1 or hi < lo or step < 1:
        raise UsageError("need 1 <= --from <= --to and --step >= 1")
    table = _table_for(args, hi)
    rows = []
    bad = 0
    for n in range(lo, hi + 1, step):
        a = a_third_exact(table, n)
        gap = abs(a - main_term(n))
        budget = error_budget(n)
        limit = BUDGET_CAP * budget.lower
        ok = gap <= budget.total <= limit
        rows.append({"n": n, "a_third": a, "gap": gap,
                     "error_total": budget.total, "limit": limit, "ok": ok})
        if not ok:
            bad += 1
    status = "ok" if bad == 0 else "violation-found"
    return OutputRecord("verify", {"suite": "budget", "from": lo, "to": hi,
                                   "step": step, "n_max": args.n_max},
                        {"rows": rows, "failures": bad}, status)


def _suite_conjectures(args: argparse.Namespace) -> OutputRecord:
    scan_max = 300 if args.max is None else args.max
    forms_hi = 200 if args.hi is None else args.hi
    table = _table_for(args, max(2 * scan_max, forms_hi))
    rows = []
    mismatched = 0
    for r, a_min in ((0, 11), (1, 12)):
        report = scan_region(table, r, 2, a_min, scan_max,
                             workers=args.threads)
        rows.append({"kind": "product-scan", "r": r, "t": 2, "min": a_min,
                     "max": scan_max, "pairs_checked": report.pairs_checked,
                     "violations_found": len(report.violations),
                     "violations": [list(v) for v in report.violations[:20]]})
        mismatched += len(report.violations)
    for r in (0, 1):
        report = conjecture_max_mod2(table, r, forms_hi)
        rows.append({"kind": "closed-form", "r": r, "t": 2,
                     "max": forms_hi, "checked": report.checked,
                     "mismatches": len(report.mismatches)})
        mismatched += len(report.mismatches)
    status = "ok" if mismatched == 0 else "conjecture-mismatch"
    return OutputRecord("verify", {"suite": "conjectures", "max": scan_max,
                                   "forms_max": forms_hi,
                                   "n_max": args.n_max}, {"rows": rows},
                        status)


_SUITES = {
    "tables": _suite_tables,
    "convexity": _suite_convexity,
    "theorem2": _suite_theorem2,
    "bounds": _suite_bounds,
    "budget": _suite_budget,
    "conjectures": _suite_conjectures,
}


def _cmd_verify(args: argparse.Namespace) -> OutputRecord:
    return _SUITES[args.suite](args)


# --------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"),
                        default="text", help="output format")
    common.add_argument("--n-max", dest="n_max", type=int, default=1024,
                        help="size of the rank table to build (default 1024)")
    common.add_argument("--table-cache", dest="table_cache", metavar="PATH",
                        help="load/save the rank table from this file")
    common.add_argument("--threads", type=int, default=1,
                        help="worker threads for scans (default 1)")

    parser = argparse.ArgumentParser(
        prog="dysonrank",
        description="Exact rank counts for integer partitions, their "
                    "analytic envelopes, and maximum products over parts.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common],
                       help="residue count N(r,t;n)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--show-row", action="store_true",
                   help="also print the full rank row at n")
    p.set_defaults(handler=_cmd_count)

    p = sub.add_parser("rank-table", parents=[common],
                       help="build the rank table, optionally printing rows")
    p.add_argument("--from", dest="lo", type=int)
    p.add_argument("--to", dest="hi", type=int)
    p.set_defaults(handler=_cmd_rank_table)

    p = sub.add_parser("maxn", parents=[common],
                       help="maximum product of residue counts over "
                            "partitions of n")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--t", type=int, default=3)
    p.add_argument("--n", type=int)
    p.add_argument("--from", dest="lo", type=int)
    p.add_argument("--to", dest="hi", type=int)
    p.add_argument("--show-partitions", action="store_true",
                   help="include every optimal partition")
    p.set_defaults(handler=_cmd_maxn)

    p = sub.add_parser("convexity", parents=[common],
                       help="scan the product inequality over a region")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--t", type=int, default=3)
    p.add_argument("--min", type=int)
    p.add_argument("--max", type=int)
    p.set_defaults(handler=_cmd_convexity)

    p = sub.add_parser("bounds", parents=[common],
                       help="analytic bound diagnostics at one n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser("verify", parents=[common],
                       help="run a verification suite")
    p.add_argument("suite", choices=sorted(_SUITES))
    p.add_argument("--r", type=int)
    p.add_argument("--t", type=int, default=3)
    p.add_argument("--min", type=int)
    p.add_argument("--max", type=int)
    p.add_argument("--from", dest="lo", type=int)
    p.add_argument("--to", dest="hi", type=int)
    p.add_argument("--step", type=int)
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        record = args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CacheFormatError as exc:
        print(f"error: unusable table cache: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(render(record, args.format))
    return _EXIT_BY_STATUS[record.status]
