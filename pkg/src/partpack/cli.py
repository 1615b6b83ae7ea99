"""partpack command line: count, maximize, density-table, verify, enumerate."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from fractions import Fraction

from . import __version__, search, verify
from .core import (
    MODES,
    UNRESTRICTED,
    PatternSet,
    WordParseError,
    format_word,
    parse_word,
    validate_canonical,
)
from .count import count, occurrences
from .enumeration import layered_partitions, partitions, two_block_candidates, words

log = logging.getLogger("partpack")

ENGINE_VERSION = f"partpack-{__version__}"
SPACES = ("all", "layered", "two-block", "words")


class UsageError(Exception):
    pass


def decimal(x: Fraction) -> str:
    return format(float(x), "#.10g")


# --- argument parsing helpers -----------------------------------------------


def parse_pattern_values(values: list[str]) -> list[tuple[int, ...]]:
    """Patterns from repeated flags; each value is one word or a comma list of words.

    A value that reads as a canonical word in comma syntax ("1,2,1",
    "1,2,3,4,5,6,7,8,9,10") is one pattern; otherwise the comma-separated
    pieces are separate digit-string patterns ("112,121").
    """
    out = []
    for value in values:
        if "," in value:
            try:
                word = parse_word(value)
            except WordParseError:
                word = None
            if word is not None and validate_canonical(word):
                out.append(word)
                continue
        out.extend(parse_word(p) for p in value.split(","))
    return out


def pattern_set(args) -> PatternSet:
    pats = parse_pattern_values(args.patterns or [])
    if not pats:
        raise UsageError("at least one --pattern is required")
    try:
        return PatternSet(tuple(dict.fromkeys(pats)), args.mode)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# --- cache ------------------------------------------------------------------


class ResultCache:
    """Append-only JSONL store of maximize results."""

    def __init__(self, path: str | None):
        self.path = path
        self.records: dict[str, dict] = {}
        if path and os.path.exists(path):
            with open(path, encoding="utf-8") as fh:
                for lineno, line in enumerate(fh, start=1):
                    if not line.strip():
                        continue
                    try:
                        rec = json.loads(line)
                        key = rec["key"]
                    except (ValueError, KeyError, TypeError):
                        log.warning("cache %s: skipping unreadable line %d", path, lineno)
                        continue
                    if rec.get("engine") == ENGINE_VERSION:
                        self.records.setdefault(key, rec)

    @staticmethod
    def key(S: PatternSet, n: int, k: int, space: str) -> str:
        return f"{S.mode}|{S.key()}|{n}|{k}|{space}"

    def get(self, key: str) -> dict | None:
        rec = self.records.get(key)
        return rec["result"] if rec else None

    def put(self, key: str, S: PatternSet, n: int, k: int, result: dict) -> None:
        if not self.path or key in self.records:
            return
        rec = {"key": key, "mode": S.mode, "patterns": S.key(), "n": n, "k": k, "mu": result["mu"],
               "witness": result["witnesses"][0] if result["witnesses"] else None,
               "engine": ENGINE_VERSION, "timestamp": time.time(), "result": result}
        self.records[key] = rec
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(rec) + "\n")


# --- subcommands ------------------------------------------------------------


def cmd_count(args) -> int:
    S = pattern_set(args)
    if args.target is None:
        raise UsageError("--target is required")
    t = parse_word(args.target)
    if S.mode == UNRESTRICTED and not validate_canonical(t):
        raise UsageError(f"target {args.target} is not a canonical word")
    if S.m > len(t):
        raise UsageError(f"pattern length {S.m} exceeds target length {len(t)}")
    if args.witnesses:
        occ = occurrences(S, t)
        print(len(occ))
        for idx in occ:
            print(" ".join(str(i) for i in idx))
    else:
        print(count(S, t))
    return 0


def _maximize(S: PatternSet, n: int, k: int, space: str, args) -> search.SearchResult:
    opts = dict(unsafe_large=args.unsafe_large, threads=args.threads)
    if space == "all":
        return search.max_over_partitions(S, n, k, **opts)
    if space == "words":
        return search.max_over_words(S, n, k, **opts)
    if len(S.patterns) != 1 or S.mode != UNRESTRICTED:
        raise UsageError(f"--space {space} needs a single pattern with --mode unrestricted")
    if space == "layered":
        return search.max_layered(S.patterns[0], n, k, threads=args.threads)
    if S.patterns[0] != search.PATTERN_121:
        raise UsageError("--space two-block applies to the pattern 121 only")
    return search.max_two_block(n, k)


def result_dict(S: PatternSet, res: search.SearchResult) -> dict:
    return {
        "patterns": S.key(), "mode": S.mode, "n": res.n, "k": res.k, "space": res.space,
        "mu": res.mu, "density": str(res.density), "decimal": decimal(res.density),
        "witness_count": res.witness_count, "witnesses": [format_word(w) for w in res.witnesses],
        "examined": res.examined, "verified": res.verified,
    }


def render_result(d: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(d, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(list(d))
        w.writerow([" ".join(v) if isinstance(v, list) else v for v in d.values()])
        return buf.getvalue()
    lines = [
        f"patterns   {d['patterns']} ({d['mode']})",
        f"n, k       {d['n']}, {d['k']}",
        f"space      {d['space']} ({d['examined']} candidates)",
        f"mu         {d['mu']}",
        f"density    {d['density']} = {d['decimal']}",
        f"witnesses  {d['witness_count']}: {' '.join(d['witnesses'])}",
    ]
    if d["verified"] is not None:
        lines.append(f"verified   {d['verified']}")
    return "\n".join(lines) + "\n"


def cmd_maximize(args) -> int:
    S = pattern_set(args)
    if args.n is None:
        raise UsageError("--n is required")
    n = args.n
    k = n if args.k is None else args.k
    if S.m > n:
        raise UsageError(f"pattern length {S.m} exceeds n={n}")
    cache = ResultCache(args.cache or os.environ.get("PARTPACK_CACHE"))
    key = ResultCache.key(S, n, k, args.space)
    d = cache.get(key)
    if d is None:
        res = _maximize(S, n, k, args.space, args)
        d = result_dict(S, res)
        if args.witness_limit is not None:
            d["witnesses"] = d["witnesses"][: args.witness_limit]
        cache.put(key, S, n, k, d)
    sys.stdout.write(render_result(d, args.format or "text"))
    return 0


TABLE_FIELDS = ("n", "k", "mu", "density", "decimal", "trend", "witness", "engine")


def cmd_density_table(args) -> int:
    S = pattern_set(args)
    n_max = args.n_max if args.n_max is not None else max(S.m, 8)
    k_policy = "n" if args.k in (None, "n") else int(args.k)
    rows = search.density_sequence(S, n_max, k_policy, engine=args.engine, unsafe_large=args.unsafe_large,
                                   threads=args.threads)
    table = [{"n": r.n, "k": r.k, "mu": r.mu, "density": str(r.delta), "decimal": decimal(r.delta),
              "trend": r.trend, "witness": format_word(r.witness), "engine": r.engine} for r in rows]
    fmt = args.format or "csv"
    if fmt == "json":
        sys.stdout.write(json.dumps({"patterns": S.key(), "mode": S.mode, "rows": table}, indent=2) + "\n")
    elif fmt == "csv":
        w = csv.DictWriter(sys.stdout, fieldnames=TABLE_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(table)
    else:
        for row in table:
            print("  ".join(f"{row[f]}" for f in TABLE_FIELDS))
    if rows and rows[-1].n < n_max:
        print(f"note: table truncated at n={rows[-1].n} by the search cap", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    only = set(args.claims.split(",")) if args.claims else None
    reports = verify.run_claims(args.n_cap, args.k_cap, threads=args.threads, only=only)
    fmt = args.format or "text"
    if fmt not in ("json", "text"):
        raise UsageError("verify supports --format json or text")
    doc = verify.report_render(reports, fmt, include_runtime=not args.omit_runtime)
    if args.report:
        try:
            with open(args.report, "w", encoding="utf-8") as fh:
                fh.write(doc)
        except OSError as exc:
            print(f"error: cannot write report: {exc}", file=sys.stderr)
            return 2
        for r in reports:
            print(f"{r.id:<4} {r.status}")
    else:
        sys.stdout.write(doc)
    return 1 if verify.has_deviation(reports) else 0


def cmd_enumerate(args) -> int:
    if args.n is None:
        raise UsageError("--n is required")
    n = args.n
    k = n if args.k is None else args.k
    if args.space == "all":
        stream = partitions(n, k)
    elif args.space == "words":
        stream = words(n, k)
    elif args.space == "layered":
        stream = layered_partitions(n, k)
    else:
        stream = (w for w in two_block_candidates(n) if max(w) <= k)
    for w in stream:
        print(format_word(w))
    return 0


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pattern", "--patterns", dest="patterns", action="append",
                        help="pattern word, or comma list of words; repeatable")
    common.add_argument("--mode", choices=MODES, default=UNRESTRICTED)
    common.add_argument("--threads", type=int, default=None, help="worker processes (env PARTPACK_THREADS)")
    common.add_argument("--unsafe-large", action="store_true", help="run searches above the candidate cap")
    common.add_argument("--format", choices=("csv", "json", "text"))
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="partpack", description="Pattern packing in set partitions.")
    parser.add_argument("--version", action="version", version=ENGINE_VERSION)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="count copies of patterns in a target")
    p.add_argument("--target")
    p.add_argument("--witnesses", action="store_true", help="list 1-based index tuples of the copies")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("maximize", parents=[common], help="maximum count over a search space")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--space", choices=SPACES, default="all")
    p.add_argument("--cache", help="JSONL result cache (env PARTPACK_CACHE)")
    p.add_argument("--witnesses", dest="witness_limit", type=int, default=None, metavar="N",
                   help="print at most N witnesses")
    p.set_defaults(func=cmd_maximize)

    p = sub.add_parser("density-table", parents=[common], help="maximum density for n = m..n-max")
    p.add_argument("--n-max", type=int)
    p.add_argument("--k", default="n", help="block bound: an integer, or n (default)")
    p.add_argument("--engine", choices=("auto", "exhaustive", "structured"), default="auto")
    p.set_defaults(func=cmd_density_table)

    p = sub.add_parser("verify", parents=[common], help="run the claim checks")
    p.add_argument("--n-cap", type=int, default=10)
    p.add_argument("--k-cap", type=int, default=10)
    p.add_argument("--report", help="write the report here and print a status summary")
    p.add_argument("--claims", help="comma list of claim ids, e.g. C1,C7")
    p.add_argument("--omit-runtime", action="store_true", help="null out runtime_ms for diffable reports")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", parents=[common], help="dump a search space")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--space", choices=SPACES, default="all")
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except WordParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"  {exc.text}\n  {' ' * (exc.position - 1)}^", file=sys.stderr)
        return 2
    except (UsageError, search.CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
