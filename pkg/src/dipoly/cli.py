"""Command line: ``dipoly {compute,verify,falsify,bench}``.

Exit codes: 0 success, 1 usage or parse error, 2 verification mismatch.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from . import corpus, oracle
from .digraph import Digraph, DigraphError, ParseError, parse
from .engine import POLYNOMIALS, Engine
from .polynomial import MultiPoly
from .relations import (
    FAIL,
    IDENTITIES,
    PASS,
    CheckReport,
    Context,
    falsify,
    find_order_dependence,
    probe_well_definedness,
    run_identity,
)

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2

VERIFY_ORDER = [
    "agreement", "projections", "geo-cover-transform", "cover-from-geo", "multiarc",
    "source-sink", "undirected", "coreduction", "confluence", "degenerate", "well-definedness",
    "xi-corrected", "xi-literal", "vertex-decomposition", "vertex-decomposition-gap",
    "vertex-decomposition-pi", "vertex-decomposition-pi-gap",
    "coreduction-statement",
]


@dataclass
class RunConfig:
    command: str
    polys: List[str] = field(default_factory=lambda: ["sigma"])
    method: str = "rec"
    input: Optional[str] = None
    format: str = "text"
    seed: int = 0
    max_n: int = 5
    max_mult: int = 2
    trials: int = 10
    points: int = 5
    t: Optional[Fraction] = None
    budget_seconds: float = 60.0
    cache: bool = True


class UsageError(Exception):
    pass


def _seed_default() -> int:
    raw = os.environ.get("DIPOLY_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"DIPOLY_SEED must be an integer, got {raw!r}") from None


def _parse_t(raw: Optional[str]) -> Optional[Fraction]:
    if raw is None or raw == "t":
        return None
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--t expects a rational number or 't', got {raw!r}") from None


def read_digraph(source: Optional[str]) -> Digraph:
    """Path, ``-`` for stdin, or an inline JSON object."""
    if source is None or source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith("{"):
        text = source
    else:
        try:
            with open(source) as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {source}: {exc.strerror}") from None
    return parse(text)


def render(p: MultiPoly, fmt: str) -> str:
    if fmt == "json":
        return p.to_json()
    if fmt == "latex":
        return p.latex()
    return str(p)


# -- commands ------------------------------------------------------------------


def cmd_compute(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    d = read_digraph(cfg.input)
    engine = Engine(cache=cfg.cache)
    status = EXIT_OK
    results = []
    for name in cfg.polys:
        row = {"poly": name}
        if cfg.method in ("rec", "both"):
            row["rec"] = engine.compute(name, d)
        if cfg.method in ("enum", "both"):
            row["enum"] = oracle.enum_poly(name, d)
        if cfg.method == "both":
            row["match"] = row["rec"] == row["enum"]
            if not row["match"]:
                status = EXIT_MISMATCH
        results.append(row)

    if cfg.format == "json":
        payload = []
        for row in results:
            item = {"poly": row["poly"]}
            for k in ("rec", "enum"):
                if k in row:
                    item[k] = row[k].to_json_terms()
            if "match" in row:
                item["match"] = row["match"]
            payload.append(item)
        print(json.dumps(payload if len(payload) > 1 else payload[0]), file=out)
        return status

    multi = len(results) > 1
    for row in results:
        prefix = f"{row['poly']}: " if multi else ""
        if cfg.method == "both":
            print(f"{prefix}rec:  {render(row['rec'], cfg.format)}", file=out)
            print(f"{prefix}enum: {render(row['enum'], cfg.format)}", file=out)
            print(f"{prefix}{'MATCH' if row['match'] else 'MISMATCH'}", file=out)
        else:
            print(prefix + render(row[cfg.method], cfg.format), file=out)
    return status


def _verify_one(name: str, cfg: RunConfig, exhaustive_n: int, random_count: int) -> List[CheckReport]:
    ctx = Context(Engine(cache=cfg.cache), seed=cfg.seed, points=cfg.points, trials=cfg.trials)
    if name == "undirected":
        graphs = [g.orient() for g in corpus.simple_graphs(min(cfg.max_n, 5))]
        return [run_identity(IDENTITIES[name], graphs, ctx)]
    graphs = list(corpus.exhaustive_by_size(exhaustive_n, min(cfg.max_mult, 2)))
    graphs += corpus.random_digraphs(random_count, cfg.max_n, cfg.max_mult, seed=cfg.seed)
    if name == "well-definedness":
        reports = []
        for d in graphs:
            r = probe_well_definedness(d, Fraction(1), cfg.trials, cfg.seed)
            if r.status == FAIL:
                reports.append(r)
                break
        else:
            reports.append(CheckReport("well-definedness(t=1)", PASS, graphs_tested=len(graphs),
                                       detail=f"{cfg.trials} random arc orders agree on every graph"))
        reports.append(find_order_dependence(max_n=3, t_value=None,
                                             budget_seconds=cfg.budget_seconds))
        return reports
    return [run_identity(IDENTITIES[name], graphs, ctx)]


def cmd_verify(cfg: RunConfig, names: Sequence[str], exhaustive_n: int, random_count: int,
               out=None) -> int:
    out = out or sys.stdout
    if not names or "all" in names:
        names = VERIFY_ORDER
    reports: List[CheckReport] = []
    for name in names:
        if name not in IDENTITIES and name != "well-definedness":
            raise UsageError(f"unknown identity {name!r}; choose from {VERIFY_ORDER}")
        t0 = time.monotonic()
        for r in _verify_one(name, cfg, exhaustive_n, random_count):
            r.extra.setdefault("seconds", round(time.monotonic() - t0, 2))
            reports.append(r)
    ok = all(r.as_documented for r in reports)
    if cfg.format == "json":
        print(json.dumps({"ok": ok, "reports": [r.to_dict() for r in reports]}), file=out)
    else:
        for r in reports:
            print(r.to_text(), file=out)
        print(f"{sum(r.as_documented for r in reports)}/{len(reports)} checks as documented", file=out)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_falsify(cfg: RunConfig, name: str, output: Optional[str], out=None) -> int:
    out = out or sys.stdout
    if name not in IDENTITIES and name != "well-definedness":
        raise UsageError(f"unknown identity {name!r}")
    if name == "well-definedness" and cfg.t is None:
        report = find_order_dependence(max_n=min(cfg.max_n, 4), t_value=None,
                                       budget_seconds=cfg.budget_seconds)
    else:
        report = falsify(name, max_n=cfg.max_n, max_mult=cfg.max_mult, budget_seconds=cfg.budget_seconds,
                         seed=cfg.seed, t_value=cfg.t, points=cfg.points, trials=cfg.trials)
    if output and report.witness is not None:
        with open(output, "w") as fh:
            fh.write(report.witness.to_json() + "\n")
    if cfg.format == "json":
        print(report.to_json(), file=out)
    elif report.witness is not None:
        print(report.witness.to_json(), file=out)
        print(report.to_text(), file=out)
    else:
        print("none found", file=out)
        print(report.to_text(), file=out)
    return EXIT_MISMATCH if report.status == FAIL else EXIT_OK


def _bench_graphs(family: str, sizes: Sequence[int], seed: int, max_mult: int) -> List[tuple]:
    if family == "random":
        return [(f"random{n}", d) for n, d in
                ((n, corpus.random_digraph(__import__("random").Random(f"{seed}:{n}"), n, max_mult, n))
                 for n in sizes)]
    prefix = {"cycle": "C", "complete": "K", "empty": "E"}[family]
    return [(f"{prefix}{n}", corpus.family(family, n)) for n in sizes]


def cmd_bench(cfg: RunConfig, family: str, sizes: Sequence[int], with_enum: bool,
              compare_cache: bool = False, out=None) -> int:
    out = out or sys.stdout
    rows = []
    for label, d in _bench_graphs(family, sizes, cfg.seed, cfg.max_mult):
        for name in cfg.polys:
            engine = Engine(cache=cfg.cache)
            t0 = time.perf_counter()
            value = engine.compute(name, d)
            rec_s = time.perf_counter() - t0
            row = {"graph": label, "poly": name, "n": d.n, "arcs": d.num_arcs, "rec_s": round(rec_s, 4),
                   "terms": len(value), **engine.stats.as_dict()}
            if compare_cache:
                other = Engine(cache=not cfg.cache)
                other_value = other.compute(name, d)
                row["hits_other"] = other.stats.hits
                row["identical"] = other_value == value
            if with_enum:
                t0 = time.perf_counter()
                oracle.enum_poly(name, d)
                row["enum_s"] = round(time.perf_counter() - t0, 4)
            rows.append(row)
    if cfg.format == "json":
        print(json.dumps(rows), file=out)
        return EXIT_OK if all(r.get("identical", True) for r in rows) else EXIT_MISMATCH
    cols = ["graph", "poly", "n", "arcs", "rec_s"] + (["enum_s"] if with_enum else []) + \
        ["terms", "calls", "arc_steps", "hits", "misses", "peak_cache"] + \
        (["hits_other", "identical"] if compare_cache else [])
    widths = [max(len(c), *(len(str(r[c])) for r in rows)) for c in cols] if rows else [len(c) for c in cols]
    print("  ".join(c.ljust(w) for c, w in zip(cols, widths)), file=out)
    for r in rows:
        print("  ".join(str(r[c]).ljust(w) for c, w in zip(cols, widths)), file=out)
    return EXIT_OK if all(r.get("identical", True) for r in rows) else EXIT_MISMATCH


# -- argument parsing ----------------------------------------------------------


def _poly_list(raw: str) -> List[str]:
    names = list(POLYNOMIALS) if raw == "all" else raw.split(",")
    for n in names:
        if n not in POLYNOMIALS:
            raise argparse.ArgumentTypeError(f"unknown polynomial {n!r}; choose from {', '.join(POLYNOMIALS)}")
    return names


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "latex"], default="text")
    common.add_argument("--seed", type=int, default=None, help="defaults to $DIPOLY_SEED or 0")
    common.add_argument("--max-n", type=int, default=5)
    common.add_argument("--max-mult", type=int, default=2)
    common.add_argument("--trials", type=int, default=10)
    common.add_argument("--points", type=int, default=5)
    common.add_argument("--t", default=None, help="value of t for well-definedness ('t' = symbolic)")
    common.add_argument("--budget-seconds", type=float, default=60.0)
    common.add_argument("--no-cache", action="store_true")

    parser = argparse.ArgumentParser(prog="dipoly", description="Exact digraph cycle, path and cover polynomials.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="compute polynomials of one digraph")
    p.add_argument("poly_arg", nargs="?", metavar="POLY", help="same as --poly")
    p.add_argument("--poly", type=_poly_list, default=None, help=f"one of {', '.join(POLYNOMIALS)}, a comma list, or all")
    p.add_argument("--method", choices=["rec", "enum", "both"], default="rec")
    p.add_argument("--input", default=None, help="file path, '-' for stdin, or inline JSON")

    p = sub.add_parser("verify", parents=[common], help="run identity checks over graph corpora")
    p.add_argument("identities", nargs="*", help=f"any of {', '.join(VERIFY_ORDER)} (default all)")
    p.add_argument("--exhaustive-n", type=int, default=3, help="exhaustive corpus bound on vertices")
    p.add_argument("--random-count", type=int, default=100)

    p = sub.add_parser("falsify", parents=[common], help="search for a counterexample")
    p.add_argument("identity")
    p.add_argument("--output", default=None, help="write the witness digraph JSON here")

    p = sub.add_parser("bench", parents=[common], help="time recurrences on a graph family")
    p.add_argument("--poly", type=_poly_list, default=["sigma-pi"])
    p.add_argument("--family", choices=["cycle", "complete", "empty", "random"], default="cycle")
    p.add_argument("--sizes", default="4,6,8", help="comma-separated vertex counts")
    p.add_argument("--enum", action="store_true", help="also time the enumeration oracle")
    p.add_argument("--compare-cache", action="store_true",
                   help="rerun with the cache toggled and check the polynomials agree")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        seed = args.seed if args.seed is not None else _seed_default()
        cfg = RunConfig(
            command=args.command,
            format=args.format,
            seed=seed,
            max_n=args.max_n,
            max_mult=args.max_mult,
            trials=args.trials,
            points=args.points,
            t=_parse_t(args.t),
            budget_seconds=args.budget_seconds,
            cache=not args.no_cache,
        )
        if args.command == "compute":
            if args.poly is not None:
                cfg.polys = args.poly
            elif args.poly_arg is not None:
                cfg.polys = _poly_list(args.poly_arg)
            cfg.method = args.method
            cfg.input = args.input
            return cmd_compute(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, args.identities, args.exhaustive_n, args.random_count)
        if args.command == "falsify":
            return cmd_falsify(cfg, args.identity, args.output)
        if args.command == "bench":
            cfg.polys = args.poly
            try:
                sizes = [int(s) for s in args.sizes.split(",") if s]
            except ValueError:
                raise UsageError(f"--sizes expects comma-separated integers, got {args.sizes!r}") from None
            return cmd_bench(cfg, args.family, sizes, args.enum, args.compare_cache)
    except (UsageError, ParseError, DigraphError, argparse.ArgumentTypeError) as exc:
        print(f"dipoly: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
