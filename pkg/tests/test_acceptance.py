"""Acceptance criteria 1-12, all exact.

Each test records a one-line verdict that the conftest prints in the terminal
summary.  Running this file directly prints the same lines.
"""
from __future__ import annotations

import functools
import random
import time

from dipoly import corpus, oracle
from dipoly.digraph import E, Graph, complete_digraph, directed_cycle
from dipoly.engine import Engine, multiarc_reduce, sigma_vertex_rec
from dipoly.polynomial import x, y
from dipoly.relations import (
    FAIL,
    IDENTITIES,
    PASS,
    Context,
    check_coreduction,
    falsify,
    find_order_dependence,
    run_identity,
)

VERDICTS: dict[int, str] = {}


def record(n: int, ok: bool, text: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'}  criterion {n:>2}: {text}"
    VERDICTS[n] = line
    print(line)
    assert ok, line


@functools.lru_cache(maxsize=None)
def exhaustive_corpus():
    return tuple(corpus.exhaustive_by_size(3, 2))


@functools.lru_cache(maxsize=None)
def random_corpus():
    return tuple(corpus.random_digraphs(500, 6, 2, seed=2024))


def sweep(name: str, graphs, **ctx) -> tuple:
    t0 = time.monotonic()
    report = run_identity(IDENTITIES[name], graphs, Context(Engine(), **ctx))
    return report, time.monotonic() - t0


def describe(report, seconds: float) -> str:
    text = f"{report.identity} on {report.graphs_tested} graphs in {seconds:.1f}s"
    if report.status == FAIL:
        text += f"; witness {report.witness.to_json()}: {report.lhs} vs {report.rhs}"
    return text


def test_criterion_01_exhaustive_agreement():
    graphs = exhaustive_corpus()
    report, secs = sweep("agreement", graphs)
    record(1, report.status == PASS and len(graphs) == 19768 and secs < 300, describe(report, secs))


def test_criterion_02_random_agreement():
    report, secs = sweep("agreement", random_corpus())
    record(2, report.status == PASS and report.graphs_tested == 500 and secs < 300, describe(report, secs))


def test_criterion_03_confluence_at_t_equal_one():
    graphs = corpus.random_digraphs(200, 5, 2, seed=303)
    report, secs = sweep("confluence", graphs, seed=303, trials=10)
    record(3, report.status == PASS and report.graphs_tested == 200 and secs < 120,
           describe(report, secs) + " (10 arc orders each)")


def test_criterion_04_degenerate_value():
    graphs = corpus.random_digraphs(100, 5, 2, seed=404)
    report, secs = sweep("degenerate", graphs, seed=404)
    record(4, report.status == PASS and report.graphs_tested == 100 and secs < 60, describe(report, secs))


def test_criterion_05_order_dependence_witness():
    t0 = time.monotonic()
    report = find_order_dependence(max_n=3, budget_seconds=50)
    secs = time.monotonic() - t0
    factor = report.extra.get("factor", "none")
    ok = report.status == FAIL and report.lhs != report.rhs and factor in ("(t-1)z", "(t-1)y") and secs < 60
    text = "no order dependence found"
    if report.witness is not None:
        text = (f"{report.witness.to_json()} orders {report.extra['order_1']} vs {report.extra['order_2']}, "
                f"difference {report.extra['difference']} has factor {factor}")
    record(5, ok, text)


def test_criterion_06_projection_identities():
    lines, ok = [], True
    for label, graphs in (("exhaustive", exhaustive_corpus()), ("random", random_corpus())):
        for name in ("projections", "projections-enum"):
            report, secs = sweep(name, graphs)
            ok &= report.status == PASS
            lines.append(f"{label} {describe(report, secs)}")
    record(6, ok, "; ".join(lines))


def test_criterion_07_geometric_cover_transform_and_reconstruction():
    lines, ok = [], True
    for label, graphs in (("exhaustive", exhaustive_corpus()), ("random", random_corpus())):
        for name in ("geo-cover-transform", "cover-from-geo"):
            report, secs = sweep(name, graphs)
            ok &= report.status == PASS
            lines.append(f"{label} {describe(report, secs)}")
    c2 = directed_cycle(2)
    spot = oracle.geo_cover_enum(c2) == x ** 2 + 2 * x + y and oracle.cover_enum(c2) == x ** 2 + x + y
    ok &= spot
    lines.append(f"spot values on C2 {'confirmed' if spot else 'WRONG'}")
    record(7, ok, "; ".join(lines))


def test_criterion_08_coreduction():
    graphs = corpus.random_digraphs(100, 5, 2, seed=808)
    report, secs = sweep("coreduction", graphs, seed=808, points=5)
    statement = check_coreduction(E(1), [{"x": 2, "y": 3, "z": 5}], direction="statement")
    ok = report.status == PASS and report.graphs_tested == 100 and secs < 120
    ok &= statement.status == FAIL and statement.as_documented
    record(8, ok, describe(report, secs) + f" at 5 points each; statement orientation on E_1: "
                  f"{statement.lhs} vs {statement.rhs} (fails as expected)")


def test_criterion_09_undirected_relation():
    graphs = [g.orient() for n in range(6) for g in Graph.all_graphs(n)]
    report, secs = sweep("undirected", graphs)
    record(9, report.status == PASS and len(graphs) == 1 + 1 + 2 + 8 + 64 + 1024, describe(report, secs))


def test_criterion_10_multiarc_reduction():
    rng = random.Random(1010)
    engine = Engine()
    checked, bad = 0, []
    for n in range(4):
        for m in range(4):
            if n + m == 0:
                continue
            for _ in range(15):
                host = corpus.random_digraph(rng, 5, 2, min_n=2).remove_arcs_between(0, 1)
                d = host.arc_add(0, 1, n).arc_add(1, 0, m)
                r = multiarc_reduce(d, 0, 1)
                pairs = [
                    (r.combine(engine.sigma, True), oracle.sigma_enum(d)),
                    (r.combine(engine.pi, False), oracle.pi_enum(d)),
                ]
                checked += 1
                if any(a != b for a, b in pairs):
                    bad.append(d.to_json())
    record(10, not bad and checked == 15 * 15,
           f"{checked} host graphs over all (n,m) with n,m <= 3, sigma and pi" + (f"; failures {bad[:3]}" if bad else ""))


def test_criterion_11_claims_under_test():
    graphs = exhaustive_corpus() + random_corpus()
    modes = {}
    for mode in ("corrected", "literal"):
        modes[mode], _ = sweep(f"xi-{mode}", graphs)
    passing = [m for m, r in modes.items() if r.status == PASS]
    literal = falsify("xi-literal", budget_seconds=30)
    ok = len(passing) == 1 and literal.status == FAIL and literal.witness.n <= 2
    parts = [f"explicit formula mode matching the recurrence on {len(graphs)} graphs: {passing}",
             f"other mode witness {literal.witness.to_json() if literal.witness else None}"]

    vd = falsify("vertex-decomposition", max_n=5, budget_seconds=50)
    if vd.witness is not None:
        w, v = vd.witness, vd.extra["vertex"]
        # independent re-check: enumeration on both sides, no recurrence cache involved
        brute_lhs = oracle.sigma_enum(w)
        brute_rhs = (1 - x) * oracle.sigma_enum(w.vertex_delete(v)) + x * oracle.sigma_enum(w.vertex_contract(v))
        confirmed = brute_lhs != brute_rhs and sigma_vertex_rec(w, v, Engine(cache=False)) == brute_rhs
        ok &= w.n <= 5 and confirmed and vd.extra.get("reverified_without_cache", False)
        parts.append(f"vertex decomposition witness {w.to_json()} at v={v}: {brute_lhs} vs {brute_rhs}, "
                     f"re-verified by brute force")
    else:
        # an honest negative result is acceptable as long as it is reported as such
        ok &= vd.status == PASS and not vd.as_documented
        parts.append(f"vertex decomposition: no witness among {vd.graphs_tested} graphs (claim not refuted)")
    record(11, ok, "; ".join(parts))


def test_criterion_12_performance_smoke():
    d = complete_digraph(5)
    t0 = time.monotonic()
    value = Engine().sigma_pi(d)
    secs = time.monotonic() - t0
    ok = d.num_arcs == 20 and secs < 60 and value.eval({"x": 1, "y": 1, "z": 1}) > 0
    record(12, ok, f"sigma-pi of the complete digraph on 5 vertices in {secs:.3f}s ({len(value)} terms)")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
