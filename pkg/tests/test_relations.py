from __future__ import annotations

import json
from fractions import Fraction

import pytest

from dipoly import corpus, oracle
from dipoly.digraph import E, Digraph, Graph, directed_cycle, graph_w, loop_graph
from dipoly.engine import Engine, multiarc_reduce
from dipoly.polynomial import x
from dipoly.relations import (
    FAIL,
    IDENTITIES,
    PASS,
    SKIPPED,
    Context,
    backward_substitution,
    check_coreduction,
    check_cover_from_geo,
    check_geo_cover_transform,
    check_projections,
    check_undirected,
    check_vertex_decomposition,
    check_xi_explicit_mode,
    coreduction_values,
    falsify,
    find_order_dependence,
    forward_substitution,
    get_identity,
    probe_well_definedness,
    run_identity,
    shrink,
)

C2 = directed_cycle(2)
C3 = directed_cycle(3)
L1 = loop_graph()


@pytest.mark.parametrize("d", [C2, L1, E(3), C3, graph_w()], ids=["C2", "L1", "E3", "C3", "W"])
def test_per_graph_checks_pass(d):
    assert check_projections(d).status == PASS
    assert check_geo_cover_transform(d).status == PASS
    assert check_cover_from_geo(d).status == PASS


@pytest.mark.parametrize("name", ["projections", "geo-cover-transform", "cover-from-geo", "multiarc",
                                  "source-sink", "coreduction", "degenerate", "xi-corrected"])
def test_identities_hold_on_small_corpus(name):
    graphs = list(corpus.exhaustive_by_size(2, 2)) + corpus.random_digraphs(40, 4, 2, seed=21)
    report = run_identity(IDENTITIES[name], graphs, Context(Engine(), seed=1))
    assert report.status == PASS, report.to_text()


def test_coreduction_hand_values():
    p = {"x": Fraction(2), "y": Fraction(3), "z": Fraction(5)}
    e = Engine()
    fwd = coreduction_values(L1, e.xi(L1), e.sigma_pi(L1), p, "forward")
    assert fwd.lhs == fwd.rhs == Fraction(7, 2)
    back = coreduction_values(L1, e.xi(L1), e.sigma_pi(L1), p, "backward")
    assert back.lhs == back.rhs == 10
    assert forward_substitution(p)["x"] == Fraction(1, 2)
    assert backward_substitution(p) == {"x": Fraction(3, 2), "y": Fraction(8, 3), "z": Fraction(11, 6)}
    assert check_coreduction(L1, [p]).status == PASS
    assert check_coreduction(E(2), [p, {"x": 7, "y": -2, "z": Fraction(1, 3)}]).status == PASS


def test_coreduction_skips_excluded_points():
    report = check_coreduction(C2, [{"x": 2, "y": 3, "z": 1}], direction="forward")
    assert report.status == SKIPPED
    assert "undefined" in report.detail


def test_coreduction_statement_orientation_fails_on_single_vertex():
    report = check_coreduction(E(1), [{"x": 2, "y": 3, "z": 5}], direction="statement")
    assert report.status == FAIL and report.as_documented
    assert report.lhs != report.rhs


def test_undirected_relation():
    assert check_undirected(Graph(3, [(0, 1), (1, 2), (0, 2)])).status == PASS
    assert check_undirected(Graph(2, [(0, 1)])).status == PASS
    assert check_undirected(Graph(4)).status == PASS
    for g in corpus.simple_graphs(4):
        assert check_undirected(g).status == PASS


def test_vertex_decomposition_examples():
    assert check_vertex_decomposition(C2, 0).status == PASS
    assert check_vertex_decomposition(C3, 1).status == PASS
    report = check_vertex_decomposition(graph_w(), 2)
    assert report.status == FAIL and report.as_documented
    assert report.lhs == 2 * x ** 3
    assert report.rhs == 2 * x ** 3 + x ** 5
    with pytest.raises(ValueError):
        check_vertex_decomposition(C2, 0, which="other")


def test_explicit_formula_modes():
    reports = check_xi_explicit_mode([E(2), L1, Digraph.from_arcs(2, [(0, 1)]), C2, C3])
    assert reports["corrected"].status == PASS
    assert reports["literal"].status == FAIL
    assert reports["literal"].witness == C2


def test_well_definedness_probes():
    assert probe_well_definedness(C3, Fraction(1)).status == PASS
    assert probe_well_definedness(E(3)).status == PASS
    sym = probe_well_definedness(Digraph.from_arcs(2, [(1, 0), (1, 1)]), trials=12)
    assert sym.status == PASS  # differences all carry a (t-1) factor
    report = find_order_dependence(max_n=2)
    assert report.status == FAIL and report.witness.n <= 2
    assert report.extra["factor"] in ("(t-1)z", "(t-1)y")


def test_get_identity():
    assert get_identity("well-definedness", Fraction(1)).expected == PASS
    assert get_identity("well-definedness").expected == FAIL
    with pytest.raises(ValueError):
        get_identity("nope")


def test_shrink_reaches_a_minimal_failure():
    big = C2.disjoint_union(C3).disjoint_union(L1)
    small = shrink(big, lambda d: any(d.adj[i][i] for i in range(d.n)))
    assert small == L1


def test_falsify_projections_finds_nothing():
    report = falsify("projections", max_n=4, budget_seconds=10, max_random=100)
    assert report.status == PASS and report.witness is None


def test_falsify_finds_small_witnesses():
    lit = falsify("xi-literal", budget_seconds=30)
    assert lit.status == FAIL and lit.witness.n <= 2
    assert lit.extra["reverified_without_cache"]
    vd = falsify("vertex-decomposition", budget_seconds=30)
    assert vd.status == FAIL and vd.witness.n <= 5 and vd.as_documented
    wd = falsify("well-definedness", t_value=Fraction(2), budget_seconds=30)
    assert wd.status == FAIL and "order_1" in wd.extra


def test_report_serialises():
    report = check_vertex_decomposition(graph_w(), 2)
    data = json.loads(report.to_json())
    assert data["witness"]["n"] == 5
    assert data["as_documented"] is True
    assert "witness" in report.to_text()


def test_vertex_formula_gap_is_the_spurious_cycles():
    assert oracle.spurious_cycle_enum(graph_w(), 2) == x ** 4
    graphs = list(corpus.exhaustive_by_size(3, 2)) + corpus.random_digraphs(100, 6, 2, seed=66)
    report = run_identity(IDENTITIES["vertex-decomposition-gap"], graphs, Context(Engine()))
    assert report.status == PASS, report.to_text()


def test_multiarc_reduction_with_loops_on_the_endpoints():
    from dipoly import oracle
    for lu in range(3):
        for lv in range(3):
            for n, m in ((1, 0), (2, 1), (3, 3)):
                d = Digraph.from_arcs(3, [(0, 0, lu), (1, 1, lv), (0, 1, n), (1, 0, m), (1, 2), (2, 0)])
                r = multiarc_reduce(d, 0, 1)
                assert r.combine(oracle.sigma_enum, True) == oracle.sigma_enum(d)
                assert r.combine(oracle.pi_enum, False) == oracle.pi_enum(d)


def test_pi_vertex_formula_gap_is_the_spurious_paths():
    w = graph_w()
    assert oracle.spurious_path_enum(w, 2) != 0
    graphs = [w] + list(corpus.exhaustive_by_size(3, 2)) + corpus.random_digraphs(100, 6, 2, seed=67)
    report = run_identity(IDENTITIES["vertex-decomposition-pi-gap"], graphs, Context(Engine()))
    assert report.status == PASS, report.to_text()
    bad = check_vertex_decomposition(w, 2, which="pi")
    assert bad.rhs - bad.lhs == x * oracle.spurious_path_enum(w, 2)
