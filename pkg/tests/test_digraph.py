from __future__ import annotations

import itertools
import random
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dipoly import corpus
from dipoly.digraph import (
    E,
    Digraph,
    Graph,
    ParseError,
    PreconditionError,
    UnsupportedInputError,
    complete_digraph,
    directed_cycle,
    graph_w,
    loop_graph,
    parse,
    parse_edge_list,
)

C2 = directed_cycle(2)
C3 = directed_cycle(3)
L1 = loop_graph()
ARC = Digraph.from_arcs(2, [(0, 1)])


@st.composite
def digraphs(draw, max_n=5, max_mult=2):
    n = draw(st.integers(0, max_n))
    rows = draw(st.lists(st.lists(st.integers(0, max_mult), min_size=n, max_size=n), min_size=n, max_size=n))
    return Digraph(n, rows)


# -- independent models of the arc operations ----------------------------------


def np_contract(d: Digraph, u: int, v: int) -> Digraph:
    """Row swap then delete, on a numpy matrix."""
    a = np.array(d.adj, dtype=int).reshape(d.n, d.n)
    if u == v:
        a = np.delete(np.delete(a, u, 0), u, 1)
    else:
        a[u, :] = a[v, :]
        a = np.delete(np.delete(a, v, 0), v, 1)
    return Digraph(a.shape[0], a.tolist())


def np_extract(d: Digraph, u: int, v: int) -> Digraph:
    a = np.array(d.adj, dtype=int).reshape(d.n, d.n)
    gone = sorted({u, v})
    a = np.delete(np.delete(a, gone, 0), gone, 1)
    return Digraph(a.shape[0], a.tolist())


def set_contract(d: Digraph, u: int, v: int) -> Digraph:
    """Multiset-of-arcs model: drop out-arcs of u and in-arcs of v, then identify v with u."""
    arcs = _arcs(d)
    if u == v:
        keep = [w for w in range(d.n) if w != u]
        arcs = Counter({a: m for a, m in arcs.items() if u not in a})
    else:
        keep = [w for w in range(d.n) if w != v]
        merged = Counter()
        for (i, j), m in arcs.items():
            if i != u and j != v:
                merged[(u if i == v else i, u if j == v else j)] += m
        arcs = merged
    index = {w: k for k, w in enumerate(keep)}
    return Digraph.from_arcs(len(keep), [(index[i], index[j], m) for (i, j), m in arcs.items()])


def _arcs(d: Digraph) -> Counter:
    return Counter({(i, j): m for i, j, m in d.arcs()})


def _small_corpus():
    graphs = list(corpus.exhaustive(3, 2))
    graphs += corpus.random_digraphs(300, 4, 2, seed=7, min_n=4)
    return graphs


def test_contract_and_extract_match_matrix_and_set_models():
    checked = 0
    for d in _small_corpus():
        for u, v, _ in d.arcs():
            got = d.arc_contract(u, v)
            assert got == np_contract(d, u, v) == set_contract(d, u, v), (d, u, v)
            assert d.arc_extract(u, v) == np_extract(d, u, v)
            checked += 1
    assert checked > 10000


def test_loop_contraction_equals_extraction():
    for d in corpus.exhaustive(3, 2):
        for v in d.loops():
            assert d.arc_contract(v, v) == d.arc_extract(v, v)


# -- examples --------------------------------------------------------------------


def test_delete_examples():
    assert L1.arc_delete(0, 0) == E(1)
    assert C2.arc_delete(0, 1) == Digraph.from_arcs(2, [(1, 0)])
    d = Digraph.from_arcs(2, [(0, 1, 2), (1, 0, 1)])
    assert d.arc_delete(0, 1).adj == ((0, 1), (1, 0))
    with pytest.raises(PreconditionError):
        E(2).arc_delete(0, 1)


def test_contract_examples():
    assert ARC.arc_contract(0, 1) == E(1)
    assert C2.arc_contract(0, 1) == L1
    for u, v, _ in C3.arcs():
        assert C3.arc_contract(u, v).canonical_key() == C2.canonical_key()
    with pytest.raises(PreconditionError):
        E(2).arc_contract(0, 1)


def test_extract_examples():
    assert ARC.arc_extract(0, 1) == E(0)
    for u, v, _ in C3.arcs():
        assert C3.arc_extract(u, v) == E(1)
    assert L1.arc_extract(0, 0) == E(0)
    with pytest.raises(PreconditionError):
        C2.arc_extract(0, 0)


def test_arc_add_examples():
    assert E(2).arc_add(0, 1) == ARC
    assert L1.arc_add(0, 0) == loop_graph(2)
    assert ARC.arc_add(1, 0) == C2


def test_vertex_delete_examples():
    assert E(1).vertex_delete(0) == E(0)
    assert C2.vertex_delete(0) == E(1)
    for v in range(3):
        assert C3.vertex_delete(v).canonical_key() == ARC.canonical_key()


def test_vertex_contract_examples():
    assert C2.vertex_contract(1) == L1
    # 0 -> 1 -> 2 -> 0, contracting 1 adds 0 -> 2
    assert C3.vertex_contract(1) == C2
    star = Digraph.from_arcs(5, [(0, 2), (1, 2), (2, 3), (2, 4)])
    assert star.vertex_contract(2) == Digraph.from_arcs(4, [(a, b) for a in (0, 1) for b in (2, 3)])
    with pytest.raises(UnsupportedInputError):
        L1.vertex_contract(0)


def test_components_examples():
    assert E(3).components() == [E(1)] * 3
    assert C2.disjoint_union(L1).components() == [C2, L1]
    assert C3.components() == [C3]
    assert graph_w().components() == [graph_w()]


@settings(max_examples=80)
@given(digraphs(), digraphs())
def test_union_then_split_recovers_parts(a, b):
    parts = sorted(c.canonical_key() for c in a.disjoint_union(b).components())
    expected = sorted(c.canonical_key() for c in a.components() + b.components())
    assert parts == expected


# -- canonical key ---------------------------------------------------------------


def test_canonical_key_examples():
    assert E(2).canonical_key() == E(2).canonical_key()
    assert C2.canonical_key() == C2.permute([1, 0]).canonical_key()
    assert ARC.canonical_key() != E(2).canonical_key()


@settings(max_examples=150)
@given(digraphs(max_n=6), st.randoms(use_true_random=False))
def test_canonical_key_is_permutation_invariant(d, rnd):
    order = list(range(d.n))
    rnd.shuffle(order)
    assert d.permute(order).canonical_key() == d.canonical_key()


def test_canonical_key_separates_isomorphism_classes_on_three_vertices():
    # brute-force isomorphism classes by minimizing over all relabellings
    def brute(d):
        return min(d.permute(p).adj for p in itertools.permutations(range(d.n)))

    classes = {}
    for d in corpus.exhaustive(3, 1, min_n=3):
        classes.setdefault(d.canonical_key(), set()).add(brute(d))
    assert all(len(v) == 1 for v in classes.values())
    assert len(classes) == 104  # loop-decorated digraphs on 3 vertices up to isomorphism


def test_canonical_key_regular_graphs_above_exact_limit():
    d = complete_digraph(9)
    rng = random.Random(1)
    order = list(range(9))
    rng.shuffle(order)
    assert d.permute(order).canonical_key() == d.canonical_key()


# -- parsing ---------------------------------------------------------------------


def test_parse_examples():
    assert parse('{"n":1,"arcs":[[0,0,1]]}') == L1
    assert parse('{"n":2,"arcs":[[0,1,1],[1,0,1]]}') == C2
    assert parse('{"n":3,"arcs":[]}') == E(3)
    assert parse("2 2\n0 1\n1 0\n") == C2
    assert parse("# comment\n1 2\n0 0\n0 0\n") == loop_graph(2)


@settings(max_examples=60)
@given(digraphs())
def test_json_and_edge_list_round_trip(d):
    assert parse(d.to_json()) == d
    assert parse_edge_list(d.to_edge_list()) == d


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("2 1\n0 x\n", "line 2"),
        ("2 1\n0 x\n", "'x'"),
        ("2 2\n0 1\n", "2 arcs"),
        ("2 1\n0 5\n", "line 2"),
        ('{"n":2,"arcs":[[0,3]]}', "arcs[0]"),
        ('{"n":2,"arcs":[[0,1]', "line 1"),
        ('{"arcs":[]}', '"n"'),
        ("", "empty"),
    ],
)
def test_parse_errors_name_the_location(text, fragment):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert fragment in str(info.value)


def test_underlying_simple_graph():
    g = Graph(3, [(0, 1), (1, 2)])
    assert Graph.underlying(g.orient()) == g
    assert g.orient().num_arcs == 4
    assert sum(1 for _ in Graph.all_graphs(4)) == 2 ** 6
