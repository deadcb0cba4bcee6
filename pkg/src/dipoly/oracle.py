"""Brute-force computation of every polynomial straight from its counting definition.

Nothing here uses a recurrence; these functions are the reference the engine is
tested against.  Everything is exponential in the size of the digraph.

Counting conventions: a cycle or path is a vertex sequence, weighted by the
product of the multiplicities of the arcs it uses, so each choice among
parallel arcs counts separately.  Cycles are taken up to rotation, paths have
length at least one, and each loop arc is a cycle of length one.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterator, List, Tuple

from .digraph import Digraph, Graph
from .polynomial import MultiPoly, falling_factorial

LITERAL = "literal"
CORRECTED = "corrected"
XI_MODES = (LITERAL, CORRECTED)


def _poly_x(counts: Dict[int, int]) -> MultiPoly:
    return MultiPoly({(0, k, 0, 0): c for k, c in counts.items()})


# -- cycles and paths --------------------------------------------------------


def cycle_counts(d: Digraph) -> Dict[int, int]:
    """Number of directed cycles of each length."""
    n, adj = d.n, d.adj
    counts: Counter = Counter()
    for v in range(n):
        if adj[v][v]:
            counts[1] += adj[v][v]

    # rooted at the smallest vertex on the cycle, so each rotation class appears once
    def extend(start, v, weight, length, seen):
        for w in range(start, n):
            a = adj[v][w]
            if not a:
                continue
            if w == start:
                if length >= 2:
                    counts[length] += weight * a
            elif w not in seen:
                seen.add(w)
                extend(start, w, weight * a, length + 1, seen)
                seen.discard(w)

    for s in range(n):
        extend(s, s, 1, 1, {s})
    return dict(counts)


def _paths_from(d: Digraph, start: int, reverse: bool = False) -> Counter:
    n, adj = d.n, d.adj
    counts: Counter = Counter()

    def step(v, weight, length, seen):
        for w in range(n):
            a = adj[w][v] if reverse else adj[v][w]
            if a and w not in seen:
                counts[length + 1] += weight * a
                seen.add(w)
                step(w, weight * a, length + 1, seen)
                seen.discard(w)

    step(start, 1, 0, {start})
    return counts


def path_counts(d: Digraph) -> Dict[int, int]:
    """Number of directed simple paths of each length (length >= 1)."""
    total: Counter = Counter()
    for v in range(d.n):
        total.update(_paths_from(d, v))
    return dict(total)


def sigma_enum(d: Digraph) -> MultiPoly:
    return _poly_x(cycle_counts(d))


def pi_enum(d: Digraph) -> MultiPoly:
    return _poly_x(path_counts(d))


def pi_source_enum(d: Digraph, v: int) -> MultiPoly:
    """Generating function of paths starting at ``v``."""
    return _poly_x(_paths_from(d, v))


def pi_sink_enum(d: Digraph, v: int) -> MultiPoly:
    """Generating function of paths ending at ``v``."""
    return _poly_x(_paths_from(d, v, reverse=True))


def cycle_sequences(d: Digraph) -> Iterator[List[int]]:
    """Vertex sequences of the simple cycles of length >= 2 in the support, smallest vertex first."""
    n, adj = d.n, d.adj

    def extend(path, seen):
        v = path[-1]
        for w in range(path[0], n):
            if not adj[v][w]:
                continue
            if w == path[0]:
                if len(path) >= 2:
                    yield list(path)
            elif w not in seen:
                seen.add(w)
                path.append(w)
                yield from extend(path, seen)
                path.pop()
                seen.discard(w)

    for s in range(n):
        yield from extend([s], {s})


def path_sequences(d: Digraph) -> Iterator[List[int]]:
    """Vertex sequences of the simple directed paths with at least one arc."""
    n, adj = d.n, d.adj

    def extend(path, seen):
        v = path[-1]
        for w in range(n):
            if adj[v][w] and w not in seen:
                seen.add(w)
                path.append(w)
                yield list(path)
                yield from extend(path, seen)
                path.pop()
                seen.discard(w)

    for s in range(n):
        yield from extend([s], {s})


def _multi_added_weight(orig: List[int], added: List[int]) -> int:
    """Choices of one copy per step, original or added, using at least two added copies."""
    full = none = 1
    for o, a in zip(orig, added):
        full *= o + a
        none *= o
    one = 0
    for k, a in enumerate(added):
        term = a
        for m, o in enumerate(orig):
            if m != k:
                term *= o
        one += term
    return full - none - one


def _spurious(d: Digraph, v: int, closed: bool) -> MultiPoly:
    keep = [u for u in range(d.n) if u != v]
    orig = d.vertex_delete(v).adj
    added = [[d.adj[i][v] * d.adj[v][j] for j in keep] for i in keep]
    contracted = d.vertex_contract(v)
    counts: Counter = Counter()
    for seq in cycle_sequences(contracted) if closed else path_sequences(contracted):
        steps = list(zip(seq, seq[1:] + seq[:1])) if closed else list(zip(seq, seq[1:]))
        w = _multi_added_weight([orig[i][j] for i, j in steps], [added[i][j] for i, j in steps])
        if w:
            counts[len(steps)] += w
    return _poly_x(counts)


def spurious_cycle_enum(d: Digraph, v: int) -> MultiPoly:
    """Cycles of ``D / v`` that use at least two of the arcs the contraction adds.

    An arc ``(i, j)`` of ``D / v`` has ``adj[i][j]`` original copies and
    ``adj[i][v] * adj[v][j]`` added ones; a cycle is counted once per choice of
    copies with two or more added.
    """
    return _spurious(d, v, closed=True)


def spurious_path_enum(d: Digraph, v: int) -> MultiPoly:
    """Paths of ``D / v`` that use at least two added arcs, counted as for cycles."""
    return _spurious(d, v, closed=False)

# -- degree-constrained spanning subgraphs -----------------------------------


@dataclass(frozen=True)
class CoverStats:
    arcs: int  # |F|
    kc: int  # directed-cycle components
    kp: int  # directed-path components with at least one arc
    k: int  # all components, isolated vertices included
    c: int  # covered components
    c1: int  # loop components


@dataclass(frozen=True)
class Component:
    cycle: bool
    length: int  # number of arcs


def degree_constrained_subsets(d: Digraph) -> Iterator[Tuple[Dict[int, int], int]]:
    """Yield ``(successor map, weight)`` for each arc-support set with in/out-degree <= 1.

    A support set picks at most one out-slot per vertex and at most one in-slot per
    vertex, i.e. a partial injection.  The weight is the product of the chosen
    multiplicities (two parallel arcs can never be chosen together).
    """
    n, adj = d.n, d.adj
    succ: Dict[int, int] = {}
    used_heads = [False] * n

    def choose(v, weight):
        if v == n:
            yield dict(succ), weight
            return
        yield from choose(v + 1, weight)
        row = adj[v]
        for w in range(n):
            if row[w] and not used_heads[w]:
                used_heads[w] = True
                succ[v] = w
                yield from choose(v + 1, weight * row[w])
                del succ[v]
                used_heads[w] = False

    yield from choose(0, 1)


def decompose(n: int, succ: Dict[int, int]) -> Tuple[List[Component], int]:
    """Split a degree-constrained arc set into covered components and an isolated-vertex count."""
    has_pred = set(succ.values())
    seen = set()
    comps: List[Component] = []
    for v in range(n):
        if v in succ and v not in has_pred:
            length = 0
            w = v
            while w in succ:
                seen.add(w)
                w = succ[w]
                length += 1
            seen.add(w)
            comps.append(Component(cycle=False, length=length))
    for v in range(n):
        if v in succ and v not in seen:
            length = 0
            w = v
            while w not in seen:
                seen.add(w)
                w = succ[w]
                length += 1
            comps.append(Component(cycle=True, length=length))
    isolated = sum(1 for v in range(n) if v not in succ and v not in has_pred)
    return comps, isolated


def subgraph_stats_enum(d: Digraph) -> Iterator[Tuple[CoverStats, int]]:
    for succ, weight in degree_constrained_subsets(d):
        comps, isolated = decompose(d.n, succ)
        kc = sum(1 for c in comps if c.cycle)
        kp = len(comps) - kc
        c1 = sum(1 for c in comps if c.cycle and c.length == 1)
        yield CoverStats(len(succ), kc, kp, len(comps) + isolated, len(comps), c1), weight


def _collect(d: Digraph, exponent) -> MultiPoly:
    acc: Counter = Counter()
    for st, w in subgraph_stats_enum(d):
        e = exponent(d.n, st)
        if e is not None:
            acc[e] += w
    return MultiPoly(dict(acc))


def sigma_hat_enum(d: Digraph) -> MultiPoly:
    return _collect(d, lambda n, s: (0, s.arcs, s.kc, 0) if s.kp == 0 else None)


def pi_hat_enum(d: Digraph) -> MultiPoly:
    return _collect(d, lambda n, s: (0, s.arcs, s.kp, 0) if s.kc == 0 else None)


def sigma_pi_enum(d: Digraph) -> MultiPoly:
    return _collect(d, lambda n, s: (0, s.arcs, s.kc, s.kp))


def cover_counts(d: Digraph) -> Dict[Tuple[int, int], int]:
    """``(paths, cycles) -> number of cycle-path covers``, isolated vertices counting as paths."""
    acc: Counter = Counter()
    for st, w in subgraph_stats_enum(d):
        acc[(d.n - st.arcs, st.kc)] += w
    return dict(acc)


def geo_cover_enum(d: Digraph) -> MultiPoly:
    return MultiPoly({(0, i, j, 0): c for (i, j), c in cover_counts(d).items()})


def cover_enum(d: Digraph) -> MultiPoly:
    total = MultiPoly()
    for (i, j), c in cover_counts(d).items():
        total = total + falling_factorial(i) * MultiPoly.monomial(c, y=j)
    return total


def xi_explicit(d: Digraph, statistic: str = CORRECTED) -> MultiPoly:
    """Sum over admissible pairs (A, B) of the explicit arc-elimination monomial.

    Each covered component of ``F = A | B`` lies wholly in A or wholly in B (no vertex
    may touch arcs of both), so the pairs are 2-colourings of the components.  The
    x-exponent subtracts ``s(A)``: the number of loops in A for ``"literal"``, the
    number of cycle components of any length in A for ``"corrected"``.
    """
    if statistic not in XI_MODES:
        raise ValueError(f"statistic must be one of {XI_MODES}")
    acc: Counter = Counter()
    for succ, weight in degree_constrained_subsets(d):
        comps, isolated = decompose(d.n, succ)
        k = len(comps) + isolated
        size = len(succ)
        for colouring in itertools.product((False, True), repeat=len(comps)):
            in_b = [comp for comp, b in zip(comps, colouring) if b]
            in_a = [comp for comp, b in zip(comps, colouring) if not b]
            c_b = len(in_b)
            if statistic == LITERAL:
                s_a = sum(1 for comp in in_a if comp.cycle and comp.length == 1)
            else:
                s_a = sum(1 for comp in in_a if comp.cycle)
            acc[(0, k - c_b - s_a, size - c_b, c_b)] += weight
    return MultiPoly(dict(acc))


def xi_enum(d: Digraph) -> MultiPoly:
    return xi_explicit(d, CORRECTED)


# -- undirected graphs -------------------------------------------------------


def undirected_cycle_counts(g: Graph) -> Dict[int, int]:
    """Cycles of length >= 3, each counted once regardless of start and direction."""
    nbrs = [set(g.neighbors(v)) for v in range(g.n)]
    counts: Counter = Counter()

    def extend(start, v, path):
        for w in nbrs[v]:
            if w == start and len(path) >= 3 and path[1] < path[-1]:
                counts[len(path)] += 1
            elif w > start and w not in path:
                path.append(w)
                extend(start, w, path)
                path.pop()

    for s in range(g.n):
        extend(s, s, [s])
    return dict(counts)


def undirected_path_counts(g: Graph) -> Dict[int, int]:
    """Paths of length >= 1, a path and its reversal counted once."""
    nbrs = [set(g.neighbors(v)) for v in range(g.n)]
    counts: Counter = Counter()

    def extend(path):
        for w in nbrs[path[-1]]:
            if w not in path:
                path.append(w)
                if path[0] < path[-1]:
                    counts[len(path) - 1] += 1
                extend(path)
                path.pop()

    for s in range(g.n):
        extend([s])
    return dict(counts)


def undirected_enum(g: Graph) -> Tuple[MultiPoly, MultiPoly]:
    return _poly_x(undirected_cycle_counts(g)), _poly_x(undirected_path_counts(g))


def orient(g: Graph) -> Digraph:
    return g.orient()


ALL_ENUM = {
    "sigma": sigma_enum,
    "pi": pi_enum,
    "sigma-hat": sigma_hat_enum,
    "pi-hat": pi_hat_enum,
    "sigma-pi": sigma_pi_enum,
    "geo-cover": geo_cover_enum,
    "cover": cover_enum,
    "xi": xi_enum,
}


def enum_poly(name: str, d: Digraph) -> MultiPoly:
    try:
        fn = ALL_ENUM[name]
    except KeyError:
        raise ValueError(f"unknown polynomial {name!r}; choose from {sorted(ALL_ENUM)}") from None
    return fn(d)

