"""Graph families used by the verification harness and the benchmarks."""
from __future__ import annotations

import itertools
import random
from typing import Iterator, List

from .digraph import Digraph, Graph, complete_digraph, directed_cycle


def exhaustive(max_n: int = 3, max_mult: int = 2, min_n: int = 0) -> Iterator[Digraph]:
    """Every multiplicity matrix with ``min_n <= n <= max_n`` and entries ``<= max_mult``."""
    for n in range(min_n, max_n + 1):
        for vals in itertools.product(range(max_mult + 1), repeat=n * n):
            yield Digraph(n, [vals[i * n:(i + 1) * n] for i in range(n)])


def exhaustive_by_size(max_n: int = 3, max_mult: int = 2) -> List[Digraph]:
    """The exhaustive corpus sorted by vertex count, then arc count."""
    return sorted(exhaustive(max_n, max_mult), key=lambda d: (d.n, d.num_arcs, d.adj))


def random_digraph(rng: random.Random, max_n: int, max_mult: int = 2, min_n: int = 1) -> Digraph:
    n = rng.randint(min_n, max_n)
    density = rng.uniform(0.15, 0.6)
    loop_density = rng.uniform(0.0, 0.4)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            p = loop_density if i == j else density
            row.append(rng.randint(1, max_mult) if rng.random() < p else 0)
        rows.append(row)
    return Digraph(n, rows)


def random_digraphs(count: int, max_n: int, max_mult: int = 2, seed: int = 0,
                    min_n: int = 1) -> List[Digraph]:
    rng = random.Random(seed)
    return [random_digraph(rng, max_n, max_mult, min_n) for _ in range(count)]


def simple_graphs(max_n: int) -> Iterator[Graph]:
    for n in range(max_n + 1):
        yield from Graph.all_graphs(n)


def family(name: str, k: int) -> Digraph:
    """Named benchmark families: ``cycle``, ``complete``, ``empty``."""
    if name == "cycle":
        return directed_cycle(k)
    if name == "complete":
        return complete_digraph(k)
    if name == "empty":
        return Digraph.empty(k)
    raise ValueError(f"unknown family {name!r}")
