# %% [markdown]
# # Polynomials of small digraphs
#
# Every polynomial in the package is computed two ways: by an arc-elimination
# recurrence and by brute-force enumeration of spanning subgraphs.  This notebook
# tabulates both on a handful of named graphs.

# %%
from dipoly import Engine, POLYNOMIALS
from dipoly import oracle
from dipoly.digraph import E, Digraph, directed_cycle, graph_w, loop_graph

graphs = {
    "E2": E(2),
    "L1": loop_graph(),
    "arc": Digraph.from_arcs(2, [(0, 1)]),
    "C2": directed_cycle(2),
    "C3": directed_cycle(3),
    "W": graph_w(),
}

# %% [markdown]
# One engine serves all queries, so isomorphic subgraphs met along the way are
# looked up rather than recomputed.

# %%
engine = Engine()
for label, d in graphs.items():
    print(f"== {label}: {d.to_json()}")
    for name in POLYNOMIALS:
        rec = engine.compute(name, d)
        enum = oracle.enum_poly(name, d)
        flag = "" if rec == enum else "   <-- MISMATCH"
        print(f"  {name:>10}: {rec}{flag}")

# %% [markdown]
# Parallel arcs count with multiplicity: a 2-cycle with two arcs one way and
# three back has six directed 2-cycles.

# %%
heavy = Digraph.from_arcs(2, [(0, 1, 2), (1, 0, 3)])
print(oracle.cycle_counts(heavy), engine.sigma(heavy))

# %%
print(engine.stats)
