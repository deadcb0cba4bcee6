# %% [markdown]
# # Claims under test
#
# Some formulas are checked as claims: the search is allowed to refute them, and
# a refutation is reported with a shrunk witness that has been re-verified
# without the memo cache.

# %%
from dipoly.digraph import graph_w
from dipoly.relations import check_vertex_decomposition, falsify

for name in ("xi-literal", "vertex-decomposition", "vertex-decomposition-pi", "coreduction-statement"):
    report = falsify(name, budget_seconds=30)
    print(report.to_text())
    print()

# %% [markdown]
# The vertex formula for cycles also fails on the five-vertex graph W.  Contracting
# the vertex shared by its two triangles creates a 4-cycle that runs through two
# of the added arcs; it matches no cycle of W, yet the formula counts it as x^5.

# %%
print(check_vertex_decomposition(graph_w(), 2).to_text())

# %% [markdown]
# The explicit subset formula for the arc elimination polynomial agrees with the
# recurrence only when every cycle component on the contracted side is
# subtracted, not only the loops.

# %%
from dipoly import corpus
from dipoly.relations import check_xi_explicit_mode

for mode, report in check_xi_explicit_mode(corpus.exhaustive_by_size(2, 2)).items():
    print(mode, report.status, report.witness.to_json() if report.witness else "")
