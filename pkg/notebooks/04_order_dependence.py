# %% [markdown]
# # Arc order and the t-deformed recurrence
#
# Weighting the deletion branch by t gives a recurrence whose value may depend on
# the order in which arcs are processed.  At t = 1 it never does; with y = z = 0
# it collapses to t^|E| x^|V|.

# %%
import random

from dipoly import corpus
from dipoly.digraph import Digraph, directed_path
from dipoly.engine import divisible_by_t_minus_one_times, random_arc_order, xi_general_rec
from dipoly.polynomial import ONE, ZERO

# %% [markdown]
# The smallest order-dependent digraph has two vertices: an arc 1 -> 0 and a loop at 1.

# %%
d = Digraph.from_arcs(2, [(1, 0), (1, 1)])
a = xi_general_rec(d, [(1, 0), (1, 1)])
b = xi_general_rec(d, [(1, 1), (1, 0)])
print(a)
print(b)
print("difference:", a - b)
print("divisible by (t-1)z:", divisible_by_t_minus_one_times(a - b, "z"))

# %% [markdown]
# On the three-vertex path both orders agree: extracting either arc leaves a
# single isolated vertex.

# %%
p = directed_path(3)
print(xi_general_rec(p, [(0, 1), (1, 2)]) - xi_general_rec(p, [(1, 2), (0, 1)]))

# %%
rng = random.Random(0)
disagree = 0
graphs = corpus.random_digraphs(100, 4, 2, seed=4)
for g in graphs:
    values = {xi_general_rec(g, random_arc_order(g, rng), t_value=ONE) for _ in range(5)}
    degenerate = {xi_general_rec(g, random_arc_order(g, rng), y_value=ZERO, z_value=ZERO) for _ in range(5)}
    symbolic = {xi_general_rec(g, random_arc_order(g, rng)) for _ in range(5)}
    assert len(values) == 1 and len(degenerate) == 1
    disagree += len(symbolic) > 1
print(f"{disagree} of {len(graphs)} graphs depend on the order for symbolic t")
