# %% [markdown]
# # Identities between the polynomials
#
# Projections, the geometric cover transform, cover reconstruction through the
# falling-factorial basis, the multi-arc reduction and co-reduction are all exact
# statements.  Here each one is swept over every digraph on at most two vertices
# (multiplicities up to 2) plus a seeded random sample.

# %%
import time

from dipoly import corpus
from dipoly.engine import Engine
from dipoly.relations import IDENTITIES, Context, run_identity

graphs = list(corpus.exhaustive_by_size(2, 2)) + corpus.random_digraphs(200, 5, 2, seed=1)
print(len(graphs), "digraphs")

# %%
for name in ("projections", "geo-cover-transform", "cover-from-geo", "multiarc",
             "source-sink", "undirected", "coreduction"):
    t0 = time.perf_counter()
    report = run_identity(IDENTITIES[name], graphs, Context(Engine(), seed=1))
    print(f"{report.status:>4}  {name:<20} {time.perf_counter() - t0:6.2f}s")

# %% [markdown]
# Co-reduction is checked by exact rational evaluation.  On the single loop at
# (x, y, z) = (2, 3, 5) both directions come out by hand as 7/2 and 10.

# %%
from fractions import Fraction

from dipoly.digraph import loop_graph
from dipoly.relations import coreduction_values

L1 = loop_graph()
e = Engine()
point = {"x": Fraction(2), "y": Fraction(3), "z": Fraction(5)}
for direction in ("forward", "backward"):
    cmp = coreduction_values(L1, e.xi(L1), e.sigma_pi(L1), point, direction)
    print(direction, cmp.lhs, cmp.rhs)
