"""
Mutating an NCCR of a Segre product
===================================

For three polynomial rings in two variables the generator set is
``L = {0, 1}^2``. Mutating at one point replaces it by a new character.
Breadth-first search over all such moves gives the exchange graph.
"""

# %%
from hibiconic import SegreSpec, exchange_graph, nccr_set
from hibiconic.mutation import admissible_patterns, left_mutation, right_mutation

spec = SegreSpec(t=3, r=2)
L = frozenset(nccr_set(spec))
(adm,) = admissible_patterns(spec, L, (1, 0))
print("functional", adm.lam, "positive weights", adm.pattern, "new point", adm.nu)
M = right_mutation(spec, L, (1, 0))
print(sorted(M))
print("left mutation undoes it:", left_mutation(spec, M, adm.nu) == L)

# %%
# The graph of generator sets, i.e. sets that contain the origin.
g = exchange_graph(spec)
print(len(g.vertices), "vertices,", len(g.edges), "edges, connected:", g.is_connected())
print(g.to_dot()[:400])

# %%
# Up to translation only a handful of sets remain.
gt = exchange_graph(spec, mode="translation")
print(len(gt.vertices), "translation classes,", len(gt.edges), "edges")
