"""
Generalized F-signatures as cell volumes
========================================

Each conic class owns a cell of the half-open unit cube. Its volume is the
F-signature of the class. This script checks two closed forms and the fact
that the cells tile the cube.
"""

# %%
# Two chains with r and s elements: the values are Eulerian numbers
# divided by d!.
from fractions import Fraction
from math import comb, factorial

from hibiconic import augment, disjoint_chains, signature_table
from hibiconic.geometry import eulerian
from hibiconic.segre import segre_tree

r, s = 2, 3
d = r + s + 1
ap = augment(disjoint_chains([r, s]))
table = signature_table(ap, segre_tree(ap))
for (c,), v in table.items():
    print(f"c={c:+d}  volume {v}  A(d, c+s+1)/d! = {Fraction(eulerian(d, c + s + 1), factorial(d))}")

# %%
# t one-element chains. The origin gets 2/(t+1); a class whose 0/1 vector
# has q ones gets 1/(binom(t, q)(t+1)).
t = 4
ap = augment(disjoint_chains([1] * t))
table = signature_table(ap, segre_tree(ap))
print("origin:", table[(0,) * (t - 1)], "expected", Fraction(2, t + 1))
for q in range(1, t):
    print(f"q={q}: expected {Fraction(1, comb(t, q) * (t + 1))}")
print("total:", sum(table.values()))

# %%
# A second route counts orderings of fractional parts instead of computing
# volumes; the two tables agree exactly.
from hibiconic import signature_table_by_alcoves

ap = augment(disjoint_chains([1, 2, 1]))
tree = segre_tree(ap)
print(signature_table(ap, tree) == signature_table_by_alcoves(ap, tree))
