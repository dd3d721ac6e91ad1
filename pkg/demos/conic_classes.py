"""
Conic classes of a small poset
==============================

Six elements in two chains of three, with one extra cover joining the
middle of the second chain to the top of the first. The Hasse diagram of
the bounded poset has 9 edges and 8 vertices, so the class group has
rank 2.
"""

# %%
# Build the poset and pick a spanning tree. Edges are named by their
# endpoints, so the choice does not depend on the edge numbering.
from hibiconic import augment, parse_poset
from hibiconic.hasse import choose_spanning_tree, enumerate_circuits

P = parse_poset(
    {
        "elements": ["p1", "p2", "p3", "p4", "p5", "p6"],
        "covers": [["p1", "p2"], ["p2", "p3"], ["p4", "p5"], ["p5", "p6"], ["p5", "p3"]],
    }
)
ap = augment(P)
seed = [("p1", "p2"), ("p2", "p3"), ("p3", "1̂"), ("0̂", "p4"), ("p4", "p5"), ("p5", "p6"), ("p6", "1̂")]
tree = choose_spanning_tree(ap, [ap.edge_between(*e) for e in seed])
print("edges:", ap.n, "dimension:", ap.d)
print("cotree:", [ap.edge_label(k) for k in tree.cotree])

# %%
# Chordless cycles give one pair of inequalities each.
from hibiconic import conic_polytope, enumerate_conic

for c in enumerate_circuits(ap):
    print("circuit", " ".join(c.labels()))
system = conic_polytope(ap, tree)
for ineq in system.inequalities:
    print(f"{ineq.lower} <= {ineq.coefficients} . z <= {ineq.upper}")

# %%
# Lattice points of that system, compared against an exact LP test run
# directly on the edge forms.
from hibiconic import is_conic_class
from hibiconic.conic import box_points

classes = enumerate_conic(system)
print(len(classes), "conic classes:", classes)
box = [(lo - 1, hi + 1) for lo, hi in system.bounds]
agree = all(is_conic_class(tree, z) == (z in classes) for z in box_points(box))
print("LP test agrees on the widened box:", agree)
