"""The divisor class group of a Hibi ring in spanning-tree coordinates.

Torus-invariant divisors are integer vectors ``a`` indexed by Hasse edges.
Principal divisors are the vectors ``(sigma_e(x))_e`` for ``x`` in ``Z^d``,
and since the tree forms are unimodular every class has exactly one
representative vanishing on the tree. Its cotree entries are the class
coordinates, so the class group is ``Z^(n-d)``.
"""

from __future__ import annotations

from typing import Sequence

from .hasse import SpanningTree
from .poset import AugmentedPoset

__all__ = [
    "class_group_rank",
    "tree_transform",
    "tree_coordinates",
    "project_divisor",
    "lift_class",
    "edge_class",
]


def class_group_rank(ap: AugmentedPoset) -> int:
    """Rank ``n - d`` of the (free) class group."""
    return ap.n - ap.d


def tree_transform(tree: SpanningTree) -> list[tuple[int, ...]]:
    """The ``d x d`` matrix whose rows are the forms of the tree edges."""
    return [tree.poset.sigma(k) for k in tree.edges]


def tree_coordinates(tree: SpanningTree, values: Sequence[int]) -> list:
    """The point ``x`` with ``sigma_e(x) = values[i]`` for the ``i``-th tree edge.

    Solved by walking the tree outward from the top, whose coordinate is 0.
    """
    ap = tree.poset
    target = dict(zip(tree.edges, values))
    x: dict[int, object] = {ap.top: 0}
    adj: dict[int, list[int]] = {v: [] for v in range(ap.d + 1)}
    for k in tree.edges:
        i, j = ap.edges[k]
        adj[i].append(k)
        adj[j].append(k)
    stack = [ap.top]
    while stack:
        v = stack.pop()
        for k in adj[v]:
            i, j = ap.edges[k]
            if i == v and j not in x:
                x[j] = x[i] - target[k]
                stack.append(j)
            elif j == v and i not in x:
                x[i] = x[j] + target[k]
                stack.append(i)
    return [x[v] for v in range(ap.d)]


def project_divisor(tree: SpanningTree, a: Sequence[int]) -> tuple[int, ...]:
    """Class coordinates of the divisor vector ``a`` (one entry per edge).

    Subtracts the principal divisor that agrees with ``a`` on the tree and
    reads off the cotree entries.

    Examples
    --------
    >>> from hibiconic.poset import augment, disjoint_chains
    >>> from hibiconic.hasse import choose_spanning_tree
    >>> ap = augment(disjoint_chains([1, 1]))
    >>> T = choose_spanning_tree(ap, seed=[1, 2, 3])
    >>> project_divisor(T, [1, 0, 0, 0])
    (1,)
    """
    ap = tree.poset
    if len(a) != ap.n:
        raise ValueError(f"divisor vector needs {ap.n} entries")
    x = tree_coordinates(tree, [a[k] for k in tree.edges])
    xs = x + [0]
    return tuple(a[k] - (xs[ap.edges[k][0]] - xs[ap.edges[k][1]]) for k in tree.cotree)


def lift_class(tree: SpanningTree, m: Sequence[int]) -> tuple[int, ...]:
    """The representative of class ``m`` that vanishes on the tree."""
    if len(m) != len(tree.cotree):
        raise ValueError(f"class vector needs {len(tree.cotree)} entries")
    a = [0] * tree.poset.n
    for k, v in zip(tree.cotree, m):
        a[k] = v
    return tuple(a)


def edge_class(tree: SpanningTree, edge: int) -> tuple[int, ...]:
    """Class of the vector that is 1 on ``edge`` and 0 elsewhere."""
    a = [0] * tree.poset.n
    a[edge] = 1
    return project_divisor(tree, a)
