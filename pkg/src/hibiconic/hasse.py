"""Spanning trees, fundamental cycles and circuits of a Hasse diagram.

Cycles are closed walks ``(v_0, v_1, ..., v_{k-1})`` in the undirected Hasse
diagram of ``P^``; the step ``v_{k-1} -> v_0`` closes the walk. A step that
goes up in the order traverses its edge positively, a step down negatively.
A circuit is a cycle without chords.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .poset import AugmentedPoset

__all__ = [
    "TreeError",
    "SpanningTree",
    "Cycle",
    "CyclePartition",
    "choose_spanning_tree",
    "random_spanning_tree",
    "fundamental_cycle",
    "enumerate_circuits",
    "simple_cycles",
    "cycle_partition",
]


class TreeError(ValueError):
    """An edge set that is not a spanning tree of the Hasse diagram."""


@dataclass(frozen=True)
class SpanningTree:
    """A spanning tree ``T`` of the Hasse diagram; ``cotree`` is its complement.

    Both are sorted tuples of edge indices. Cotree edge ``cotree[j]`` carries
    class coordinate ``j``.
    """

    poset: AugmentedPoset
    edges: tuple[int, ...]
    cotree: tuple[int, ...]

    def labels(self) -> list[str]:
        return [self.poset.edge_label(k) for k in self.edges]

    def path(self, start: int, goal: int) -> list[int]:
        """Vertices of the unique tree path from ``start`` to ``goal``."""
        ap = self.poset
        adj: dict[int, list[int]] = {v: [] for v in range(ap.d + 1)}
        for k in self.edges:
            i, j = ap.edges[k]
            adj[i].append(j)
            adj[j].append(i)
        parent = {start: None}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            if v == goal:
                break
            for w in sorted(adj[v]):
                if w not in parent:
                    parent[w] = v
                    queue.append(w)
        out = [goal]
        while out[-1] != start:
            out.append(parent[out[-1]])
        return out[::-1]


class _UnionFind:
    def __init__(self, size: int) -> None:
        self.parent = list(range(size))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def _make_tree(ap: AugmentedPoset, edges: Iterable[int]) -> SpanningTree:
    chosen = tuple(sorted(set(edges)))
    if len(chosen) != ap.d:
        raise TreeError(f"a spanning tree has {ap.d} edges, got {len(chosen)}")
    if any(not 0 <= k < ap.n for k in chosen):
        raise TreeError("edge index out of range")
    uf = _UnionFind(ap.d + 1)
    for k in chosen:
        if not uf.union(*ap.edges[k]):
            raise TreeError(f"edge {ap.edge_label(k)} closes a cycle")
    in_tree = set(chosen)
    cotree = tuple(k for k in range(ap.n) if k not in in_tree)
    return SpanningTree(ap, chosen, cotree)


def choose_spanning_tree(ap: AugmentedPoset, seed: Iterable[int] | None = None) -> SpanningTree:
    """A spanning tree of the Hasse diagram of ``P^``.

    Without ``seed`` the tree is the breadth-first tree from the bottom,
    scanning incident edges in index order. With ``seed`` the given edge
    indices are validated and used as the tree.

    Raises
    ------
    TreeError
        If ``seed`` has the wrong size, contains a cycle or misses a vertex.
    """
    if seed is not None:
        return _make_tree(ap, seed)
    incident: dict[int, list[int]] = {v: [] for v in range(ap.d + 1)}
    for k, (i, j) in enumerate(ap.edges):
        incident[i].append(k)
        incident[j].append(k)
    seen = {0}
    queue = deque([0])
    tree = []
    while queue:
        v = queue.popleft()
        for k in incident[v]:
            i, j = ap.edges[k]
            w = j if i == v else i
            if w not in seen:
                seen.add(w)
                tree.append(k)
                queue.append(w)
    return _make_tree(ap, tree)


def random_spanning_tree(ap: AugmentedPoset, rng: random.Random) -> SpanningTree:
    """Kruskal's algorithm on a random edge order."""
    order = list(range(ap.n))
    rng.shuffle(order)
    uf = _UnionFind(ap.d + 1)
    return _make_tree(ap, [k for k in order if uf.union(*ap.edges[k])])


@dataclass(frozen=True)
class Cycle:
    """A cycle of the Hasse diagram as a closed vertex sequence."""

    poset: AugmentedPoset
    vertices: tuple[int, ...]

    def steps(self) -> list[tuple[int, int]]:
        """``(edge index, +1 up / -1 down)`` for each step of the walk."""
        ap = self.poset
        out = []
        vs = self.vertices
        for a, b in zip(vs, vs[1:] + vs[:1]):
            if (a, b) in ap.edge_index:
                out.append((ap.edge_index[(a, b)], 1))
            elif (b, a) in ap.edge_index:
                out.append((ap.edge_index[(b, a)], -1))
            else:
                raise ValueError(f"{ap.labels[a]} and {ap.labels[b]} are not adjacent")
        return out

    @property
    def edges(self) -> frozenset[int]:
        return frozenset(k for k, _ in self.steps())

    def labels(self) -> tuple[str, ...]:
        return tuple(self.poset.labels[v] for v in self.vertices)

    def is_circuit(self) -> bool:
        """True when no Hasse edge joins two non-consecutive cycle vertices."""
        vs = self.vertices
        pos = {v: i for i, v in enumerate(vs)}
        k = len(vs)
        for i, j in self.poset.edges:
            if i in pos and j in pos and (pos[i] - pos[j]) % k not in (1, k - 1):
                return False
        return True

    def canonical(self) -> "Cycle":
        """Rotation starting at the least vertex, heading to its smaller neighbour."""
        vs = self.vertices
        k = vs.index(min(vs))
        rot = vs[k:] + vs[:k]
        if len(rot) > 2 and rot[-1] < rot[1]:
            rot = rot[:1] + rot[1:][::-1]
        return Cycle(self.poset, rot)


@dataclass(frozen=True)
class CyclePartition:
    """Edges of a cycle split by direction of traversal and tree membership.

    ``x_plus``/``x_minus`` are the edges traversed up/down; the ``y`` sets
    are their tree edges and the ``z`` sets their cotree edges.
    """

    x_plus: frozenset[int]
    x_minus: frozenset[int]
    y_plus: frozenset[int]
    y_minus: frozenset[int]
    z_plus: frozenset[int]
    z_minus: frozenset[int]


def cycle_partition(cycle: Cycle, tree: SpanningTree) -> CyclePartition:
    up = frozenset(k for k, s in cycle.steps() if s > 0)
    down = frozenset(k for k, s in cycle.steps() if s < 0)
    t = frozenset(tree.edges)
    return CyclePartition(up, down, up & t, down & t, up - t, down - t)


def fundamental_cycle(tree: SpanningTree, edge: int) -> Cycle:
    """The cycle closed by a cotree edge, oriented so that edge is traversed up.

    The walk starts at the upper end of ``edge``, follows the tree down to
    its lower end, and closes along ``edge``.
    """
    if edge not in tree.cotree:
        raise TreeError(f"edge {tree.poset.edge_label(edge)} is a tree edge")
    lower, upper = tree.poset.edges[edge]
    return Cycle(tree.poset, tuple(tree.path(upper, lower)))


def simple_cycles(ap: AugmentedPoset) -> list[Cycle]:
    """All simple cycles of the Hasse diagram, each once, in canonical form.

    Depth-first search from each start vertex through larger vertices only.
    """
    nb = ap.neighbors
    found: set[tuple[int, ...]] = set()
    for s in range(ap.d + 1):
        stack = [(s, [s])]
        while stack:
            v, path = stack.pop()
            for w in nb[v]:
                if w == s and len(path) >= 3:
                    found.add(Cycle(ap, tuple(path)).canonical().vertices)
                elif w > s and w not in path:
                    stack.append((w, path + [w]))
    return [Cycle(ap, vs) for vs in sorted(found, key=lambda c: (len(c), c))]


def enumerate_circuits(ap: AugmentedPoset) -> list[Cycle]:
    """All chordless cycles of the Hasse diagram of ``P^`` in canonical form."""
    return [c for c in simple_cycles(ap) if c.is_circuit()]
