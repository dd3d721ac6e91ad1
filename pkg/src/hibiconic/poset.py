"""Finite posets, their bounded extension and the edge forms of its Hasse diagram.

A poset ``P`` is given by its elements and cover relations. Adjoining a new
minimum and maximum gives the bounded poset ``P^`` whose vertices are indexed
``0 .. d`` with ``0`` the bottom, ``1 .. d-1`` the elements of ``P`` in input
order and ``d`` the top. Each cover ``p_i < p_j`` of ``P^`` is an edge and
carries the linear form ``x_i - x_j`` on ``Q^d`` (``-x_i`` when ``p_j`` is the
top, whose coordinate is fixed at zero).
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping, Sequence

__all__ = [
    "BOTTOM",
    "TOP",
    "PosetError",
    "Poset",
    "AugmentedPoset",
    "parse_poset",
    "load_poset",
    "augment",
    "chain",
    "disjoint_chains",
    "parse_segre_lengths",
]

BOTTOM = "0̂"
TOP = "1̂"


class PosetError(ValueError):
    """Malformed poset input."""


@dataclass(frozen=True)
class Poset:
    """A finite poset given by elements and cover pairs ``(a, b)`` with ``a < b``."""

    elements: tuple[str, ...]
    covers: tuple[tuple[str, str], ...]

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "covers": [list(c) for c in self.covers]}

    def __len__(self) -> int:
        return len(self.elements)


def _check_acyclic(elements: Sequence[str], succ: Mapping[str, list[str]]) -> list[str]:
    indeg = {e: 0 for e in elements}
    for a in elements:
        for b in succ[a]:
            indeg[b] += 1
    queue = deque(e for e in elements if indeg[e] == 0)
    order = []
    while queue:
        a = queue.popleft()
        order.append(a)
        for b in succ[a]:
            indeg[b] -= 1
            if indeg[b] == 0:
                queue.append(b)
    if len(order) != len(elements):
        raise PosetError("cover relation contains a cycle")
    return order


def parse_poset(data) -> Poset:
    """Validate a poset description.

    ``data`` is a mapping ``{"elements": [...], "covers": [[a, b], ...]}`` or
    its JSON text. Duplicate labels, unknown labels, cycles and covers that
    are implied by transitivity are rejected with :class:`PosetError`.

    Examples
    --------
    >>> P = parse_poset({"elements": ["a", "b"], "covers": [["a", "b"]]})
    >>> P.covers
    (('a', 'b'),)
    >>> parse_poset({"elements": ["a", "b", "c"], "covers": [["a", "b"], ["b", "c"], ["a", "c"]]})
    Traceback (most recent call last):
    ...
    hibiconic.poset.PosetError: cover ('a', 'c') is implied by transitivity
    """
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise PosetError(f"invalid JSON: {exc}") from None
    if not isinstance(data, Mapping) or "elements" not in data:
        raise PosetError("expected an object with 'elements' and 'covers'")
    elements = data["elements"]
    covers = data.get("covers", [])
    if not isinstance(elements, list) or not all(isinstance(e, str) and e for e in elements):
        raise PosetError("elements must be a list of non-empty strings")
    if len(set(elements)) != len(elements):
        raise PosetError("duplicate element labels")
    if BOTTOM in elements or TOP in elements:
        raise PosetError(f"labels {BOTTOM!r} and {TOP!r} are reserved")
    known = set(elements)
    pairs: list[tuple[str, str]] = []
    for c in covers:
        if not isinstance(c, (list, tuple)) or len(c) != 2:
            raise PosetError(f"cover {c!r} is not a pair")
        a, b = c
        if a not in known or b not in known:
            raise PosetError(f"cover {c!r} uses an unknown label")
        if a == b:
            raise PosetError(f"cover {c!r} is a loop")
        pairs.append((a, b))
    if len(set(pairs)) != len(pairs):
        raise PosetError("duplicate cover")
    succ: dict[str, list[str]] = {e: [] for e in elements}
    for a, b in pairs:
        succ[a].append(b)
    order = _check_acyclic(elements, succ)
    # reachability through paths of length >= 2
    below: dict[str, set[str]] = {e: set() for e in elements}
    for a in reversed(order):
        for b in succ[a]:
            below[a] |= {b} | below[b]
    for a, b in pairs:
        if any(b in below[m] for m in succ[a] if m != b):
            raise PosetError(f"cover {(a, b)!r} is implied by transitivity")
    return Poset(tuple(elements), tuple(pairs))


def load_poset(path: str | Path) -> Poset:
    """Read and validate a poset JSON file."""
    return parse_poset(Path(path).read_text())


def chain(length: int) -> Poset:
    """A chain ``p1 < p2 < ... < p_length``."""
    labels = tuple(f"p{j}" for j in range(1, length + 1))
    return Poset(labels, tuple(zip(labels, labels[1:])))


def disjoint_chains(lengths: Sequence[int]) -> Poset:
    """Disjoint union of chains; chain ``i`` has ``lengths[i]`` elements.

    Elements are labelled ``p{i}_{j}`` (both 1-based, ``j`` increasing up the
    chain). Its Hibi ring is the Segre product of polynomial rings in
    ``lengths[i] + 1`` variables.
    """
    if not lengths or any(r < 1 for r in lengths):
        raise PosetError("chain lengths must be positive")
    elements, covers = [], []
    for i, r in enumerate(lengths, start=1):
        labels = [f"p{i}_{j}" for j in range(1, r + 1)]
        elements += labels
        covers += list(zip(labels, labels[1:]))
    return Poset(tuple(elements), tuple(covers))


def parse_segre_lengths(text: str) -> list[int]:
    """Parse the ``r1,r2,...,rt`` shorthand for :func:`disjoint_chains`."""
    try:
        lengths = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise PosetError(f"bad chain lengths {text!r}") from None
    if any(r < 1 for r in lengths):
        raise PosetError("chain lengths must be positive")
    return lengths


@dataclass(frozen=True)
class AugmentedPoset:
    """The bounded poset ``P^`` with its Hasse diagram.

    Attributes
    ----------
    poset : Poset
        The underlying poset ``P``.
    labels : tuple of str
        Vertex labels; index 0 is the bottom, index ``d`` the top.
    edges : tuple of (int, int)
        Hasse edges ``(lower, upper)`` sorted lexicographically by vertex
        index. Edge ``k`` (0-based) is displayed as ``e{k+1}``.
    """

    poset: Poset
    labels: tuple[str, ...] = field(init=False)
    edges: tuple[tuple[int, int], ...] = field(init=False)

    def __post_init__(self) -> None:
        P = self.poset
        labels = (BOTTOM,) + P.elements + (TOP,)
        index = {lab: i for i, lab in enumerate(labels)}
        has_lower = {b for _, b in P.covers}
        has_upper = {a for a, _ in P.covers}
        edges = {(index[a], index[b]) for a, b in P.covers}
        d = len(labels) - 1
        for e in P.elements:
            if e not in has_lower:
                edges.add((0, index[e]))
            if e not in has_upper:
                edges.add((index[e], d))
        if not P.elements:
            edges.add((0, d))
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "edges", tuple(sorted(edges)))

    @property
    def d(self) -> int:
        """Dimension of the Hibi ring, ``|P| + 1``."""
        return len(self.labels) - 1

    @property
    def n(self) -> int:
        """Number of Hasse edges of ``P^``."""
        return len(self.edges)

    @property
    def top(self) -> int:
        return self.d

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: k for k, e in enumerate(self.edges)}

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def edge_between(self, a: str, b: str) -> int:
        """Index of the Hasse edge joining the vertices labelled ``a`` and ``b``."""
        i, j = self.vertex_index[a], self.vertex_index[b]
        key = (i, j) if (i, j) in self.edge_index else (j, i)
        if key not in self.edge_index:
            raise KeyError(f"no Hasse edge between {a!r} and {b!r}")
        return self.edge_index[key]

    def edge_label(self, k: int) -> str:
        i, j = self.edges[k]
        return f"{self.labels[i]}<{self.labels[j]}"

    def parse_edge(self, token: str) -> int:
        """Resolve ``e5`` (1-based) or ``a<b`` to an edge index."""
        tok = token.strip()
        if "<" in tok:
            a, b = tok.split("<", 1)
            return self.edge_between(a.strip(), b.strip())
        digits = tok[1:] if tok[:1] in ("e", "E") else tok
        if not digits.isdigit() or not 1 <= int(digits) <= self.n:
            raise KeyError(f"unknown edge {token!r}")
        return int(digits) - 1

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        nb: list[set[int]] = [set() for _ in self.labels]
        for i, j in self.edges:
            nb[i].add(j)
            nb[j].add(i)
        return tuple(tuple(sorted(s)) for s in nb)

    def sigma(self, k: int) -> tuple[int, ...]:
        """Coefficient vector of the form attached to edge ``k``."""
        i, j = self.edges[k]
        row = [0] * self.d
        row[i] += 1
        if j != self.d:
            row[j] -= 1
        return tuple(row)

    def sigma_forms(self) -> list[tuple[int, ...]]:
        return [self.sigma(k) for k in range(self.n)]

    def evaluate(self, x: Sequence) -> tuple[Fraction, ...]:
        """All edge forms evaluated at ``x``."""
        xs = list(x) + [0]
        return tuple(Fraction(xs[i] - xs[j]) for i, j in self.edges)

    def chain_lengths(self) -> set[int]:
        """Lengths of all maximal chains, i.e. of all bottom-to-top paths."""
        up: list[list[int]] = [[] for _ in self.labels]
        for i, j in self.edges:
            up[i].append(j)
        lengths: list[set[int] | None] = [None] * len(self.labels)
        lengths[self.d] = {0}

        def walk(v: int) -> set[int]:
            if lengths[v] is None:
                lengths[v] = {1 + L for w in up[v] for L in walk(w)}
            return lengths[v]

        return walk(0)

    def is_pure(self) -> bool:
        """True when all maximal chains have the same length (Gorenstein case)."""
        return len(self.chain_lengths()) == 1


def augment(poset: Poset) -> AugmentedPoset:
    """Adjoin a bottom and a top element."""
    return AugmentedPoset(poset)
