"""Mutations of NCCR generator sets for Segre products and their exchange graph.

A generator set is a finite set of class vectors in ``Z^(t-1)``. Mutating
``L`` at ``chi`` replaces ``chi`` by ``nu = chi + r * sum_{b in B} beta_b``
where ``B`` is the set of weights on which an admissible functional
``lambda`` is positive. Admissibility asks that ``lambda`` separates ``chi``
strictly below the rest of ``L``, and that every intermediate lattice point
on the way from ``chi`` to ``nu`` lies in the rest of ``L``.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import Constraint, strict_feasibility
from .segre import SegreSpec, nccr_set, weights

__all__ = [
    "MutationError",
    "Admissible",
    "ExchangeGraph",
    "admissible_patterns",
    "find_admissible_lambda",
    "is_admissible",
    "right_mutation",
    "left_mutation",
    "negate",
    "translate",
    "canonicalize",
    "exchange_graph",
]

Point = tuple[int, ...]
GenSet = frozenset  # frozenset[Point]


class MutationError(ValueError):
    """No admissible functional exists, or admissible ones disagree."""


@dataclass(frozen=True)
class Admissible:
    """An admissible functional, its positive weight set and the mutated vertex.

    ``pattern`` lists 1-based weight indices.
    """

    lam: tuple[Fraction, ...]
    pattern: tuple[int, ...]
    nu: Point


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def _add(a: Sequence[int], b: Sequence[int], k: int = 1) -> Point:
    return tuple(x + k * y for x, y in zip(a, b))


def negate(L: Iterable[Point]) -> GenSet:
    return frozenset(tuple(-v for v in p) for p in L)


def translate(L: Iterable[Point], eta: Sequence[int]) -> GenSet:
    """``{p - eta : p in L}``."""
    return frozenset(tuple(a - b for a, b in zip(p, eta)) for p in L)


def _check(spec: SegreSpec, L: Iterable[Point], chi: Sequence[int]) -> tuple[GenSet, Point]:
    L = frozenset(tuple(p) for p in L)
    chi = tuple(chi)
    if any(len(p) != spec.rank for p in L) or len(chi) != spec.rank:
        raise ValueError(f"points need {spec.rank} coordinates")
    if chi not in L:
        raise ValueError(f"{chi} is not in the generator set")
    return L, chi


def _partial_sums_ok(spec: SegreSpec, rest: GenSet, chi: Point, pattern: Sequence[int]) -> bool:
    beta = weights(spec)
    r = spec.r
    top = r * len(pattern)
    for ks in itertools.product(range(r + 1), repeat=len(pattern)):
        s = sum(ks)
        if 1 <= s <= top - 1:
            p = chi
            for k, b in zip(ks, pattern):
                p = _add(p, beta[b - 1], k)
            if p not in rest:
                return False
    return True


def _nu(spec: SegreSpec, chi: Point, pattern: Sequence[int]) -> Point:
    beta = weights(spec)
    p = chi
    for b in pattern:
        p = _add(p, beta[b - 1], spec.r)
    return p


def _patterns(t: int) -> Iterable[tuple[int, ...]]:
    for size in range(1, t + 1):
        yield from itertools.combinations(range(1, t + 1), size)


def admissible_patterns(spec: SegreSpec, L: Iterable[Point], chi: Sequence[int]) -> list[Admissible]:
    """Every positive-weight pattern realised by an admissible functional.

    For each pattern ``B`` an exact LP looks for ``lambda`` with
    ``<lambda, beta_b> > 0`` on ``B``, ``<= 0`` off ``B`` and
    ``<lambda, mu - chi> > 0`` for the other points ``mu``; the partial sum
    condition then depends only on ``B``.
    """
    L, chi = _check(spec, L, chi)
    rest = L - {chi}
    beta = weights(spec)
    k = spec.rank
    found = []
    for pattern in _patterns(spec.t):
        if not _partial_sums_ok(spec, rest, chi, pattern):
            continue
        cons = [Constraint(b, ">" if i + 1 in pattern else "<=", 0) for i, b in enumerate(beta)]
        cons += [Constraint([a - c for a, c in zip(mu, chi)], ">", 0) for mu in sorted(rest)]
        res = strict_feasibility(cons, k)
        if res.feasible:
            found.append(Admissible(res.witness, pattern, _nu(spec, chi, pattern)))
    return found


def find_admissible_lambda(spec: SegreSpec, L: Iterable[Point], chi: Sequence[int]) -> Admissible | None:
    """The first admissible functional in pattern order, or ``None``."""
    found = admissible_patterns(spec, L, chi)
    return found[0] if found else None


def is_admissible(spec: SegreSpec, L: Iterable[Point], chi: Sequence[int], lam: Sequence) -> bool:
    """Check a given functional against both admissibility conditions."""
    L, chi = _check(spec, L, chi)
    rest = L - {chi}
    lam = [Fraction(v) for v in lam]
    if any(_dot(lam, mu) <= _dot(lam, chi) for mu in rest):
        return False
    pattern = tuple(i + 1 for i, b in enumerate(weights(spec)) if _dot(lam, b) > 0)
    return bool(pattern) and _partial_sums_ok(spec, rest, chi, pattern)


def _unique_nu(spec: SegreSpec, L: GenSet, chi: Point) -> Point:
    found = admissible_patterns(spec, L, chi)
    if not found:
        raise MutationError(f"no admissible functional at {chi}")
    nus = {a.nu for a in found}
    if len(nus) != 1:
        raise MutationError(f"admissible functionals at {chi} give different results {sorted(nus)}")
    return found[0].nu


def right_mutation(spec: SegreSpec, L: Iterable[Point], chi: Sequence[int], lam: Sequence | None = None) -> GenSet:
    """``(L - {chi}) u {nu}`` for an admissible functional at ``chi``.

    With ``lam`` omitted every admissible pattern is tried and they must all
    produce the same ``nu``.

    Examples
    --------
    >>> spec = SegreSpec(t=3, r=2)
    >>> L = {(0, 0), (1, 0), (0, 1), (1, 1)}
    >>> sorted(right_mutation(spec, L, (1, 0), lam=(-1, 1)))
    [(0, 0), (0, 1), (1, 1), (1, 2)]
    """
    L, chi = _check(spec, L, chi)
    if lam is None:
        nu = _unique_nu(spec, L, chi)
    else:
        if not is_admissible(spec, L, chi, lam):
            raise MutationError(f"functional {tuple(lam)} is not admissible at {chi}")
        pattern = tuple(i + 1 for i, b in enumerate(weights(spec)) if _dot(lam, b) > 0)
        nu = _nu(spec, chi, pattern)
    return (L - {chi}) | {nu}


def left_mutation(spec: SegreSpec, L: Iterable[Point], chi: Sequence[int], lam: Sequence | None = None) -> GenSet:
    """Mirror image of :func:`right_mutation` under ``c -> -c``.

    ``lam`` here is the functional for the mutation of ``-L`` at ``-chi``.
    """
    L, chi = _check(spec, L, chi)
    neg_chi = tuple(-v for v in chi)
    return negate(right_mutation(spec, negate(L), neg_chi, lam))


def canonicalize(L: Iterable[Point]) -> GenSet:
    """Translate ``L`` so that its lexicographically least point is the origin.

    Among the translates ``L - eta`` with ``eta`` in ``L`` this is the one
    whose ascending-sorted point list is lexicographically greatest.

    Examples
    --------
    >>> sorted(canonicalize({(1, 0), (2, 0)}))
    [(0, 0), (1, 0)]
    """
    L = [tuple(p) for p in L]
    if not L:
        raise ValueError("cannot canonicalize an empty set")
    return translate(L, min(L))


@dataclass
class ExchangeGraph:
    """Vertices are generator sets, edges join sets related by a mutation.

    ``edges`` maps a vertex index pair ``(i, j)``, ``i < j``, to the labels
    ``(direction, chi, nu, source)`` of mutations realising it.
    """

    spec: SegreSpec
    mode: str
    vertices: list[GenSet] = field(default_factory=list)
    edges: dict[tuple[int, int], list[tuple[str, Point, Point, int]]] = field(default_factory=dict)
    truncated: bool = False

    def index(self, L: Iterable[Point]) -> int:
        return self.vertices.index(frozenset(L))

    def edge_set(self) -> set[frozenset]:
        return {frozenset((self.vertices[i], self.vertices[j])) for i, j in self.edges}

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj: dict[int, set[int]] = {i: set() for i in range(len(self.vertices))}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        seen, stack = {0}, [0]
        while stack:
            for w in adj[stack.pop()] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == len(self.vertices)

    @staticmethod
    def node_label(L: GenSet) -> str:
        return " ".join("(" + ",".join(str(v) for v in p) + ")" for p in sorted(L))

    def to_dot(self) -> str:
        lines = ["graph exchange {"]
        for i, L in enumerate(self.vertices):
            lines.append(f'  n{i} [label="{self.node_label(L)}"];')
        for i, j in sorted(self.edges):
            lines.append(f"  n{i} -- n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "r": self.spec.r,
            "t": self.spec.t,
            "vertices": [[list(p) for p in sorted(L)] for L in self.vertices],
            "edges": [[i, j] for i, j in sorted(self.edges)],
            "truncated": self.truncated,
        }


def _neighbours(spec: SegreSpec, L: GenSet, mode: str) -> list[tuple[str, Point, Point, GenSet]]:
    out = []
    origin = (0,) * spec.rank
    for chi in sorted(L):
        for direction, fn in (("right", right_mutation), ("left", left_mutation)):
            try:
                M = fn(spec, L, chi)
            except MutationError as exc:
                if "different results" in str(exc):
                    raise
                continue
            diff = M - L
            if len(diff) != 1:
                continue
            (nu,) = diff
            if mode == "generators":
                if origin not in M:
                    continue
            else:
                M = canonicalize(M)
            if M != L:
                out.append((direction, chi, nu, M))
    return out


def _expand(args):
    spec, L, mode = args
    return _neighbours(spec, L, mode)


def exchange_graph(
    spec: SegreSpec,
    start: Iterable[Point] | None = None,
    mode: str = "generators",
    cap: int = 10000,
    jobs: int = 1,
) -> ExchangeGraph:
    """Breadth-first closure of a generator set under mutation.

    Parameters
    ----------
    spec : SegreSpec
    start : iterable of points, optional
        Defaults to :func:`~hibiconic.segre.nccr_set`.
    mode : {"generators", "translation"}
        ``"generators"`` keeps sets containing the origin as they are and
        drops mutations that remove the origin. ``"translation"`` identifies
        sets up to translation via :func:`canonicalize`.
    cap : int
        Stop, with ``truncated`` set, once this many vertices are found.
    jobs : int
        Worker processes used to expand each BFS layer. The result does
        not depend on it.
    """
    if mode not in ("generators", "translation"):
        raise ValueError(f"unknown mode {mode!r}")
    L0 = frozenset(tuple(p) for p in (nccr_set(spec) if start is None else start))
    if mode == "translation":
        L0 = canonicalize(L0)
    elif (0,) * spec.rank not in L0:
        raise ValueError("generator mode needs a start set containing the origin")
    g = ExchangeGraph(spec, mode, [L0])
    where = {L0: 0}
    layer = [L0]
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while layer and not g.truncated:
            args = [(spec, L, mode) for L in layer]
            results = list(pool.map(_expand, args)) if pool else [_expand(a) for a in args]
            nxt = []
            for L, nbrs in zip(layer, results):
                i = where[L]
                for direction, chi, nu, M in nbrs:
                    if M not in where:
                        if len(g.vertices) >= cap:
                            g.truncated = True
                            continue
                        where[M] = len(g.vertices)
                        g.vertices.append(M)
                        nxt.append(M)
                    j = where[M]
                    key = (min(i, j), max(i, j))
                    g.edges.setdefault(key, []).append((direction, chi, nu, i))
            layer = nxt
    finally:
        if pool:
            pool.shutdown()
    return g
