"""Segre products of polynomial rings as Hibi rings of disjoint chains.

``SegreSpec(t, r)`` is the Segre product of ``t`` polynomial rings in ``r``
variables each; its poset is ``t`` disjoint chains of ``r - 1`` elements.
Class coordinates use the tree containing every chain edge except the
bottom edges of the first ``t - 1`` chains, so coordinate ``i`` is the class
of the bottom edge of chain ``i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .hasse import SpanningTree, choose_spanning_tree
from .poset import BOTTOM, TOP, AugmentedPoset, PosetError, augment, disjoint_chains

__all__ = [
    "SegreSpec",
    "segre_poset",
    "segre_tree",
    "chain_edges",
    "segre_conic_closed_form",
    "conic_classes",
    "nccr_set",
    "in_L_tilde",
    "L_tilde",
    "is_rank_one_mcm",
    "weights",
    "parse_segre_nccr",
]


@dataclass(frozen=True)
class SegreSpec:
    """Segre product of ``t`` polynomial rings in ``r`` variables."""

    t: int
    r: int

    def __post_init__(self) -> None:
        if self.t < 2 or self.r < 2:
            raise ValueError("Segre data needs t >= 2 and r >= 2")

    @property
    def lengths(self) -> list[int]:
        return [self.r - 1] * self.t

    @property
    def rank(self) -> int:
        return self.t - 1


def parse_segre_nccr(text: str) -> SegreSpec:
    """Parse ``r=2,t=3``."""
    fields = {}
    for part in text.split(","):
        key, sep, val = part.partition("=")
        if not sep or key.strip() not in ("r", "t") or not val.strip().lstrip("-").isdigit():
            raise PosetError(f"expected r=<int>,t=<int>, got {text!r}")
        fields[key.strip()] = int(val)
    if set(fields) != {"r", "t"}:
        raise PosetError(f"expected r=<int>,t=<int>, got {text!r}")
    try:
        return SegreSpec(t=fields["t"], r=fields["r"])
    except ValueError as exc:
        raise PosetError(str(exc)) from None


def segre_poset(spec: SegreSpec) -> AugmentedPoset:
    return augment(disjoint_chains(spec.lengths))


def chain_edges(ap: AugmentedPoset, i: int) -> list[int]:
    """Edge indices of chain ``i`` (1-based) from bottom to top of ``P^``."""
    labels = [BOTTOM]
    j = 1
    while f"p{i}_{j}" in ap.vertex_index:
        labels.append(f"p{i}_{j}")
        j += 1
    labels.append(TOP)
    return [ap.edge_between(a, b) for a, b in zip(labels, labels[1:])]


def segre_tree(ap: AugmentedPoset) -> SpanningTree:
    """All chain edges except the bottom edges of chains ``1 .. t-1``.

    ``ap`` must come from :func:`~hibiconic.poset.disjoint_chains`.
    """
    t = sum(1 for lab in ap.labels if lab.endswith("_1"))
    seed = []
    for i in range(1, t + 1):
        edges = chain_edges(ap, i)
        seed += edges[1:] if i < t else edges
    return choose_spanning_tree(ap, seed)


def segre_conic_closed_form(lengths: Sequence[int]) -> list[tuple[int, ...]]:
    """Conic classes of disjoint chains with the given lengths, by formula.

    ``-r_t <= z_i <= r_i`` and ``-r_j <= z_i - z_j <= r_i`` for ``i != j < t``.
    """
    *rs, rt = lengths
    ranges = [range(-rt, ri + 1) for ri in rs]
    out = []
    for z in itertools.product(*ranges):
        if all(-rs[j] <= z[i] - z[j] <= rs[i] for i in range(len(z)) for j in range(len(z)) if i != j):
            out.append(z)
    return out


def conic_classes(spec: SegreSpec) -> list[tuple[int, ...]]:
    """``C(R)``: ``|c_i| <= r-1`` and ``|c_i - c_j| <= r-1``."""
    return segre_conic_closed_form(spec.lengths)


def nccr_set(spec: SegreSpec) -> list[tuple[int, ...]]:
    """The NCCR generators ``L = C(R) n [0, r-1]^(t-1)``; there are ``r^(t-1)``."""
    return [c for c in conic_classes(spec) if all(0 <= v <= spec.r - 1 for v in c)]


def in_L_tilde(spec: SegreSpec, c: Sequence[int]) -> bool:
    """Membership in the box ``{c : |c_i| <= r-1}``, which contains ``C(R)``."""
    if len(c) != spec.rank:
        raise ValueError(f"class vector needs {spec.rank} entries")
    return all(abs(v) <= spec.r - 1 for v in c)


def L_tilde(spec: SegreSpec) -> list[tuple[int, ...]]:
    """All members of the box ``[-(r-1), r-1]^(t-1)`` in lexicographic order."""
    return list(itertools.product(range(1 - spec.r, spec.r), repeat=spec.rank))


def is_rank_one_mcm(spec: SegreSpec, c: Sequence[int]) -> bool:
    """Whether the class of ``c`` gives a rank one maximal Cohen-Macaulay module.

    Append ``c_t = 0``; the test is that, once sorted, consecutive entries
    differ by at most ``r - 1``.
    """
    if len(c) != spec.rank:
        raise ValueError(f"class vector needs {spec.rank} entries")
    vals = sorted(list(c) + [0])
    return all(b - a <= spec.r - 1 for a, b in zip(vals, vals[1:]))


def weights(spec: SegreSpec) -> list[tuple[int, ...]]:
    """Weights of the torus action on the variables, one per ring.

    Unit vectors for rings ``1 .. t-1`` and ``(-1, ..., -1)`` for ring ``t``;
    each occurs with multiplicity ``r``.
    """
    k = spec.rank
    out = [tuple(int(i == j) for j in range(k)) for i in range(k)]
    out.append(tuple([-1] * k))
    return out
