"""Conic divisor classes and their cells.

A divisor vector ``a`` is conic when the open-closed box
``a_e - 1 < sigma_e(x) <= a_e`` (all edges ``e``) has a real solution ``x``.
In spanning-tree coordinates the conic classes are the lattice points of a
polytope cut out by one pair of inequalities per circuit, and each conic
class owns a cell of the half-open unit cube ``(-1, 0]^d``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .classgroup import lift_class
from .exact import Constraint, strict_feasibility
from .hasse import SpanningTree, cycle_partition, enumerate_circuits, fundamental_cycle
from .poset import AugmentedPoset

__all__ = [
    "CapExceeded",
    "CircuitInequality",
    "ConicSystem",
    "Cell",
    "conic_polytope",
    "enumerate_conic",
    "cell_of",
    "divisor_region",
    "conic_oracle",
    "is_conic_class",
    "box_points",
]


class CapExceeded(RuntimeError):
    """An enumeration produced more results than allowed.

    ``partial`` holds what was found before stopping.
    """

    def __init__(self, cap: int, partial: list) -> None:
        super().__init__(f"enumeration stopped after {cap} results")
        self.cap = cap
        self.partial = partial


@dataclass(frozen=True)
class CircuitInequality:
    """``lower <= coefficients . z <= upper`` on class coordinates ``z``."""

    coefficients: tuple[int, ...]
    lower: int
    upper: int

    def holds(self, z: Sequence[int]) -> bool:
        v = sum(c * x for c, x in zip(self.coefficients, z))
        return self.lower <= v <= self.upper


def _cycle_inequality(cycle, tree: SpanningTree) -> CircuitInequality:
    part = cycle_partition(cycle, tree)
    pos = {k: j for j, k in enumerate(tree.cotree)}
    coeffs = [0] * len(tree.cotree)
    for k in part.z_plus:
        coeffs[pos[k]] += 1
    for k in part.z_minus:
        coeffs[pos[k]] -= 1
    return CircuitInequality(tuple(coeffs), 1 - len(part.x_minus), len(part.x_plus) - 1)


@dataclass(frozen=True)
class ConicSystem:
    """The inequality description of the conic classes for a fixed tree.

    ``inequalities`` has one entry per circuit; ``bounds`` gives for each
    class coordinate the range allowed by its fundamental cycle, which
    contains every conic class.
    """

    tree: SpanningTree
    inequalities: tuple[CircuitInequality, ...]
    bounds: tuple[tuple[int, int], ...]

    @property
    def rank(self) -> int:
        return len(self.tree.cotree)

    def contains(self, z: Sequence[int]) -> bool:
        return all(ineq.holds(z) for ineq in self.inequalities)


def conic_polytope(ap: AugmentedPoset, tree: SpanningTree) -> ConicSystem:
    """Circuit inequalities and fundamental-cycle bounds for ``tree``."""
    if tree.poset != ap:
        raise ValueError("tree belongs to a different poset")
    ineqs = tuple(_cycle_inequality(c, tree) for c in enumerate_circuits(ap))
    bounds = []
    for k in tree.cotree:
        ineq = _cycle_inequality(fundamental_cycle(tree, k), tree)
        bounds.append((ineq.lower, ineq.upper))
    return ConicSystem(tree, ineqs, tuple(bounds))


def enumerate_conic(system: ConicSystem, cap: int | None = None) -> list[tuple[int, ...]]:
    """All conic classes, in lexicographic order.

    Depth-first over the bound box, pruning with every inequality whose
    support is already assigned.

    Raises
    ------
    CapExceeded
        If more than ``cap`` classes exist.
    """
    r = system.rank
    # inequalities grouped by the last coordinate they involve
    by_last: list[list[CircuitInequality]] = [[] for _ in range(r)]
    for ineq in system.inequalities:
        nz = [j for j, c in enumerate(ineq.coefficients) if c]
        if nz:
            by_last[nz[-1]].append(ineq)
        elif not ineq.lower <= 0 <= ineq.upper:
            return []
    out: list[tuple[int, ...]] = []
    z = [0] * r

    def rec(j: int) -> None:
        if j == r:
            if cap is not None and len(out) >= cap:
                raise CapExceeded(cap, list(out))
            out.append(tuple(z))
            return
        lo, hi = system.bounds[j]
        for v in range(lo, hi + 1):
            z[j] = v
            if all(ineq.holds(z) for ineq in by_last[j]):
                rec(j + 1)
        z[j] = 0

    rec(0)
    return out


@dataclass(frozen=True)
class Cell:
    """The cell of a conic class inside ``(-1, 0]^d``.

    Coordinates are the values ``y`` of the tree forms, in the order of
    ``tree.edges``. ``constraints`` mixes strict and weak conditions.
    """

    klass: tuple[int, ...]
    dim: int
    constraints: tuple[Constraint, ...]

    def closure(self) -> list[Constraint]:
        return [c.closure() for c in self.constraints]

    def contains(self, y: Sequence) -> bool:
        return all(c.holds(y) for c in self.constraints)


def cell_of(tree: SpanningTree, klass: Sequence[int]) -> Cell:
    """H-description of the cell of class ``klass``.

    Each tree coordinate satisfies ``-1 < y_i <= 0``. For cotree edge ``j``,
    whose fundamental cycle traverses it upward, the value of its own form
    is ``sum(Y-) - sum(Y+)`` of the tree coordinates on that cycle, and it must
    lie in ``(klass_j - 1, klass_j]``.
    """
    if len(klass) != len(tree.cotree):
        raise ValueError(f"class vector needs {len(tree.cotree)} entries")
    d = tree.poset.d
    pos = {k: i for i, k in enumerate(tree.edges)}
    cons = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        cons.append(Constraint(e, ">", -1))
        cons.append(Constraint(e, "<=", 0))
    for k, m in zip(tree.cotree, klass):
        part = cycle_partition(fundamental_cycle(tree, k), tree)
        row = [0] * d
        for t in part.y_minus:
            row[pos[t]] += 1
        for t in part.y_plus:
            row[pos[t]] -= 1
        cons.append(Constraint(row, ">", m - 1))
        cons.append(Constraint(row, "<=", m))
    return Cell(tuple(klass), d, tuple(cons))


def divisor_region(ap: AugmentedPoset, a: Sequence[int]) -> list[Constraint]:
    """The conditions ``a_e - 1 < sigma_e(x) <= a_e`` on ``x`` in ``Q^d``."""
    if len(a) != ap.n:
        raise ValueError(f"divisor vector needs {ap.n} entries")
    cons = []
    for k, ak in enumerate(a):
        s = ap.sigma(k)
        cons.append(Constraint(s, ">", ak - 1))
        cons.append(Constraint(s, "<=", ak))
    return cons


def conic_oracle(ap: AugmentedPoset, a: Sequence[int]) -> bool:
    """Decide conicity of a divisor vector straight from the definition.

    Uses only the edge forms and an exact strict-feasibility LP; no tree,
    cycle or circuit is involved.
    """
    return strict_feasibility(divisor_region(ap, a), ap.d).feasible


def is_conic_class(tree: SpanningTree, klass: Sequence[int]) -> bool:
    """:func:`conic_oracle` applied to the tree-vanishing lift of ``klass``."""
    return conic_oracle(tree.poset, lift_class(tree, klass))


def box_points(bounds: Sequence[tuple[int, int]]) -> Iterator[tuple[int, ...]]:
    """Lattice points of a box given by per-coordinate ``(lo, hi)``."""
    return itertools.product(*(range(lo, hi + 1) for lo, hi in bounds))
