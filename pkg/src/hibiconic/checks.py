"""Consistency checks tying the independent computations together.

Each check recomputes one quantity along two routes that share no code
beyond the edge forms, and reports whether they agree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .classgroup import lift_class, project_divisor
from .conic import box_points, conic_polytope, enumerate_conic, is_conic_class
from .geometry import signature_table
from .hasse import SpanningTree, choose_spanning_tree, random_spanning_tree
from .poset import AugmentedPoset

__all__ = [
    "CheckReport",
    "transfer_class",
    "oracle_equivalence",
    "partition_of_unity",
    "tree_independence",
    "run_checks",
]


@dataclass
class CheckReport:
    name: str
    passed: bool
    detail: str = ""
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def transfer_class(source: SpanningTree, target: SpanningTree, klass) -> tuple[int, ...]:
    """Coordinates, with respect to ``target``, of a class given in ``source``."""
    return project_divisor(target, lift_class(source, klass))


def oracle_equivalence(ap: AugmentedPoset, tree: SpanningTree | None = None, margin: int = 1) -> CheckReport:
    """Compare circuit enumeration with the LP oracle on a box of classes.

    The box is the fundamental-cycle bound box widened by ``margin`` on each
    side, so points just outside the bounds are tested as well.
    """
    tree = tree or choose_spanning_tree(ap)
    system = conic_polytope(ap, tree)
    enumerated = set(enumerate_conic(system))
    box = [(lo - margin, hi + margin) for lo, hi in system.bounds]
    mismatches = []
    checked = 0
    for z in box_points(box):
        checked += 1
        if is_conic_class(tree, z) != (z in enumerated):
            mismatches.append(z)
    ok = not mismatches
    return CheckReport(
        "oracle equivalence",
        ok,
        f"{checked} box points, {len(enumerated)} conic, {len(mismatches)} mismatches",
        {"checked": checked, "conic": len(enumerated), "mismatches": mismatches},
    )


def partition_of_unity(ap: AugmentedPoset, tree: SpanningTree | None = None) -> CheckReport:
    """Cell volumes of all conic classes must add up to exactly 1."""
    table = signature_table(ap, tree)
    total = sum(table.values(), Fraction(0))
    return CheckReport("partition of unity", total == 1, f"sum of {len(table)} volumes = {total}", {"table": table})


def tree_independence(ap: AugmentedPoset, trials: int = 3, seed: int = 0) -> CheckReport:
    """Signature tables for random trees agree after changing coordinates."""
    rng = random.Random(seed)
    base_tree = choose_spanning_tree(ap)
    base = signature_table(ap, base_tree)
    bad = []
    for _ in range(trials):
        T = random_spanning_tree(ap, rng)
        other = signature_table(ap, T)
        moved = {transfer_class(T, base_tree, k): v for k, v in other.items()}
        if moved != base:
            bad.append(T.edges)
    return CheckReport("tree independence", not bad, f"{trials} random trees, {len(bad)} disagree", {"bad": bad})


def run_checks(ap: AugmentedPoset, tree: SpanningTree | None = None, trials: int = 3, seed: int = 0) -> list[CheckReport]:
    return [oracle_equivalence(ap, tree), partition_of_unity(ap, tree), tree_independence(ap, trials, seed)]
