"""Acceptance criteria 1 to 8, each checked exactly and reported as PASS/FAIL."""

import itertools
import random
import time
from fractions import Fraction
from math import comb, factorial

import pytest

from corpus import CORPUS
from hibiconic import (
    augment,
    disjoint_chains,
    enumerate_conic,
    conic_polytope,
    exchange_graph,
    nccr_set,
    signature_table,
    SegreSpec,
)
from hibiconic.checks import oracle_equivalence, transfer_class
from hibiconic.geometry import cube, eulerian, eulerian_by_descents, join_volume_check, standard_simplex
from hibiconic.hasse import choose_spanning_tree, random_spanning_tree
from hibiconic.mutation import admissible_patterns, left_mutation, right_mutation
from hibiconic.segre import L_tilde, conic_classes, in_L_tilde, is_rank_one_mcm, segre_conic_closed_form, segre_tree

EXCHANGE_EDGES_R2_T3 = 36


def s_t_expected(klass: tuple[int, ...]) -> Fraction:
    """Signature of a class of S(t) from its number of ones after normalising."""
    c = list(klass) + [0]
    t = len(c)
    low = min(c)
    q = sum(1 for v in c if v > low)
    if q == 0:
        return Fraction(2, t + 1)
    return Fraction(1, comb(t, q) * (t + 1))


def test_criterion_1_oracle_equivalence(report):
    slow, bad = [], []
    for name, P in CORPUS.items():
        start = time.perf_counter()
        rep = oracle_equivalence(augment(P))
        elapsed = time.perf_counter() - start
        if not rep.passed:
            bad.append(name)
        if elapsed >= 30:
            slow.append((name, round(elapsed, 1)))
    ok = not bad and not slow and len(CORPUS) == 20
    report(1, "oracle equivalence", ok, f"{len(CORPUS)} posets, mismatched {bad}, over 30 s {slow}")
    assert ok


def test_criterion_2_segre_conic_counts(report):
    counts = {}
    for t in range(2, 6):
        ap = augment(disjoint_chains([1] * t))
        counts[t] = len(enumerate_conic(conic_polytope(ap, segre_tree(ap))))
    ok = all(counts[t] == 2**t - 1 for t in counts)
    r3t3 = len(conic_classes(SegreSpec(t=3, r=3)))
    ok &= r3t3 == 19
    closed = True
    for lengths in [[1, 1], [1, 2], [2, 2], [1, 1, 1], [1, 2, 3], [2, 2, 2], [3, 1, 2], [1, 1, 1, 1], [2, 1, 1, 2]]:
        ap = augment(disjoint_chains(lengths))
        closed &= enumerate_conic(conic_polytope(ap, segre_tree(ap))) == sorted(segre_conic_closed_form(lengths))
    ok &= closed
    report(2, "Segre conic counts", ok, f"S(t) counts {counts}, r=3 t=3 gives {r3t3}, closed form agrees {closed}")
    assert ok


def test_criterion_3_signatures_s_t(report):
    wrong = []
    for t in range(2, 6):
        ap = augment(disjoint_chains([1] * t))
        table = signature_table(ap, segre_tree(ap))
        if sum(table.values()) != 1 or len(table) != 2**t - 1:
            wrong.append((t, "total"))
        for k, v in table.items():
            if v != s_t_expected(k):
                wrong.append((t, k))
    ok = not wrong
    report(3, "F-signatures of S(t)", ok, f"t = 2..5, mismatches {wrong}")
    assert ok


def test_criterion_4_signatures_s_r_s(report):
    wrong = []
    for r, s in itertools.product(range(1, 5), repeat=2):
        d = r + s + 1
        ap = augment(disjoint_chains([r, s]))
        table = signature_table(ap, segre_tree(ap))
        expected = {(c,): Fraction(eulerian(d, c + s + 1), factorial(d)) for c in range(-s, r + 1)}
        if table != expected:
            wrong.append((r, s))
    descents = all(eulerian_by_descents(d) == [eulerian(d, p) for p in range(1, d + 1)] for d in range(1, 7))
    ok = not wrong and descents
    report(4, "F-signatures of S(r,s)", ok, f"1 <= r,s <= 4, mismatches {wrong}, descent counts agree {descents}")
    assert ok


def test_criterion_5_nccr_set(report):
    sizes_ok = True
    differences_ok = rank_one_ok = True
    for r, t in itertools.product(range(2, 5), repeat=2):
        spec = SegreSpec(t=t, r=r)
        L = nccr_set(spec)
        sizes_ok &= len(L) == r ** (t - 1)
        differences_ok &= all(in_L_tilde(spec, tuple(a - b for a, b in zip(x, y))) for x in L for y in L)
        rank_one_ok &= all(is_rank_one_mcm(spec, c) for c in L_tilde(spec))
    ok = sizes_ok and differences_ok and rank_one_ok
    report(5, "NCCR set", ok, f"sizes {sizes_ok}, differences in envelope {differences_ok}, envelope rank one MCM {rank_one_ok}")
    assert ok


def test_criterion_6_mutation(report):
    spec = SegreSpec(t=3, r=2)
    L = frozenset(nccr_set(spec))
    found = admissible_patterns(spec, L, (1, 0))
    example = (
        L == {(0, 0), (1, 0), (0, 1), (1, 1)}
        and {a.pattern for a in found} == {(2,)}
        and {a.nu for a in found} == {(1, 2)}
        and right_mutation(spec, L, (1, 0), lam=(-1, 1)) == (L - {(1, 0)}) | {(1, 2)}
    )

    g = exchange_graph(spec)
    unique = True
    performed = round_trips = 0
    for M in g.vertices:
        for chi in sorted(M):
            for mirror in (False, True):
                base = [tuple(-v for v in p) for p in M] if mirror else M
                nus = {a.nu for a in admissible_patterns(spec, base, tuple(-v for v in chi) if mirror else chi)}
                unique &= len(nus) <= 1
            for forward, backward in ((right_mutation, left_mutation), (left_mutation, right_mutation)):
                try:
                    N = forward(spec, M, chi)
                except ValueError:
                    continue
                performed += 1
                (nu,) = N - M
                try:
                    back = backward(spec, N, nu)
                except ValueError:
                    continue
                round_trips += back == M
                if back != M:
                    unique = False
    ok = example and unique and performed > 0 and round_trips > 0
    report(
        6,
        "mutation",
        ok,
        f"example reproduced {example}, single result per point {unique}, "
        f"{performed} mutations, {round_trips} inverses all return",
    )
    assert ok


def test_criterion_7_exchange_graph(report):
    spec = SegreSpec(t=3, r=2)
    g1 = exchange_graph(spec, jobs=1)
    g2 = exchange_graph(spec, jobs=2)
    origin = (0, 0)
    ok = (
        not g1.truncated
        and len(g1.vertices) == 20
        and all(origin in V for V in g1.vertices)
        and g1.is_connected()
        and g1.edge_set() == g2.edge_set()
        and g1.to_json() == g2.to_json()
        and len(g1.edges) == EXCHANGE_EDGES_R2_T3
    )
    report(
        7,
        "exchange graph",
        ok,
        f"{len(g1.vertices)} vertices, {len(g1.edges)} edges, connected {g1.is_connected()}, "
        f"truncated {g1.truncated}, same with 2 jobs {g1.edge_set() == g2.edge_set()}",
    )
    assert ok


def test_criterion_8_geometry(report):
    rng = random.Random(2024)
    totals, trees = [], []
    for name, P in CORPUS.items():
        ap = augment(P)
        base_tree = choose_spanning_tree(ap)
        base = signature_table(ap, base_tree)
        if sum(base.values()) != 1:
            totals.append(name)
        for _ in range(3):
            T = random_spanning_tree(ap, rng)
            other = signature_table(ap, T)
            if sum(other.values()) != 1:
                totals.append(name)
            if {transfer_class(T, base_tree, k): v for k, v in other.items()} != base:
                trees.append(name)
    joins = []
    for e in range(0, 9):
        for f in range(0, 9 - e):
            pairs = [(cube(e), cube(f)), (standard_simplex(e), cube(f))]
            if e <= f:
                pairs.append((standard_simplex(e), standard_simplex(f)))
            for P, Q in pairs:
                lhs, rhs = join_volume_check(P, Q)
                if lhs != rhs:
                    joins.append((e, f))
    ok = not totals and not trees and not joins
    report(
        8,
        "geometry self-consistency",
        ok,
        f"volume totals off {totals}, tree dependent {trees}, join failures {joins}",
    )
    assert ok
