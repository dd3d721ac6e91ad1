import itertools

import pytest

from hibiconic.conic import conic_polytope, enumerate_conic
from hibiconic.segre import (
    L_tilde,
    SegreSpec,
    conic_classes,
    in_L_tilde,
    is_rank_one_mcm,
    nccr_set,
    parse_segre_nccr,
    segre_poset,
    segre_tree,
    weights,
)

SPECS = [SegreSpec(t=t, r=r) for r in range(2, 5) for t in range(2, 5)]


def test_spec_validation():
    with pytest.raises(ValueError):
        SegreSpec(t=1, r=2)
    with pytest.raises(ValueError):
        SegreSpec(t=2, r=1)
    assert parse_segre_nccr("r=2,t=3") == SegreSpec(t=3, r=2)
    assert parse_segre_nccr(" t=4 , r=3 ") == SegreSpec(t=4, r=3)
    for bad in ["r=2", "r=2,t=x", "q=1,t=2", ""]:
        with pytest.raises(ValueError):
            parse_segre_nccr(bad)


def test_posets():
    ap = segre_poset(SegreSpec(t=2, r=2))
    assert len(ap.poset.elements) == 2 and ap.poset.covers == ()
    ap = segre_poset(SegreSpec(t=3, r=3))
    assert len(ap.poset.elements) == 6 and ap.is_pure()


def test_weights():
    for spec in SPECS:
        beta = weights(spec)
        assert len(beta) == spec.t
        assert [sum(col) for col in zip(*beta)] == [0] * spec.rank
    assert weights(SegreSpec(t=3, r=2)) == [(1, 0), (0, 1), (-1, -1)]


def test_nccr_examples():
    assert sorted(nccr_set(SegreSpec(t=3, r=2))) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert len(nccr_set(SegreSpec(t=3, r=3))) == 9


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_nccr_properties(spec):
    L = nccr_set(spec)
    assert len(L) == spec.r ** (spec.t - 1)
    assert (0,) * spec.rank in L
    ap = segre_poset(spec)
    conic = set(enumerate_conic(conic_polytope(ap, segre_tree(ap))))
    assert conic == set(conic_classes(spec))
    envelope = set(L_tilde(spec))
    assert set(L) <= conic <= envelope
    assert all(in_L_tilde(spec, c) for c in envelope)
    for x, y in itertools.product(L, repeat=2):
        assert in_L_tilde(spec, tuple(a - b for a, b in zip(x, y)))
    assert all(is_rank_one_mcm(spec, c) for c in envelope)


def test_envelope_examples():
    spec = SegreSpec(t=3, r=2)
    assert not in_L_tilde(spec, (1, 2))
    assert in_L_tilde(spec, (0, 0))
    assert in_L_tilde(spec, (1, -1)) and (1, -1) not in conic_classes(spec)
    with pytest.raises(ValueError):
        in_L_tilde(spec, (0,))


def test_rank_one_examples():
    spec = SegreSpec(t=3, r=2)
    assert is_rank_one_mcm(spec, (1, 2))
    assert (1, 2) not in conic_classes(spec)
    assert not is_rank_one_mcm(spec, (2, 0))


def permutation_criterion(spec, c):
    full = list(c) + [0]
    return any(
        all(0 <= full[p[j + 1]] - full[p[j]] <= spec.r - 1 for j in range(spec.t - 1))
        for p in itertools.permutations(range(spec.t))
    )


@pytest.mark.parametrize("spec", [SegreSpec(t=3, r=2), SegreSpec(t=3, r=3), SegreSpec(t=4, r=2)], ids=str)
def test_gap_test_matches_permutations(spec):
    for c in itertools.product(range(-4, 5), repeat=spec.rank):
        assert is_rank_one_mcm(spec, c) == permutation_criterion(spec, c)
