import random

import networkx as nx
import pytest

from corpus import CORPUS, BRIDGED
from hibiconic.hasse import (
    Cycle,
    TreeError,
    choose_spanning_tree,
    cycle_partition,
    enumerate_circuits,
    fundamental_cycle,
    random_spanning_tree,
)
from hibiconic.poset import BOTTOM, TOP, augment, chain, disjoint_chains
from hibiconic.segre import chain_edges, segre_tree

# conventional e1..e9 numbering of the bridged poset, by endpoints
DRAWN = {
    1: (BOTTOM, "p1"),
    2: ("p1", "p2"),
    3: ("p2", "p3"),
    4: ("p3", TOP),
    5: (BOTTOM, "p4"),
    6: ("p4", "p5"),
    7: ("p5", "p6"),
    8: ("p6", TOP),
    9: ("p5", "p3"),
}


@pytest.fixture
def bridged():
    ap = augment(BRIDGED)
    e = {k: ap.edge_between(*ends) for k, ends in DRAWN.items()}
    tree = choose_spanning_tree(ap, [e[k] for k in range(2, 9)])
    return ap, e, tree


def test_bridged_tree_accepted(bridged):
    ap, e, tree = bridged
    assert set(tree.cotree) == {e[1], e[9]}


def test_tree_poset_has_empty_cotree():
    ap = augment(chain(3))
    tree = choose_spanning_tree(ap)
    assert tree.edges == tuple(range(ap.n)) and tree.cotree == ()


def test_bad_seeds(bridged):
    ap, e, _ = bridged
    with pytest.raises(TreeError):
        choose_spanning_tree(ap, [e[k] for k in (1, 2, 3, 4, 5, 6, 9)])
    with pytest.raises(TreeError):
        choose_spanning_tree(ap, [e[2], e[3]])


def test_fundamental_cycle_e9(bridged):
    ap, e, tree = bridged
    cyc = fundamental_cycle(tree, e[9])
    assert set(cyc.labels()) == {"p3", TOP, "p6", "p5"}
    assert cyc.edges == {e[9], e[4], e[8], e[7]}
    assert cycle_partition(cyc, tree).z_plus == {e[9]}


def test_fundamental_cycle_e1(bridged):
    ap, e, tree = bridged
    cyc = fundamental_cycle(tree, e[1])
    assert cyc.edges == frozenset(e[k] for k in range(1, 9))
    assert not cyc.is_circuit()


def test_fundamental_cycle_needs_cotree_edge(bridged):
    _, e, tree = bridged
    with pytest.raises(TreeError):
        fundamental_cycle(tree, e[2])


def test_partition_of_example_cycle(bridged):
    ap, e, tree = bridged
    C = Cycle(ap, tuple(ap.vertex_index[v] for v in ["p1", "p2", "p3", "p5", "p4", BOTTOM]))
    part = cycle_partition(C, tree)
    E = lambda *ks: frozenset(e[k] for k in ks)
    assert part.x_plus == E(1, 2, 3) and part.x_minus == E(5, 6, 9)
    assert part.y_plus == E(2, 3) and part.y_minus == E(5, 6)
    assert part.z_plus == E(1) and part.z_minus == E(9)
    rev = cycle_partition(Cycle(ap, C.vertices[::-1]), tree)
    assert (rev.x_plus, rev.y_plus, rev.z_plus) == (part.x_minus, part.y_minus, part.z_minus)


def test_bridged_circuits():
    ap = augment(BRIDGED)
    got = {frozenset(c.labels()) for c in enumerate_circuits(ap)}
    assert got == {
        frozenset([BOTTOM, "p1", "p2", "p3", "p5", "p4"]),
        frozenset(["p3", TOP, "p6", "p5"]),
    }


@pytest.mark.parametrize("lengths", [[1, 1], [2, 1], [1, 1, 1], [3, 1, 2], [1, 1, 1, 1], [2, 2, 2, 2, 2]])
def test_segre_circuits(lengths):
    ap = augment(disjoint_chains(lengths))
    t = len(lengths)
    circuits = enumerate_circuits(ap)
    assert len(circuits) == t * (t - 1) // 2
    tree = segre_tree(ap)
    bottoms = [chain_edges(ap, i + 1)[0] for i in range(t)]
    for c in circuits:
        part = cycle_partition(c, tree)
        ks = [i for i in range(t) if bottoms[i] in c.edges]
        assert len(ks) == 2
        # orient so that the lower-numbered chain is climbed
        if bottoms[ks[0]] not in part.x_plus:
            part = cycle_partition(Cycle(ap, c.vertices[::-1]), tree)
        k, l = ks
        assert len(part.x_plus) == lengths[k] + 1 and len(part.x_minus) == lengths[l] + 1
        expected_z = {bottoms[i] for i in ks if i < t - 1}
        assert part.z_plus | part.z_minus == expected_z


def test_single_segre_cycle():
    ap = augment(disjoint_chains([1, 1]))
    tree = segre_tree(ap)
    (k,) = tree.cotree
    assert ap.edges[k] == (0, 1)
    assert len(fundamental_cycle(tree, k).vertices) == 4


def test_tree_has_no_circuits():
    assert enumerate_circuits(augment(chain(4))) == []


def to_networkx(ap):
    G = nx.Graph()
    G.add_nodes_from(range(ap.d + 1))
    G.add_edges_from(ap.edges)
    return G


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_circuits_match_networkx(name):
    ap = augment(CORPUS[name])
    ours = {frozenset(c.vertices) for c in enumerate_circuits(ap)}
    theirs = {frozenset(c) for c in nx.chordless_cycles(to_networkx(ap)) if len(c) > 2}
    assert ours == theirs


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_cycle_forms_balance(name):
    """Along any cycle the forms climbed and the forms descended add up to the same thing."""
    ap = augment(CORPUS[name])
    rng = random.Random(name)
    for _ in range(3):
        tree = random_spanning_tree(ap, rng)
        assert nx.is_tree(nx.Graph([ap.edges[k] for k in tree.edges]))
        assert len(tree.edges) == ap.d
        for k in tree.cotree:
            part = cycle_partition(fundamental_cycle(tree, k), tree)
            assert k in part.z_plus
            up = [sum(ap.sigma(j)[i] for j in part.x_plus) for i in range(ap.d)]
            down = [sum(ap.sigma(j)[i] for j in part.x_minus) for i in range(ap.d)]
            assert up == down
