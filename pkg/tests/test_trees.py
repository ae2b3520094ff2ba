import random

import pytest

from interlace.expansion import q_expand
from interlace.generators import random_tree
from interlace.graph import WeightedGraph, disjoint_union
from interlace.poly import X, Y
from interlace.trees import (
    OrderedRootedTree,
    TreeError,
    cover_weight,
    es_covers,
    es_numbers,
    q_forest,
    q_forest_unweighted,
    q_tree,
    q_tree_unweighted,
    verify_tree_strategy_bijection,
)
from tests.oracles import es_covers_by_leaf_removal

BRANCH = Y - 1 + (X - 1) ** 2


def star():
    g = WeightedGraph.build(["r", "a", "b"], [("r", "a"), ("r", "b")])
    return OrderedRootedTree.from_graph(g, "r", {"r": ["a", "b"]})


def random_ordered(rng, n, weighted=True):
    g = random_tree(rng, n, weighted=weighted)
    root = rng.choice(g.vertices)
    base = OrderedRootedTree.from_graph(g, root)
    order = {p: rng.sample(list(kids), len(kids)) for p, kids in base.children.items()}
    return OrderedRootedTree.from_graph(g, root, order)


def members(tree):
    return {c.members for c in es_covers(tree)}


def test_single_vertex():
    t = OrderedRootedTree.from_graph(WeightedGraph.build(["r"]), "r")
    assert members(t) == {frozenset("r")}
    assert es_numbers(t) == {(1, 0): 1}
    assert q_tree(t) == Y == q_tree_unweighted(t)
    assert verify_tree_strategy_bijection(t)


def test_star_covers_and_numbers():
    t = star()
    assert members(t) == {frozenset("r"), frozenset("a"), frozenset("ab")}
    assert es_numbers(t) == {(1, 0): 1, (1, 1): 1, (2, 1): 1}


def test_star_cover_weights():
    t = star()
    assert cover_weight(t, ["r"]) == Y
    assert cover_weight(t, ["a"]) == BRANCH
    assert cover_weight(t, ["a", "b"]) == Y * BRANCH
    with pytest.raises(TreeError):
        cover_weight(t, ["b"])


def test_star_polynomial():
    t = star()
    expected = Y ** 2 + Y - 1 + (Y + 1) * (X - 1) ** 2
    assert q_tree(t) == expected == q_expand(t.graph)
    assert q_tree_unweighted(t) == Y + BRANCH + Y * BRANCH
    assert verify_tree_strategy_bijection(t)


def test_path_with_grandchild():
    g = WeightedGraph.build(["r", "c", "g"], [("r", "c"), ("c", "g")])
    t = OrderedRootedTree.from_graph(g, "r")
    assert members(t) == {frozenset("r"), frozenset("c"), frozenset("rg")}


def test_invalid_trees():
    cyc = WeightedGraph.build(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
    with pytest.raises(TreeError):
        OrderedRootedTree.from_graph(cyc, "a")
    looped = WeightedGraph.build(["a", "b"], [("a", "b")], ["b"])
    with pytest.raises(TreeError):
        OrderedRootedTree.from_graph(looped, "a")
    with pytest.raises(TreeError):
        OrderedRootedTree.from_graph(star().graph, "r", {"r": ["a", "r"]})


def test_sum_of_numbers_counts_covers():
    rng = random.Random(1)
    for _ in range(20):
        t = random_ordered(rng, rng.randint(1, 9))
        assert sum(es_numbers(t).values()) == len(es_covers(t))


def test_covers_match_leaf_removal_oracle():
    rng = random.Random(2)
    for _ in range(60):
        t = random_ordered(rng, rng.randint(1, 10))
        oracle = es_covers_by_leaf_removal(t.children, t.root)
        assert len(oracle) == len(set(oracle))
        assert set(oracle) == members(t)


def test_leaf_removal_set_equalities():
    rng = random.Random(3)
    checked = 0
    while checked < 40:
        t = random_ordered(rng, rng.randint(3, 10))
        for p, kids in t.children.items():
            if p == t.root or any(c in t.children for c in kids):
                continue
            last = kids[-1]
            covers = members(t)
            smaller = t.subtree(set(t.graph.vertices) - {last})
            assert {c for c in covers if last not in c} == members(smaller)
            family = set(kids) | {p}
            rest = t.subtree(set(t.graph.vertices) - family)
            assert {c for c in covers if last in c} == {frozenset(kids) | c for c in members(rest)}
            checked += 1
            break


def test_random_weighted_trees():
    rng = random.Random(4)
    for _ in range(40):
        t = random_ordered(rng, rng.randint(1, 10))
        assert q_tree(t) == q_expand(t.graph)
        assert q_tree_unweighted(t.unweighted()) == q_expand(t.graph.unweighted())
        assert verify_tree_strategy_bijection(t)


def test_forests_multiply():
    rng = random.Random(5)
    t1 = random_ordered(rng, 4)
    g2 = random_tree(rng, 3, weighted=True, prefix="u")
    t2 = OrderedRootedTree.from_graph(g2, "u0")
    union = disjoint_union(t1.graph, t2.graph)
    assert q_forest([t1, t2]) == q_expand(union)
    assert q_forest_unweighted([t1, t2]) == q_expand(union.unweighted())
