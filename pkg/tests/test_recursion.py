import random

import pytest

from interlace.expansion import epsilon, gamma, q_expand
from interlace.generators import all_graphs, random_connected_graph, random_graph
from interlace.graph import WeightedGraph, edgeless, path
from interlace.poly import ONE, X, Y, Poly
from interlace.recursion import (
    FIRST,
    REDUCE,
    NodeKind,
    StrategyError,
    check_arity,
    check_leaf_bound,
    pivot_reweight_identity_check,
    q_recursive,
    tree_stats,
    tree_to_text,
)

K2 = WeightedGraph.build(["a", "b"], [("a", "b")])
MODES = [(s, t, m) for s in (FIRST, REDUCE) for t in (False, True) for m in (False, True)]


def test_empty_graph():
    q, tree = q_recursive(WeightedGraph.build([]))
    assert q == ONE
    assert tree.kind == NodeKind.EMPTY_LEAF
    assert tree_stats(tree)["leaves"] == 1 and tree_stats(tree)["active_nodes"] == 0


def test_single_looped_vertex():
    q, tree = q_recursive(WeightedGraph.build(["a"], loops=["a"]))
    assert q == X
    assert tree.kind == NodeKind.ISOLATED_LOOPED
    assert [c.kind for c in tree.children] == [NodeKind.EMPTY_LEAF]


def test_k2_binary_pivot():
    q, tree = q_recursive(K2)
    assert q == (X - 1) ** 2 + 2 * Y - 1
    assert tree.kind == NodeKind.BINARY_PIVOT
    assert tree_stats(tree)["leaves"] == 2


def test_edgeless_under_leaf_bound_mode():
    _, tree = q_recursive(edgeless(4), leaf_bound_mode=True)
    stats = tree_stats(tree)
    assert stats["by_kind"][NodeKind.ISOLATED_UNLOOPED.value] == 4
    assert stats["active_nodes"] == 4


@pytest.mark.parametrize("strategy,ternary,counting", MODES)
def test_all_small_graphs(strategy, ternary, counting):
    for n in range(4):
        for g in all_graphs(n):
            q, tree = q_recursive(g, strategy, ternary=ternary, leaf_bound_mode=counting)
            assert q == q_expand(g)
            assert tree.evaluate() == q
            assert check_arity(tree)


@pytest.mark.parametrize("seed", range(10))
def test_random_weighted_graphs_all_modes(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(5, 7))
    expected = q_expand(g)
    for strategy, ternary, counting in MODES:
        q, tree = q_recursive(g, strategy, ternary=ternary, leaf_bound_mode=counting)
        assert q == expected
        assert tree.evaluate() == expected


def test_pruned_children_are_marked():
    g = K2.with_weights("a", 0, 1)
    q, tree = q_recursive(g)
    assert q == q_expand(g)
    assert None in tree.children
    assert "(pruned)" in tree_to_text(tree)
    _, full = q_recursive(g, leaf_bound_mode=True)
    assert None not in full.children


def test_unknown_strategy():
    with pytest.raises(StrategyError):
        q_recursive(K2, "sideways")


def test_record_off():
    q, tree = q_recursive(path(4), record=False)
    assert tree is None and q == q_expand(path(4))


def test_pivot_reweighting_identity():
    s = [Poly.var(n) for n in ("s1", "t1", "s2", "t2")]
    assert pivot_reweight_identity_check(K2, "a", "b")
    assert pivot_reweight_identity_check(path(4), "v1", "v2")
    weighted = K2.with_weights("a", s[0], s[1]).with_weights("b", s[2], s[3])
    assert pivot_reweight_identity_check(weighted, "a", "b")


def test_local_complement_identity():
    rng = random.Random(8)
    for _ in range(40):
        g = random_graph(rng, rng.randint(1, 6))
        for a in g.vertices:
            if g.has_loop(a):
                continue
            ga = g.local_complement(a)
            b = g.beta[a]
            assert q_expand(g) - b * q_expand(g.delete_vertex(a)) == q_expand(ga) - b * q_expand(ga.delete_vertex(a))


def test_pivot_identity_uses_weight_of_second_vertex():
    rng = random.Random(9)
    checked = 0
    for _ in range(60):
        g = random_graph(rng, rng.randint(2, 6))
        for a, b in g.edges():
            if g.has_loop(a) or g.has_loop(b):
                continue
            p = g.pivot(a, b)
            w = g.beta[b]
            lhs = q_expand(g.delete_vertex(a)) - w * q_expand(g.delete_vertex(a, b))
            rhs = q_expand(p.delete_vertex(a)) - w * q_expand(p.delete_vertex(a, b))
            assert lhs == rhs
            checked += 1
    assert checked > 50


def test_pivot_identity_with_first_weight_fails_when_weights_differ():
    g = WeightedGraph.build(["a", "b", "c", "d"], [("a", "b"), ("a", "c"), ("b", "d")]).with_weights("a", 1, 0)
    p = g.pivot("a", "b")
    w = g.beta["a"]
    lhs = q_expand(g.delete_vertex("a")) - w * q_expand(g.delete_vertex("a", "b"))
    rhs = q_expand(p.delete_vertex("a")) - w * q_expand(p.delete_vertex("a", "b"))
    assert lhs != rhs


def test_leaf_bound_examples():
    for g in (K2, path(4), edgeless(3)):
        report = check_leaf_bound(g)
        assert report["epsilon"] == 0 and report["satisfied"]
    looped = WeightedGraph.build(["a", "b"], [("a", "b")], ["a", "b"])
    report = check_leaf_bound(looped)
    assert report["epsilon"] == 2 and report["leaves"] >= 1 and report["satisfied"]


def test_leaf_bound_random_connected():
    rng = random.Random(10)
    for _ in range(40):
        g = random_connected_graph(rng, rng.randint(2, 7), weighted=False)
        report = check_leaf_bound(g)
        assert report["satisfied"]
        assert 2 * report["leaves"] >= epsilon(g)
        if g.is_simple():
            assert 2 * report["leaves"] >= gamma(g)


def test_trace_text_is_deterministic():
    g = random_graph(random.Random(12), 5)
    _, t1 = q_recursive(g)
    _, t2 = q_recursive(g)
    assert tree_to_text(t1) == tree_to_text(t2)
