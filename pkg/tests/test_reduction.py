import random
import time

import pytest

from interlace.expansion import q_expand
from interlace.generators import plant_pendant, plant_twins, random_dh_graph, random_graph, random_tree
from interlace.graph import WeightedGraph, cycle, edgeless, path
from interlace.poly import X, Y, Poly, substitute
from interlace.reduction import (
    FRATERNAL,
    IDENTICAL,
    PENDANT,
    ReductionError,
    edgeless_q,
    find_reduction,
    fraternal_pair_weights,
    fraternal_twin_reduce,
    fraternal_twin_weights,
    identical_pair_weights,
    identical_twin_reduce,
    identical_twin_weights,
    pendant_reduce,
    q_reduced,
    reduce_fully,
)

K2 = WeightedGraph.build(["a", "b"], [("a", "b")])


def test_identical_examples():
    e2 = edgeless(2)
    g = identical_twin_reduce(e2, ["v0", "v1"])
    assert g.alpha["v0"] == Y + 1 and g.beta["v0"] == 1
    assert q_expand(g) == Y ** 2 == q_expand(e2)
    looped = WeightedGraph.build(["a", "b"], [("a", "b")], ["a", "b"])
    g = identical_twin_reduce(looped, ["a", "b"])
    assert g.alpha["a"] == Y + 1 and g.beta["a"] == 1
    assert q_expand(g) == (Y + 1) * (X - 1) + 1 == q_expand(looped)


def test_excluded_only_weight_changes_nothing():
    rng = random.Random(1)
    for kind, fn in ((IDENTICAL, identical_twin_reduce), (FRATERNAL, fraternal_twin_reduce)):
        g, twins = plant_twins(rng, kind, 2, 3)
        g = g.with_weights(twins[1], 0, 1)
        out = fn(g, twins)
        assert out.alpha[twins[0]] == g.alpha[twins[0]] and out.beta[twins[0]] == g.beta[twins[0]]
        assert q_expand(out) == q_expand(g.delete_vertex(twins[1]))
    g, a, b = plant_pendant(rng, 3)
    g = g.with_weights(b, 0, 1)
    out = pendant_reduce(g, a, b)
    assert out.alpha[a] == g.alpha[a] and out.beta[a] == g.beta[a]


def test_pendant_examples():
    g = pendant_reduce(K2, "a", "b")
    assert g.alpha["a"] == 1 and g.beta["a"] == (X - 1) ** 2 + Y
    assert q_expand(g) == (X - 1) ** 2 + 2 * Y - 1
    p3 = path(3)
    step = find_reduction(p3)
    assert step.kind == PENDANT
    _, terminal = reduce_fully(p3)
    assert edgeless_q(terminal) == q_expand(p3)


def test_fraternal_examples():
    g = fraternal_twin_reduce(K2, ["a", "b"])
    assert g.alpha["a"] == 2 and g.beta["a"] == 1 + (X - 1) ** 2
    assert q_expand(g) == q_expand(K2)
    at2 = {"x": 2}
    assert substitute(g.alpha["a"], at2) == 2 and substitute(g.beta["a"], at2) == 2


def test_find_reduction_examples():
    step = find_reduction(edgeless(3))
    assert step.kind == IDENTICAL and step.survivor == "v0" and step.removed == ("v1",)
    assert find_reduction(cycle(5)) is None
    trace, terminal = reduce_fully(cycle(5))
    assert trace.steps == [] and terminal == cycle(5)
    trace, terminal = reduce_fully(path(4))
    assert trace.edgeless and edgeless_q(terminal) == q_expand(path(4))


def test_rejects_mixed_groups():
    g = WeightedGraph.build(["a", "b", "c"], [("a", "b")])
    with pytest.raises(ReductionError):
        identical_twin_reduce(g, ["a", "b", "c"])
    with pytest.raises(ReductionError):
        fraternal_twin_reduce(g, ["a", "c"])
    with pytest.raises(ReductionError):
        pendant_reduce(g, "a", "c")
    with pytest.raises(ReductionError):
        identical_twin_reduce(g.with_loop("c"), ["c"])


@pytest.mark.parametrize("kind", [IDENTICAL, FRATERNAL])
def test_k_fold_matches_iterated_pairs(kind):
    pair = identical_pair_weights if kind == IDENTICAL else fraternal_pair_weights
    many = identical_twin_weights if kind == IDENTICAL else fraternal_twin_weights
    for k in range(2, 6):
        alphas = [Poly.var(f"s{i}") for i in range(k)]
        betas = [Poly.var(f"t{i}") for i in range(k)]
        a, b = alphas[0], betas[0]
        for i in range(1, k):
            a, b = pair(a, b, alphas[i], betas[i])
        assert (a, b) == many(alphas, betas)


@pytest.mark.parametrize("kind", [IDENTICAL, FRATERNAL])
def test_twin_reduction_preserves_q(kind):
    rng = random.Random(3)
    fn = identical_twin_reduce if kind == IDENTICAL else fraternal_twin_reduce
    for _ in range(40):
        g, twins = plant_twins(rng, kind, rng.randint(2, 4), rng.randint(0, 3))
        assert q_expand(fn(g, twins)) == q_expand(g)


def test_pendant_reduction_preserves_q():
    rng = random.Random(4)
    for _ in range(40):
        g, a, b = plant_pendant(rng, rng.randint(1, 5))
        assert q_expand(pendant_reduce(g, a, b)) == q_expand(g)


def test_value_confluence():
    rng = random.Random(5)
    for _ in range(30):
        g = random_dh_graph(rng, rng.randint(2, 9))
        expected = q_expand(g)
        for _ in range(3):
            assert q_reduced(g, random.Random(rng.random())) == expected


def test_trees_reduce_to_edgeless():
    rng = random.Random(6)
    for _ in range(30):
        t = random_tree(rng, rng.randint(1, 12), weighted=True)
        trace, terminal = reduce_fully(t)
        assert not terminal.has_edges()
        assert edgeless_q(terminal) == q_expand(t)


def test_irreducible_core_mixed_with_recursion():
    rng = random.Random(7)
    for _ in range(20):
        g = random_graph(rng, rng.randint(5, 8))
        assert q_reduced(g) in (None, q_expand(g))


def test_edgeless_closed_form():
    g = WeightedGraph.build(["a", "b"], loops=["a"]).with_weights("a", Poly.var("s"), Poly.var("t"))
    assert edgeless_q(g) == (Poly.var("s") * (X - 1) + Poly.var("t")) * Y


def test_reduction_of_25_vertices_is_fast():
    rng = random.Random(8)
    g = random_dh_graph(rng, 25)
    start = time.perf_counter()
    trace, terminal = reduce_fully(g)
    assert time.perf_counter() - start < 1.0
    assert not terminal.has_edges()
    assert "terminal edgeless" in trace.to_text()
