import random

import pytest

from interlace.composition import (
    CompositionError,
    compose,
    composition_weights,
    copy_label,
    type_sum_identities,
    q_composed,
    subset_type,
    two_weight_formulas,
    three_weight_cleared,
    type_sums,
)
from interlace.expansion import q_expand
from interlace.generators import random_graph
from interlace.graph import WeightedGraph, disjoint_union, join
from interlace.poly import ONE, X, Y, ZERO
from interlace.reduction import fraternal_twin_weights, identical_twin_weights


def edge_h(looped=False):
    return WeightedGraph.build(["v", "a"], [("v", "a")], ["v"] if looped else [])


def random_pair(rng, nh=None, nk=None):
    nh = nh or rng.randint(2, 6)
    nk = nk or rng.randint(1, 5)
    h = random_graph(rng, nh, prefix="h").rename("h0", "a").with_loop("a", False).with_weights("a", 1, 1)
    k = random_graph(rng, nk, prefix="k").rename("k0", "a").with_loop("a", False).with_weights("a", 1, 1)
    return h, k


def test_compose_isolated_marker_is_disjoint_union():
    h = WeightedGraph.build(["a", "p", "q"], [("p", "q")])
    k = WeightedGraph.build(["a", "r"], [("a", "r")])
    assert compose(h, k, "a") == disjoint_union(h.delete_vertex("a"), k.delete_vertex("a"))


def test_compose_universal_marker_is_join():
    h = WeightedGraph.build(["a", "p", "q"], [("a", "p"), ("a", "q")], ["q"])
    k = WeightedGraph.build(["a", "r", "s"], [("a", "r"), ("a", "s"), ("r", "s")])
    assert compose(h, k, "a") == join(h.delete_vertex("a"), k.delete_vertex("a"))


def test_edge_h_substitutes_v_for_a():
    rng = random.Random(1)
    for _ in range(10):
        _, k = random_pair(rng)
        got = compose(edge_h(), k, "a")
        assert got == k.rename("a", "v")
        assert q_composed(edge_h(), "a", k) == q_expand(got)


def test_subset_types_by_hand():
    h = edge_h()
    assert subset_type(h, "a", []) == 1
    assert subset_type(h, "a", ["v"]) == 2
    assert subset_type(edge_h(looped=True), "a", ["v"]) == 3


def test_type_sums_by_hand():
    assert type_sums(edge_h(), "a") == (ONE, Y - 1, ZERO)
    assert type_sums(edge_h(looped=True), "a") == (ONE, ZERO, X - 1)


def test_weights_by_hand():
    w = composition_weights(edge_h(), "a")
    assert (w.alpha_a, w.beta_a, w.beta_ac) == (ONE, ONE, ZERO)
    w = composition_weights(edge_h(looped=True), "a")
    assert (w.alpha_a, w.beta_a, w.beta_ac) == (ZERO, ONE, X - 1)


def test_no_type_three_when_h_minus_a_is_loopless():
    rng = random.Random(2)
    seen = 0
    for _ in range(60):
        h, _ = random_pair(rng)
        if h.loop_mask:
            continue
        seen += 1
        assert type_sums(h, "a")[2] == ZERO
    assert seen > 5


def test_type_three_without_looped_neighbour():
    # a's neighbours are unlooped, yet {h2, h3} reaches type 3 through the loop on h3
    h = WeightedGraph.build(["a", "h1", "h2", "h3"], [("a", "h1"), ("a", "h2"), ("h2", "h3")], ["h3"])
    assert subset_type(h, "a", ["h2", "h3"]) == 3
    w = composition_weights(h, "a")
    assert w.beta_ac == (X - 1) ** 2
    k = WeightedGraph.build(["a", "w"], [("a", "w")])
    full = q_expand(compose(h, k, "a"))
    assert q_composed(h, "a", k) == full
    assert q_expand(k.with_weights("a", w.alpha_a, w.beta_a)) != full


def test_marker_guards():
    h = edge_h()
    with pytest.raises(CompositionError):
        compose(h.with_loop("a"), WeightedGraph.build(["a"]), "a")
    with pytest.raises(CompositionError):
        composition_weights(h.with_weights("a", 2), "a")
    with pytest.raises(CompositionError):
        compose(h, WeightedGraph.build(["a", "v"]), "a")


def test_copy_label_avoids_collisions():
    k = WeightedGraph.build(["a", "a~c"])
    assert copy_label(k, "a") not in k


def test_single_vertex_k_gives_q_of_h_minus_a():
    rng = random.Random(3)
    k1 = WeightedGraph.build(["a"])
    for _ in range(20):
        h, _ = random_pair(rng)
        w = composition_weights(h, "a")
        q = q_expand(h.delete_vertex("a"))
        assert q_composed(h, "a", k1) == q == (Y - 1) * w.alpha_a + w.beta_a + w.beta_ac


def test_looped_leaf_k_identity():
    rng = random.Random(4)
    k = WeightedGraph.build(["a", "l"], [("a", "l")], ["l"])
    for _ in range(20):
        h, _ = random_pair(rng)
        w = composition_weights(h, "a")
        expected = ((X - 1) ** 2 + Y - 1) * w.alpha_a + X * w.beta_a + Y * w.beta_ac
        assert q_expand(h.with_loop("a")) == expected == q_composed(h, "a", k)


def test_random_pairs_against_expansion():
    rng = random.Random(5)
    for _ in range(40):
        h, k = random_pair(rng)
        assert q_composed(h, "a", k) == q_expand(compose(h, k, "a"))


def test_type_equations_and_weight_formulas():
    rng = random.Random(6)
    simple_seen = looped_seen = 0
    for _ in range(40):
        h, _ = random_pair(rng)
        assert all(type_sum_identities(h, "a").values())
        w = composition_weights(h, "a")
        if h.delete_vertex("a").is_simple():
            simple_seen += 1
            assert w.beta_ac == ZERO
            assert two_weight_formulas(h, "a") == (w.alpha_a, w.beta_a)
        else:
            looped_seen += 1
        assert all(three_weight_cleared(h, "a", w).values())
    assert simple_seen and looped_seen


def test_twins_as_compositions():
    rng = random.Random(7)
    for looped in (False, True):
        for complete in (False, True):
            for m in (1, 2, 3):
                vs = [f"u{i}" for i in range(m)]
                edges = [("a", v) for v in vs]
                if complete:
                    edges += [(vs[i], vs[j]) for i in range(m) for j in range(i + 1, m)]
                h = WeightedGraph.build(["a"] + vs, edges, vs if looped else [])
                _, k = random_pair(rng)
                identical = looped == complete
                weights = identical_twin_weights if identical else fraternal_twin_weights
                alpha, beta = weights([ONE] * m, [ONE] * m)
                # twins reduced into one vertex that keeps a's neighbourhood in K
                reduced = k.with_weights("a", alpha, beta)
                if looped:
                    reduced = reduced.with_loop("a")
                assert q_composed(h, "a", k) == q_expand(reduced)
