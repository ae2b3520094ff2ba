"""Seeded random and exhaustive graph families used by tests and the self-test."""

from __future__ import annotations

import random
from itertools import combinations
from typing import Iterator, List, Optional, Tuple

from .graph import WeightedGraph
from .poly import ONE, Poly, X, Y, ZERO

WEIGHT_CHOICES = ("0", "1", "2", "x", "y", "x-1", "y-1", "sym")


def random_weight(rng: random.Random, name: str) -> Poly:
    choice = rng.choice(WEIGHT_CHOICES)
    if choice == "0":
        return ZERO
    if choice == "1":
        return ONE
    if choice == "2":
        return Poly.const(2)
    if choice == "x":
        return X
    if choice == "y":
        return Y
    if choice == "x-1":
        return X - 1
    if choice == "y-1":
        return Y - 1
    return Poly.var(name)


def random_small_poly(rng: random.Random, names=("x", "y", "s", "t"), terms: int = 3) -> Poly:
    out = Poly()
    for _ in range(rng.randint(0, terms)):
        m = Poly.const(rng.randint(-3, 3))
        for n in names:
            e = rng.randint(0, 2)
            if e:
                m = m * Poly.var(n) ** e
        out = out + m
    return out


def random_graph(
    rng: random.Random,
    n: int,
    p_edge: float = 0.5,
    p_loop: float = 0.3,
    weighted: bool = True,
    prefix: str = "v",
) -> WeightedGraph:
    vs = [f"{prefix}{i}" for i in range(n)]
    edges = [(u, v) for u, v in combinations(vs, 2) if rng.random() < p_edge]
    loops = [v for v in vs if rng.random() < p_loop]
    alpha = beta = None
    if weighted:
        alpha = {v: random_weight(rng, f"a_{v}") for v in vs}
        beta = {v: random_weight(rng, f"b_{v}") for v in vs}
    return WeightedGraph.build(vs, edges, loops, alpha, beta)


def random_connected_graph(rng: random.Random, n: int, **kw) -> WeightedGraph:
    while True:
        g = random_graph(rng, n, **kw)
        if g.is_connected():
            return g


def all_graphs(n: int, labels: Optional[List[str]] = None) -> Iterator[WeightedGraph]:
    """Every looped graph on ``n`` fixed labels: 2^(n(n-1)/2) edge sets times 2^n loop sets."""
    vs = labels or ["a", "b", "c", "d", "e", "f"][:n]
    if len(vs) < n:
        vs = [f"v{i}" for i in range(n)]
    pairs = list(combinations(vs[:n], 2))
    for em in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if em >> i & 1]
        for lm in range(1 << n):
            yield WeightedGraph.build(vs[:n], edges, [vs[i] for i in range(n) if lm >> i & 1])


def random_tree(rng: random.Random, n: int, weighted: bool = False, prefix: str = "t") -> WeightedGraph:
    vs = [f"{prefix}{i}" for i in range(n)]
    edges = [(vs[i], vs[rng.randrange(i)]) for i in range(1, n)]
    alpha = beta = None
    if weighted:
        alpha = {v: random_weight(rng, f"a_{v}") for v in vs}
        beta = {v: random_weight(rng, f"b_{v}") for v in vs}
    return WeightedGraph.build(vs, edges, alpha=alpha, beta=beta)


def random_dh_graph(rng: random.Random, n: int, p_loop: float = 0.3, prefix: str = "d") -> WeightedGraph:
    """Grow a graph from one vertex by adding pendants, identical twins and fraternal twins.

    Undoing the additions in reverse is a full reduction to an edgeless graph.
    """
    first = f"{prefix}0"
    g = WeightedGraph.build([first], loops=[first] if rng.random() < p_loop else [])
    for i in range(1, n):
        new = f"{prefix}{i}"
        v = rng.choice(g.vertices)
        move = rng.choice(("pendant", "identical", "fraternal"))
        nbrs = g.neighbors(v)
        if move == "pendant":
            g = g.add_vertex(new, looped=False, neighbors=[v])
        elif move == "identical":
            looped = g.has_loop(v)
            g = g.add_vertex(new, looped=looped, neighbors=nbrs + ([v] if looped else []))
        else:
            looped = g.has_loop(v)
            g = g.add_vertex(new, looped=looped, neighbors=nbrs + ([] if looped else [v]))
    return g


def plant_twins(
    rng: random.Random, kind: str, k: int, n_rest: int, looped: Optional[bool] = None
) -> Tuple[WeightedGraph, List[str]]:
    """A random weighted graph plus ``k`` twins of the given kind sharing one outside neighbourhood.

    ``kind`` is ``"identical-twin"`` or ``"fraternal-twin"``.
    """
    g = random_graph(rng, n_rest, prefix="r")
    if looped is None:
        looped = rng.random() < 0.5
    outside = [v for v in g.vertices if rng.random() < 0.5]
    # identical twins are adjacent exactly when looped, fraternal ones when unlooped
    linked = looped if kind == "identical-twin" else not looped
    twins = [f"t{i}" for i in range(k)]
    for i, t in enumerate(twins):
        nbrs = outside + (twins[:i] if linked else [])
        g = g.add_vertex(t, looped, nbrs, random_weight(rng, f"a_{t}"), random_weight(rng, f"b_{t}"))
    return g, twins


def plant_pendant(rng: random.Random, n_rest: int) -> Tuple[WeightedGraph, str, str]:
    """A random weighted graph with a new unlooped vertex hanging off one of its vertices."""
    g = random_graph(rng, n_rest, prefix="r")
    a = rng.choice(g.vertices)
    g = g.add_vertex("p", False, [a], random_weight(rng, "a_p"), random_weight(rng, "b_p"))
    return g, a, "p"
