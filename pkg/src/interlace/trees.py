"""Ordered rooted trees and earlier-sibling covers.

An es-cover of an ordered tree is an independent vertex set that dominates the
root and, for each non-root member, dominates every earlier sibling of that
member.  The weighted interlace polynomial of a tree is the sum over es-covers
of a product of per-vertex cover weights; for unweighted trees this collapses
to a count of covers by size and number of distinct parents.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .graph import GraphError, WeightedGraph
from .poly import ONE, X, Y, Poly, poly_prod, poly_sum
from .recursion import TreeStrategy, leaf_vertex_sets, q_recursive

XM1 = X - 1
YM1 = Y - 1


class TreeError(GraphError):
    pass


@dataclass(frozen=True)
class OrderedRootedTree:
    graph: WeightedGraph
    root: str
    children: Mapping[str, Tuple[str, ...]]

    @classmethod
    def from_graph(
        cls,
        g: WeightedGraph,
        root: str,
        order: Optional[Mapping[str, Sequence[str]]] = None,
    ) -> "OrderedRootedTree":
        """Root ``g`` at ``root``.

        ``order`` lists children per parent; parents without an entry keep
        vertex-list order, and a partial list is completed in vertex-list order.
        """
        if root not in g:
            raise TreeError(f"root {root!r} is not a vertex")
        if g.loop_mask:
            raise TreeError("a tree has no loops")
        if len(g.edges()) != len(g) - 1 or not g.is_connected():
            raise TreeError("graph is not a tree")
        parent: Dict[str, Optional[str]] = {root: None}
        queue = [root]
        while queue:
            v = queue.pop(0)
            for u in g.neighbors(v):
                if u not in parent:
                    parent[u] = v
                    queue.append(u)
        natural: Dict[str, List[str]] = {v: [] for v in g.vertices}
        for v in g.vertices:
            if parent[v] is not None:
                natural[parent[v]].append(v)
        children: Dict[str, Tuple[str, ...]] = {}
        order = order or {}
        for p, kids in natural.items():
            given = list(order.get(p, ()))
            for c in given:
                if c not in kids:
                    raise TreeError(f"{c!r} is not a child of {p!r}")
            if len(set(given)) != len(given):
                raise TreeError(f"repeated child in order for {p!r}")
            rest = [c for c in kids if c not in given]
            if kids:
                children[p] = tuple(given + rest)
        for p in order:
            if p not in g:
                raise TreeError(f"unknown vertex {p!r} in order")
        return cls(g, root, children)

    def parent(self, v: str) -> Optional[str]:
        for p, kids in self.children.items():
            if v in kids:
                return p
        return None

    def parent_map(self) -> Dict[str, str]:
        return {c: p for p, kids in self.children.items() for c in kids}

    def earlier_siblings(self, v: str) -> Tuple[str, ...]:
        p = self.parent(v)
        if p is None:
            return ()
        kids = self.children[p]
        return kids[: kids.index(v)]

    def later_siblings(self, v: str) -> Tuple[str, ...]:
        p = self.parent(v)
        if p is None:
            return ()
        kids = self.children[p]
        return kids[kids.index(v) + 1:]

    def subtree(self, keep: Iterable[str]) -> "OrderedRootedTree":
        """Restrict to ``keep`` (which must contain the root and stay connected)."""
        keep = set(keep)
        g = self.graph.induced_subgraph(keep)
        order = {p: [c for c in kids if c in keep] for p, kids in self.children.items() if p in keep}
        return OrderedRootedTree.from_graph(g, self.root, order)

    def unweighted(self) -> "OrderedRootedTree":
        return OrderedRootedTree(self.graph.unweighted(), self.root, self.children)

    def strategy(self) -> TreeStrategy:
        return TreeStrategy(self.root, dict(self.children))


@dataclass(frozen=True)
class EsCover:
    members: frozenset
    root_like: frozenset  # in the cover: the root, or has a later sibling in the cover
    last_like: frozenset  # in the cover, not the root, no later sibling in the cover
    covered_parents: frozenset  # outside the cover, with a child in the cover


def is_es_cover(tree: OrderedRootedTree, members: Iterable[str]) -> bool:
    s = set(members)
    g = tree.graph
    for v in s:
        if any(u in s for u in g.neighbors(v)):
            return False

    def dominated(v: str) -> bool:
        return v in s or any(u in s for u in g.neighbors(v))

    if not dominated(tree.root):
        return False
    return all(dominated(e) for v in s if v != tree.root for e in tree.earlier_siblings(v))


def _partition(tree: OrderedRootedTree, members: frozenset) -> EsCover:
    root_like = set()
    last_like = set()
    for v in members:
        if v == tree.root or any(u in members for u in tree.later_siblings(v)):
            root_like.add(v)
        else:
            last_like.add(v)
    covered = {
        v
        for v in tree.graph.vertices
        if v not in members and any(c in members for c in tree.children.get(v, ()))
    }
    return EsCover(members, frozenset(root_like), frozenset(last_like), frozenset(covered))


def es_covers(tree: OrderedRootedTree) -> List[EsCover]:
    """All es-covers, by brute force over independent sets, in subset-bitmask order."""
    g = tree.graph
    n = len(g)
    out = []
    for mask in range(1 << n):
        # independence check on bit rows
        if any(mask >> i & 1 and g.rows[i] & mask for i in range(n)):
            continue
        members = frozenset(g.vertices[i] for i in range(n) if mask >> i & 1)
        if is_es_cover(tree, members):
            out.append(_partition(tree, members))
    return out


def _distinct_parents(tree: OrderedRootedTree, members: Iterable[str]) -> int:
    parents = tree.parent_map()
    return len({parents[v] for v in members if v != tree.root})


def es_numbers(tree: OrderedRootedTree) -> Dict[Tuple[int, int], int]:
    """``(s, t) -> c_{s,t}``: covers of size ``s`` whose non-root members have ``t`` parents."""
    counts: Counter = Counter()
    for cover in es_covers(tree):
        counts[(len(cover.members), _distinct_parents(tree, cover.members))] += 1
    return dict(sorted(counts.items()))


def cover_weight(tree: OrderedRootedTree, cover: EsCover | Iterable[str]) -> Poly:
    if not isinstance(cover, EsCover):
        members = frozenset(cover)
        if not is_es_cover(tree, members):
            raise TreeError(f"{sorted(members)} is not an es-cover")
        cover = _partition(tree, members)
    g = tree.graph
    parents = tree.parent_map()
    factors = []
    for v in g.vertices:
        if v in cover.root_like:
            factors.append(g.beta[v] + g.alpha[v] * YM1)
        elif v in cover.last_like:
            p = parents[v]
            factors.append(g.alpha[v] * (YM1 * g.beta[p] + XM1 ** 2 * g.alpha[p]))
        elif v in cover.covered_parents:
            factors.append(ONE)
        else:
            factors.append(g.beta[v])
    return poly_prod(factors)


def q_tree(tree: OrderedRootedTree) -> Poly:
    return poly_sum(cover_weight(tree, c) for c in es_covers(tree))


def q_tree_unweighted(tree: OrderedRootedTree) -> Poly:
    """Unweighted polynomial from the es-numbers alone."""
    branch = YM1 + XM1 ** 2
    return poly_sum(c * Y ** (s - t) * branch ** t for (s, t), c in es_numbers(tree).items())


def q_forest_unweighted(trees: Sequence[OrderedRootedTree]) -> Poly:
    return poly_prod(q_tree_unweighted(t) for t in trees)


def q_forest(trees: Sequence[OrderedRootedTree]) -> Poly:
    return poly_prod(q_tree(t) for t in trees)


def verify_tree_strategy_bijection(tree: OrderedRootedTree) -> bool:
    """Leaves of the tree-strategy recursion correspond one-to-one to es-covers."""
    _, comp = q_recursive(tree.graph, tree.strategy(), prune=False)
    from_leaves = leaf_vertex_sets(comp)
    covers = [c.members for c in es_covers(tree)]
    return len(from_leaves) == len(set(from_leaves)) and set(from_leaves) == set(covers)
