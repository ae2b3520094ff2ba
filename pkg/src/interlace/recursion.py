"""Recursive evaluation of q with an optional recorded computation tree.

The recursion removes one vertex at a time:

* an isolated vertex contributes the factor ``alpha(y-1) + beta`` (unlooped)
  or ``alpha(x-1) + beta`` (looped) and has a single child;
* a looped vertex ``a`` branches into ``G - a`` and ``G^a - a``;
* loopless neighbours ``a, b`` branch into ``G - a`` and ``G^{ab} - b`` with
  ``a`` re-weighted (binary form), or into three graphs (ternary form);
* the empty graph is a leaf with value 1.

Nodes with exactly one child are *active*.  With ``leaf_bound_mode`` the computation
is restricted to the operations the leaf-count lower bound speaks about:
no fraternal reductions, no single-child shortcut for isolated looped
vertices, the edgeless closed form only on loopless graphs, and no pruning of
zero-weight branches.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .expansion import epsilon, gamma, q_expand
from .graph import GraphError, WeightedGraph
from .poly import ONE, X, Y, Poly, PolyLike, canonical_string
from .reduction import edgeless_q, find_reduction

XM1 = X - 1
YM1 = Y - 1

FIRST = "first"
REDUCE = "reduce"


class NodeKind(str, enum.Enum):
    LOOP_BRANCH = "LoopBranch"
    BINARY_PIVOT = "BinaryPivot"
    TERNARY_PIVOT = "TernaryPivot"
    ISOLATED_LOOPED = "IsolatedLooped"
    ISOLATED_UNLOOPED = "IsolatedUnlooped"
    EDGELESS_CLOSURE = "EdgelessClosure"
    REDUCTION_STEP = "ReductionStep"
    EMPTY_LEAF = "EmptyLeaf"


ARITY = {
    NodeKind.LOOP_BRANCH: 2,
    NodeKind.BINARY_PIVOT: 2,
    NodeKind.TERNARY_PIVOT: 3,
    NodeKind.ISOLATED_LOOPED: 1,
    NodeKind.ISOLATED_UNLOOPED: 1,
    NodeKind.REDUCTION_STEP: 1,
    NodeKind.EDGELESS_CLOSURE: 0,
    NodeKind.EMPTY_LEAF: 0,
}
LEAF_KINDS = (NodeKind.EMPTY_LEAF, NodeKind.EDGELESS_CLOSURE)
ACTIVE_KINDS = (NodeKind.ISOLATED_LOOPED, NodeKind.ISOLATED_UNLOOPED, NodeKind.REDUCTION_STEP)


class StrategyError(GraphError):
    pass


@dataclass
class Node:
    """One recorded step.  ``coeffs[i]`` multiplies ``children[i]``; a ``None`` child was pruned."""

    kind: NodeKind
    vertices: Tuple[str, ...]
    coeffs: Tuple[Poly, ...]
    children: List[Optional["Node"]] = field(default_factory=list)
    size: int = 0
    connected: bool = False
    detail: str = ""

    def evaluate(self) -> Poly:
        if self.kind is NodeKind.EMPTY_LEAF:
            return ONE
        if self.kind is NodeKind.EDGELESS_CLOSURE:
            return self.coeffs[0]
        total = Poly()
        for c, child in zip(self.coeffs, self.children):
            if child is not None:
                total = total + c * child.evaluate()
        return total

    def walk(self):
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(c for c in reversed(node.children) if c is not None)


@dataclass
class TreeStrategy:
    """Recursion order for an ordered rooted tree.

    Isolated vertices first; otherwise the last child of a parent whose
    children are all leaves (parent not the root) is pivoted against its
    parent; otherwise the root's last child is pivoted against the root.
    """

    root: str
    children: Mapping[str, Sequence[str]]

    def parent_map(self) -> Dict[str, str]:
        return {c: p for p, cs in self.children.items() for c in cs}


Strategy = Union[str, TreeStrategy]


@dataclass
class _Options:
    strategy: Strategy
    ternary: bool
    leaf_bound_mode: bool
    prune: bool
    record: bool


def _isolated(g: WeightedGraph, looped_ok: bool) -> Optional[str]:
    for i, v in enumerate(g.vertices):
        if not g.rows[i]:
            if g.loop_mask >> i & 1 and not looped_ok:
                continue
            return v
    return None


def _tree_choice(g: WeightedGraph, strat: TreeStrategy) -> Tuple[str, str]:
    """Return ``(a, b)`` for the pivot branch of the tree strategy."""
    root = strat.root
    if root not in g:
        raise StrategyError("tree strategy lost its root with edges remaining")
    present = {p: [c for c in cs if c in g] for p, cs in strat.children.items() if p in g}
    for p in g.vertices:
        if p == root:
            continue
        kids = present.get(p, [])
        if kids and all(not present.get(c) for c in kids):
            return kids[-1], p
    kids = present.get(root, [])
    if not kids:
        raise StrategyError("tree strategy found no pivot; input is not a rooted tree")
    return kids[-1], root


def _step_pivot(g: WeightedGraph, a: str, b: str, opts: _Options):
    aa, ba, ab, bb = g.alpha[a], g.beta[a], g.alpha[b], g.beta[b]
    piv = g.pivot(a, b)
    if opts.ternary:
        return (
            NodeKind.TERNARY_PIVOT,
            (a, b),
            (ba, bb, aa * ab * XM1 ** 2 - ba * bb),
            (g.delete_vertex(a), piv.delete_vertex(b), piv.delete_vertex(a, b)),
        )
    reweighted = piv.delete_vertex(b).with_weights(a, bb, ab * XM1 ** 2)
    return NodeKind.BINARY_PIVOT, (a, b), (ba, aa), (g.delete_vertex(a), reweighted)


def _plan(g: WeightedGraph, opts: _Options):
    """Pick the rule for ``g``: (kind, vertices, coeffs, child graphs, detail)."""
    if not g.vertices:
        return NodeKind.EMPTY_LEAF, (), (), (), ""
    strat = opts.strategy
    if strat == REDUCE:
        if not g.has_edges() and (not opts.leaf_bound_mode or g.is_simple()):
            return NodeKind.EDGELESS_CLOSURE, tuple(g.vertices), (edgeless_q(g),), (), ""
        step = find_reduction(g, allow_fraternal=not opts.leaf_bound_mode)
        if step is not None:
            return NodeKind.REDUCTION_STEP, (step.survivor,) + step.removed, (ONE,), (step.apply(g),), step.kind
    if isinstance(strat, TreeStrategy):
        if g.loop_mask:
            raise StrategyError("tree strategy needs a loopless graph")
        v = _isolated(g, looped_ok=False)
        if v is not None:
            return NodeKind.ISOLATED_UNLOOPED, (v,), (g.alpha[v] * YM1 + g.beta[v],), (g.delete_vertex(v),), ""
        a, b = _tree_choice(g, strat)
        return _step_pivot(g, a, b, opts) + ("",)
    if strat not in (FIRST, REDUCE):
        raise StrategyError(f"unknown strategy {strat!r}")
    v = _isolated(g, looped_ok=not opts.leaf_bound_mode)
    if v is not None:
        if g.has_loop(v):
            return NodeKind.ISOLATED_LOOPED, (v,), (g.alpha[v] * XM1 + g.beta[v],), (g.delete_vertex(v),), ""
        return NodeKind.ISOLATED_UNLOOPED, (v,), (g.alpha[v] * YM1 + g.beta[v],), (g.delete_vertex(v),), ""
    for i, a in enumerate(g.vertices):
        if g.loop_mask >> i & 1:
            return (
                NodeKind.LOOP_BRANCH,
                (a,),
                (g.beta[a], g.alpha[a] * XM1),
                (g.delete_vertex(a), g.local_complement(a).delete_vertex(a)),
                "",
            )
    a, b = g.edges()[0]
    return _step_pivot(g, a, b, opts) + ("",)


def _run(g: WeightedGraph, opts: _Options) -> Tuple[Poly, Optional[Node]]:
    kind, verts, coeffs, kids, detail = _plan(g, opts)
    node = None
    if opts.record:
        node = Node(kind, verts, coeffs, [], len(g), bool(g.vertices) and g.is_connected(), detail)
    if kind is NodeKind.EMPTY_LEAF:
        return ONE, node
    if kind is NodeKind.EDGELESS_CLOSURE:
        return coeffs[0], node
    total = Poly()
    for c, child in zip(coeffs, kids):
        if opts.prune and not c:
            if node is not None:
                node.children.append(None)
            continue
        value, child_node = _run(child, opts)
        total = total + c * value
        if node is not None:
            node.children.append(child_node)
    return total, node


def validate_tree_strategy(g: WeightedGraph, strat: TreeStrategy) -> None:
    if strat.root not in g:
        raise StrategyError(f"root {strat.root!r} is not a vertex")
    if g.loop_mask:
        raise StrategyError("tree strategy needs a loopless graph")
    if len(g.edges()) != len(g) - 1 or not g.is_connected():
        raise StrategyError("tree strategy needs a tree")
    parents = strat.parent_map()
    for v in g.vertices:
        if v == strat.root:
            continue
        p = parents.get(v)
        if p is None or not g.adjacent(p, v):
            raise StrategyError(f"sibling order does not match the tree at {v!r}")


def q_recursive(
    g: WeightedGraph,
    strategy: Strategy = FIRST,
    ternary: bool = False,
    leaf_bound_mode: bool = False,
    record: bool = True,
    prune: Optional[bool] = None,
) -> Tuple[Poly, Optional[Node]]:
    """Compute q(G) recursively; returns the polynomial and the tree (or None).

    ``strategy`` is ``"first"``, ``"reduce"`` or a :class:`TreeStrategy`.
    Zero-coefficient branches are skipped unless ``leaf_bound_mode`` is set
    (override with ``prune``).
    """
    if isinstance(strategy, TreeStrategy):
        validate_tree_strategy(g, strategy)
    elif strategy not in (FIRST, REDUCE):
        raise StrategyError(f"unknown strategy {strategy!r}")
    opts = _Options(strategy, ternary, leaf_bound_mode, (not leaf_bound_mode) if prune is None else prune, record)
    return _run(g, opts)


# -- tree inspection ---------------------------------------------------------------


def tree_stats(tree: Node) -> dict:
    by_kind: Counter = Counter()
    for node in tree.walk():
        by_kind[node.kind.value] += 1
    leaves = sum(by_kind[k.value] for k in LEAF_KINDS)
    active = sum(by_kind[k.value] for k in ACTIVE_KINDS)
    return {
        "leaves": leaves,
        "active_nodes": active,
        "connected_leaves": connected_portion_leaves(tree),
        "by_kind": dict(by_kind),
    }


def connected_portion_leaves(tree: Node) -> int:
    """Leaves of the subtree of nodes whose graphs are connected, grown from the root."""
    if not tree.connected:
        return 0
    count = 0
    stack = [tree]
    while stack:
        node = stack.pop()
        inner = [c for c in node.children if c is not None and c.connected]
        if inner:
            stack.extend(inner)
        else:
            count += 1
    return count


def leaf_vertex_sets(tree: Node) -> List[frozenset]:
    """Per leaf, the vertices contributed along its path.

    An isolated-vertex step contributes its vertex; the re-weighted branch of a
    binary pivot contributes the pivot's first vertex.
    """
    out = []

    def walk(node: Node, acc: frozenset) -> None:
        if node.kind in LEAF_KINDS:
            out.append(acc)
            return
        for i, child in enumerate(node.children):
            if child is None:
                continue
            nxt = acc
            if node.kind in (NodeKind.ISOLATED_UNLOOPED, NodeKind.ISOLATED_LOOPED):
                nxt = acc | {node.vertices[0]}
            elif node.kind is NodeKind.BINARY_PIVOT and i == 1:
                nxt = acc | {node.vertices[0]}
            walk(child, nxt)

    walk(tree, frozenset())
    return out


def check_arity(tree: Node) -> bool:
    return all(len(n.children) == ARITY[n.kind] for n in tree.walk())


def tree_to_text(tree: Node) -> str:
    """Indented trace, one node per line: kind, vertices, coefficients."""
    lines = []

    def emit(node: Optional[Node], depth: int) -> None:
        pad = "  " * depth
        if node is None:
            lines.append(f"{pad}(pruned)")
            return
        label = node.kind.value + (f"[{node.detail}]" if node.detail else "")
        coeffs = " ".join(f'"{canonical_string(c)}"' for c in node.coeffs)
        verts = ",".join(node.vertices) or "-"
        lines.append(f"{pad}{label} {verts} {coeffs}".rstrip())
        for child in node.children:
            emit(child, depth + 1)

    emit(tree, 0)
    return "\n".join(lines) + "\n"


# -- identities ----------------------------------------------------------------------


def reweight_linear(g: WeightedGraph, a: str, r1: PolyLike, r2: PolyLike) -> WeightedGraph:
    """alpha'(a) = r1 alpha(a), beta'(a) = r1 beta(a) + r2."""
    r1 = Poly.coerce(r1)
    r2 = Poly.coerce(r2)
    return g.with_weights(a, r1 * g.alpha[a], r1 * g.beta[a] + r2)


def pivot_reweighted(g: WeightedGraph, a: str, b: str) -> WeightedGraph:
    """``G^{ab}`` with the weights of ``a`` and ``b`` exchanged and scaled by (x-1)^2."""
    if a == b or not g.adjacent(a, b) or g.has_loop(a) or g.has_loop(b):
        raise GraphError(f"{a} and {b} must be unlooped neighbours")
    sq = XM1 ** 2
    piv = g.pivot(a, b)
    piv = piv.with_weights(a, g.beta[b], g.alpha[b] * sq)
    return piv.with_weights(b, g.beta[a], g.alpha[a] * sq)


def pivot_reweight_identity_check(g: WeightedGraph, a: str, b: str) -> bool:
    """(x-1)^2 q(G) == q((G^{ab})') checked by subset expansion."""
    return XM1 ** 2 * q_expand(g) == q_expand(pivot_reweighted(g, a, b))


def check_leaf_bound(g: WeightedGraph, strategies: Sequence[Strategy] = (FIRST, REDUCE)) -> dict:
    """Leaf counts against half of epsilon (and half of gamma for simple graphs).

    Every listed strategy is run in both branching modes with ``leaf_bound_mode``.
    """
    eps = epsilon(g)
    gam = gamma(g) if g.is_simple() else None
    runs = []
    for strat in strategies:
        for ternary in (False, True):
            _, tree = q_recursive(g, strat, ternary=ternary, leaf_bound_mode=True)
            stats = tree_stats(tree)
            ok = 2 * stats["leaves"] >= eps
            if gam is not None:
                ok = ok and 2 * stats["leaves"] >= gam
                # the sharper form counts only the connected part of the tree
                if len(g) and g.is_connected():
                    ok = ok and 2 * stats["connected_leaves"] >= gam
            name = strat if isinstance(strat, str) else "tree"
            runs.append(
                {
                    "strategy": name,
                    "ternary": ternary,
                    "leaves": stats["leaves"],
                    "connected_leaves": stats["connected_leaves"],
                    "active_nodes": stats["active_nodes"],
                    "satisfied": ok,
                }
            )
    return {
        "epsilon": eps,
        "gamma": gamma(g),
        "half_epsilon": eps / 2,
        "half_gamma_or_none": None if gam is None else gam / 2,
        "leaves": min(r["leaves"] for r in runs),
        "runs": runs,
        "satisfied": all(r["satisfied"] for r in runs),
    }
