"""Pendant and twin reductions.

Each reduction deletes one or more vertices and re-weights a surviving vertex
so that the weighted interlace polynomial is unchanged:

* identical twins: looped and adjacent, or unlooped and non-adjacent, with the
  same neighbors outside the pair;
* fraternal twins: looped and non-adjacent, or unlooped and adjacent, with the
  same outside neighbors;
* an unlooped degree-one vertex pendant on its neighbor.

Repeating these until nothing applies either leaves an edgeless graph, whose
polynomial is a product of one factor per vertex, or an irreducible core.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .graph import GraphError, WeightedGraph
from .poly import ONE, X, Y, ZERO, Poly, canonical_string, poly_prod, poly_sum

IDENTICAL = "identical-twin"
FRATERNAL = "fraternal-twin"
PENDANT = "pendant"

XM1 = X - 1
YM1 = Y - 1


class ReductionError(GraphError):
    """The listed vertices do not satisfy the reduction's precondition."""


@dataclass(frozen=True)
class ReductionStep:
    kind: str
    survivor: str
    removed: Tuple[str, ...]
    alpha: Poly
    beta: Poly

    def apply(self, g: WeightedGraph) -> WeightedGraph:
        return g.delete_vertex(*self.removed).with_weights(self.survivor, self.alpha, self.beta)

    def to_text(self) -> str:
        return (
            f"{self.kind} removed={','.join(self.removed)} survivor={self.survivor} "
            f'alpha="{canonical_string(self.alpha)}" beta="{canonical_string(self.beta)}"'
        )


@dataclass
class ReductionTrace:
    steps: List[ReductionStep] = field(default_factory=list)
    terminal: Optional[WeightedGraph] = None

    @property
    def edgeless(self) -> bool:
        return self.terminal is not None and not self.terminal.has_edges()

    def to_text(self) -> str:
        lines = [step.to_text() for step in self.steps]
        if self.terminal is not None:
            kind = "edgeless" if self.edgeless else "core"
            lines.append(f"terminal {kind} vertices={','.join(self.terminal.vertices)}")
        return "\n".join(lines) + "\n"


# -- predicates ----------------------------------------------------------------


def _outside_equal(g: WeightedGraph, a: str, b: str) -> bool:
    ia, ib = g.index(a), g.index(b)
    mask = ~((1 << ia) | (1 << ib))
    return g.neighbor_mask(a) & mask == g.neighbor_mask(b) & mask


def twin_relation(g: WeightedGraph, a: str, b: str) -> Optional[str]:
    """Return IDENTICAL, FRATERNAL or None for a pair of distinct vertices."""
    if a == b or not _outside_equal(g, a, b):
        return None
    la, lb = g.has_loop(a), g.has_loop(b)
    if la != lb:
        return None
    adj = g.adjacent(a, b)
    if la:
        return IDENTICAL if adj else FRATERNAL
    return FRATERNAL if adj else IDENTICAL


def _why_not(g: WeightedGraph, a: str, b: str, kind: str) -> str:
    if not _outside_equal(g, a, b):
        return f"{a} and {b} have different neighbors outside the pair"
    if g.has_loop(a) != g.has_loop(b):
        return f"exactly one of {a}, {b} is looped"
    return f"{a} and {b} are {twin_relation(g, a, b)} twins, not {kind} twins"


def _check_group(g: WeightedGraph, twins: Sequence[str], kind: str) -> None:
    if len(twins) < 2:
        raise ReductionError("a twin reduction needs at least two vertices")
    if len(set(twins)) != len(twins):
        raise ReductionError("repeated vertex in twin list")
    for v in twins:
        if v not in g:
            raise ReductionError(f"unknown vertex {v!r}")
    for a, b in combinations(twins, 2):
        if twin_relation(g, a, b) != kind:
            raise ReductionError(f"{kind} reduction rejected: {_why_not(g, a, b, kind)}")


# -- weight formulas -------------------------------------------------------------


def _subset_terms(alphas: Sequence[Poly], betas: Sequence[Poly]):
    """Yield ``(size, prod alpha over S * prod beta over the rest)`` for every subset S."""
    # dynamic programme over vertices: by_size[s] = sum over S of size s
    by_size = [ONE]
    for a, b in zip(alphas, betas):
        nxt = [ZERO] * (len(by_size) + 1)
        for s, w in enumerate(by_size):
            if w:
                nxt[s] = nxt[s] + w * b
                nxt[s + 1] = nxt[s + 1] + w * a
        by_size = nxt
    return list(enumerate(by_size))


def identical_twin_weights(alphas: Sequence[Poly], betas: Sequence[Poly]) -> Tuple[Poly, Poly]:
    by_size = _subset_terms(alphas, betas)
    alpha = poly_sum(w * YM1 ** (s - 1) for s, w in by_size if s >= 1)
    return alpha, poly_prod(betas)


def fraternal_twin_weights(alphas: Sequence[Poly], betas: Sequence[Poly]) -> Tuple[Poly, Poly]:
    by_size = _subset_terms(alphas, betas)
    alpha = poly_sum(w * XM1 ** (s - 1) for s, w in by_size if s % 2 == 1)
    beta = poly_sum(w * XM1 ** s for s, w in by_size if s % 2 == 0)
    return alpha, beta


def identical_pair_weights(aa: Poly, ba: Poly, ab: Poly, bb: Poly) -> Tuple[Poly, Poly]:
    """Two-vertex identical-twin formula: survivor weights (aa, ba), removed weights (ab, bb)."""
    return aa * bb + aa * ab * YM1 + ba * ab, ba * bb


def fraternal_pair_weights(aa: Poly, ba: Poly, ab: Poly, bb: Poly) -> Tuple[Poly, Poly]:
    return aa * bb + ba * ab, ba * bb + aa * ab * XM1 ** 2


def pendant_weights(aa: Poly, ba: Poly, ab: Poly, bb: Poly) -> Tuple[Poly, Poly]:
    """Survivor ``a`` with weights (aa, ba); pendant ``b`` with weights (ab, bb)."""
    return aa * bb, aa * ab * XM1 ** 2 + ba * ab * YM1 + ba * bb


# -- reductions -------------------------------------------------------------------


def identical_twin_step(g: WeightedGraph, twins: Sequence[str]) -> ReductionStep:
    _check_group(g, twins, IDENTICAL)
    alpha, beta = identical_twin_weights([g.alpha[v] for v in twins], [g.beta[v] for v in twins])
    return ReductionStep(IDENTICAL, twins[0], tuple(twins[1:]), alpha, beta)


def fraternal_twin_step(g: WeightedGraph, twins: Sequence[str]) -> ReductionStep:
    _check_group(g, twins, FRATERNAL)
    alpha, beta = fraternal_twin_weights([g.alpha[v] for v in twins], [g.beta[v] for v in twins])
    return ReductionStep(FRATERNAL, twins[0], tuple(twins[1:]), alpha, beta)


def pendant_step(g: WeightedGraph, a: str, b: str) -> ReductionStep:
    if a == b:
        raise ReductionError("pendant and anchor must differ")
    for v in (a, b):
        if v not in g:
            raise ReductionError(f"unknown vertex {v!r}")
    if g.has_loop(b):
        raise ReductionError(f"{b} is looped")
    if g.neighbors(b) != [a]:
        raise ReductionError(f"{b} is not a degree-one vertex pendant on {a}")
    alpha, beta = pendant_weights(g.alpha[a], g.beta[a], g.alpha[b], g.beta[b])
    return ReductionStep(PENDANT, a, (b,), alpha, beta)


def identical_twin_reduce(g: WeightedGraph, twins: Sequence[str]) -> WeightedGraph:
    return identical_twin_step(g, twins).apply(g)


def fraternal_twin_reduce(g: WeightedGraph, twins: Sequence[str]) -> WeightedGraph:
    return fraternal_twin_step(g, twins).apply(g)


def pendant_reduce(g: WeightedGraph, a: str, b: str) -> WeightedGraph:
    return pendant_step(g, a, b).apply(g)


def find_reduction(
    g: WeightedGraph,
    order: Optional[Sequence[str]] = None,
    allow_fraternal: bool = True,
) -> Optional[ReductionStep]:
    """First applicable step: pendants, then identical twins, then fraternal twins.

    Each kind is scanned in ``order`` (default: vertex-list order).
    """
    verts = list(order) if order is not None else list(g.vertices)
    for b in verts:
        if not g.has_loop(b) and g.degree(b) == 1:
            return pendant_step(g, g.neighbors(b)[0], b)
    kinds = (IDENTICAL, FRATERNAL) if allow_fraternal else (IDENTICAL,)
    for kind in kinds:
        for i, a in enumerate(verts):
            for b in verts[i + 1:]:
                if twin_relation(g, a, b) == kind:
                    if kind == IDENTICAL:
                        return identical_twin_step(g, [a, b])
                    return fraternal_twin_step(g, [a, b])
    return None


def edgeless_q(g: WeightedGraph) -> Poly:
    """Closed form for a graph without non-loop edges: one factor per vertex."""
    if g.has_edges():
        raise GraphError("graph has non-loop edges")
    return poly_prod(
        g.alpha[v] * (XM1 if g.has_loop(v) else YM1) + g.beta[v] for v in g.vertices
    )


def reduce_fully(
    g: WeightedGraph,
    rng: Optional[random.Random] = None,
    allow_fraternal: bool = True,
) -> Tuple[ReductionTrace, WeightedGraph]:
    """Apply reductions until none applies.

    With ``rng`` the scan order is shuffled before every search, which gives a
    different maximal reduction sequence.
    """
    trace = ReductionTrace()
    current = g
    while True:
        order = None
        if rng is not None:
            order = list(current.vertices)
            rng.shuffle(order)
        step = find_reduction(current, order, allow_fraternal)
        if step is None:
            break
        trace.steps.append(step)
        current = step.apply(current)
    trace.terminal = current
    return trace, current


def q_reduced(g: WeightedGraph, rng: Optional[random.Random] = None) -> Optional[Poly]:
    """q(G) from a full reduction, or None if an irreducible core remains."""
    trace, terminal = reduce_fully(g, rng)
    if terminal.has_edges():
        return None
    return edgeless_q(terminal)
