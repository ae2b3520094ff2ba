"""Vertex-weighted looped graphs and their GF(2) adjacency matrices.

Vertices are text labels kept in an ordered tuple.  Adjacency is stored as one
integer bit-row per vertex (bit ``j`` of row ``i`` set when vertices ``i`` and
``j`` are adjacent); loops are a separate bitmask and only enter the matrix as
its diagonal when a rank is taken.  Every vertex carries two weights, ``alpha``
(the factor when the vertex is in a subset) and ``beta`` (the factor when it is
not), both :class:`~interlace.poly.Poly`.
"""

from __future__ import annotations

from collections import namedtuple
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .poly import ONE, Poly, PolyLike

RankNullity = namedtuple("RankNullity", ["rank", "nullity"])


class GraphError(ValueError):
    """Unknown labels, label collisions, self-edges and similar misuse."""


def gf2_rank(rows: Sequence[int]) -> int:
    """Rank over GF(2) of bit-row vectors by Gaussian elimination."""
    work = [r for r in rows if r]
    rank = 0
    while work:
        pivot = work.pop()
        if not pivot:
            continue
        rank += 1
        low = pivot & -pivot
        work = [r ^ pivot if r & low else r for r in work]
        work = [r for r in work if r]
    return rank


def gf2_rank_basis(rows: Sequence[int]) -> int:
    """Rank over GF(2) by greedy extraction of an echelon basis keyed on top bit.

    Independent of :func:`gf2_rank`; used to cross-check it.
    """
    basis: Dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top in basis:
                r ^= basis[top]
            else:
                basis[top] = r
                break
    return len(basis)


def _as_poly(value: PolyLike) -> Poly:
    return Poly.coerce(value)


class WeightedGraph:
    """Immutable vertex-weighted graph with loops.

    Build one with :meth:`WeightedGraph.build` or the helper constructors at the
    bottom of this module; every operation returns a new graph.
    """

    __slots__ = ("vertices", "_index", "_rows", "_loops", "alpha", "beta")

    def __init__(
        self,
        vertices: Sequence[str],
        rows: Sequence[int],
        loops: int,
        alpha: Mapping[str, Poly],
        beta: Mapping[str, Poly],
    ):
        # internal constructor: rows indexed by position in ``vertices``
        self.vertices: Tuple[str, ...] = tuple(vertices)
        self._index = {v: i for i, v in enumerate(self.vertices)}
        self._rows: Tuple[int, ...] = tuple(rows)
        self._loops = loops
        self.alpha: Dict[str, Poly] = dict(alpha)
        self.beta: Dict[str, Poly] = dict(beta)

    @classmethod
    def build(
        cls,
        vertices: Iterable[str],
        edges: Iterable[Tuple[str, str]] = (),
        loops: Iterable[str] = (),
        alpha: Mapping[str, PolyLike] | None = None,
        beta: Mapping[str, PolyLike] | None = None,
    ) -> "WeightedGraph":
        verts = [str(v) for v in vertices]
        index = {}
        for i, v in enumerate(verts):
            if v in index:
                raise GraphError(f"duplicate vertex {v!r}")
            index[v] = i
        rows = [0] * len(verts)
        for u, v in edges:
            if u not in index or v not in index:
                missing = u if u not in index else v
                raise GraphError(f"unknown vertex {missing!r}")
            if u == v:
                raise GraphError(f"self-edge on {u!r}; use a loop instead")
            i, j = index[u], index[v]
            if rows[i] >> j & 1:
                raise GraphError(f"duplicate edge {u} {v}")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        loop_mask = 0
        for v in loops:
            if v not in index:
                raise GraphError(f"unknown vertex {v!r}")
            loop_mask |= 1 << index[v]
        alpha = dict(alpha or {})
        beta = dict(beta or {})
        for name, w in (("alpha", alpha), ("beta", beta)):
            for v in w:
                if v not in index:
                    raise GraphError(f"{name} weight for unknown vertex {v!r}")
        return cls(
            verts,
            rows,
            loop_mask,
            {v: _as_poly(alpha.get(v, ONE)) for v in verts},
            {v: _as_poly(beta.get(v, ONE)) for v in verts},
        )

    # -- queries -----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self._index

    def _idx(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def index(self, v: str) -> int:
        return self._idx(v)

    def has_loop(self, v: str) -> bool:
        return bool(self._loops >> self._idx(v) & 1)

    def adjacent(self, u: str, v: str) -> bool:
        return bool(self._rows[self._idx(u)] >> self._idx(v) & 1)

    def neighbors(self, v: str) -> List[str]:
        """Neighbors of ``v`` in vertex-list order (loops excluded)."""
        row = self._rows[self._idx(v)]
        return [self.vertices[j] for j in _bits(row)]

    def degree(self, v: str) -> int:
        return bin(self._rows[self._idx(v)]).count("1")

    def neighbor_mask(self, v: str) -> int:
        return self._rows[self._idx(v)]

    @property
    def loops(self) -> frozenset:
        return frozenset(self.vertices[i] for i in _bits(self._loops))

    @property
    def loop_mask(self) -> int:
        return self._loops

    @property
    def rows(self) -> Tuple[int, ...]:
        return self._rows

    def edges(self) -> List[Tuple[str, str]]:
        """Non-loop edges as label pairs, ordered by vertex-list position."""
        out = []
        for i, row in enumerate(self._rows):
            for j in _bits(row >> (i + 1) << (i + 1)):
                out.append((self.vertices[i], self.vertices[j]))
        return out

    def has_edges(self) -> bool:
        return any(self._rows)

    def is_simple(self) -> bool:
        return not self._loops

    def is_unweighted(self) -> bool:
        return all(self.alpha[v] == ONE and self.beta[v] == ONE for v in self.vertices)

    def components(self) -> List[List[str]]:
        """Connected components, each in vertex-list order."""
        seen = 0
        comps = []
        for i in range(len(self.vertices)):
            if seen >> i & 1:
                continue
            comp = 1 << i
            frontier = 1 << i
            while frontier:
                nxt = 0
                for j in _bits(frontier):
                    nxt |= self._rows[j]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append([self.vertices[j] for j in _bits(comp)])
        return comps

    def is_connected(self) -> bool:
        return len(self.vertices) <= 1 or len(self.components()) == 1

    def subset_mask(self, subset: Iterable[str]) -> int:
        mask = 0
        for v in subset:
            mask |= 1 << self._idx(v)
        return mask

    def rank_mask(self, mask: int) -> int:
        """GF(2) rank of the adjacency matrix of the subgraph induced on ``mask``."""
        rows = []
        for i in _bits(mask):
            rows.append((self._rows[i] & mask) | (self._loops & (1 << i)))
        return gf2_rank(rows)

    def rank_nullity(self, subset: Iterable[str]) -> RankNullity:
        mask = self.subset_mask(subset)
        r = self.rank_mask(mask)
        return RankNullity(r, bin(mask).count("1") - r)

    def matrix(self) -> List[List[int]]:
        """Dense 0/1 adjacency matrix with loop flags on the diagonal."""
        n = len(self.vertices)
        return [
            [1 if (self._rows[i] >> j & 1) or (i == j and self._loops >> i & 1) else 0 for j in range(n)]
            for i in range(n)
        ]

    # -- equality ----------------------------------------------------------

    def _key(self):
        return (
            frozenset(self.vertices),
            frozenset(frozenset(e) for e in self.edges()),
            self.loops,
            frozenset(self.alpha.items()),
            frozenset(self.beta.items()),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        loops = sorted(self.loops, key=self._index.get)
        return f"WeightedGraph(vertices={list(self.vertices)}, edges={self.edges()}, loops={loops})"

    # -- constructions -----------------------------------------------------

    def _with(self, rows=None, loops=None, alpha=None, beta=None) -> "WeightedGraph":
        return WeightedGraph(
            self.vertices,
            self._rows if rows is None else rows,
            self._loops if loops is None else loops,
            self.alpha if alpha is None else alpha,
            self.beta if beta is None else beta,
        )

    def with_weights(self, v: str, alpha: PolyLike | None = None, beta: PolyLike | None = None) -> "WeightedGraph":
        self._idx(v)
        a = dict(self.alpha)
        b = dict(self.beta)
        if alpha is not None:
            a[v] = _as_poly(alpha)
        if beta is not None:
            b[v] = _as_poly(beta)
        return self._with(alpha=a, beta=b)

    def unweighted(self) -> "WeightedGraph":
        return self._with(
            alpha={v: ONE for v in self.vertices},
            beta={v: ONE for v in self.vertices},
        )

    def with_loop(self, v: str, looped: bool = True) -> "WeightedGraph":
        bit = 1 << self._idx(v)
        return self._with(loops=(self._loops | bit) if looped else (self._loops & ~bit))

    def toggle_edge(self, u: str, v: str) -> "WeightedGraph":
        i, j = self._idx(u), self._idx(v)
        if i == j:
            return self._with(loops=self._loops ^ (1 << i))
        rows = list(self._rows)
        rows[i] ^= 1 << j
        rows[j] ^= 1 << i
        return self._with(rows=rows)

    def local_complement(self, a: str) -> "WeightedGraph":
        """Toggle every pair (and loop) among the neighbors of ``a``."""
        nbrs = self._rows[self._idx(a)]
        rows = list(self._rows)
        for i in _bits(nbrs):
            rows[i] ^= nbrs & ~(1 << i)
        return self._with(rows=rows, loops=self._loops ^ nbrs)

    def pivot(self, a: str, b: str) -> "WeightedGraph":
        """Pivot on distinct vertices ``a`` and ``b``; loops are never toggled.

        A pair ``{u, w}`` outside ``{a, b}`` is toggled when, for some labeling,
        ``u`` is adjacent to ``a``, ``w`` is adjacent to ``b``, and ``u`` is not
        adjacent to ``b`` or ``w`` is not adjacent to ``a``.
        """
        i, j = self._idx(a), self._idx(b)
        if i == j:
            raise GraphError("pivot needs two distinct vertices")
        outside = ~((1 << i) | (1 << j))
        na = self._rows[i] & outside
        nb = self._rows[j] & outside
        toggle = [0] * len(self.vertices)
        for u in _bits(na):
            for w in _bits(nb):
                if u == w:
                    continue
                # u in N(a), w in N(b); toggle unless both also cross-adjacent
                if not (nb >> u & 1) or not (na >> w & 1):
                    toggle[u] |= 1 << w
                    toggle[w] |= 1 << u
        rows = [r ^ t for r, t in zip(self._rows, toggle)]
        return self._with(rows=rows)

    def complement(self) -> "WeightedGraph":
        """Toggle every adjacency and every loop flag."""
        n = len(self.vertices)
        full = (1 << n) - 1
        rows = [full & ~r & ~(1 << i) for i, r in enumerate(self._rows)]
        return self._with(rows=rows, loops=full & ~self._loops)

    def induced_subgraph(self, subset: Iterable[str]) -> "WeightedGraph":
        keep = set(subset)
        for v in keep:
            self._idx(v)
        positions = [i for i, v in enumerate(self.vertices) if v in keep]
        return self._restrict(positions)

    def delete_vertex(self, *labels: str) -> "WeightedGraph":
        drop = {self._idx(v) for v in labels}
        positions = [i for i in range(len(self.vertices)) if i not in drop]
        return self._restrict(positions)

    def _restrict(self, positions: List[int]) -> "WeightedGraph":
        remap = {old: new for new, old in enumerate(positions)}
        rows = []
        loops = 0
        for new, old in enumerate(positions):
            row = 0
            for j in _bits(self._rows[old]):
                if j in remap:
                    row |= 1 << remap[j]
            rows.append(row)
            if self._loops >> old & 1:
                loops |= 1 << new
        verts = [self.vertices[i] for i in positions]
        return WeightedGraph(
            verts,
            rows,
            loops,
            {v: self.alpha[v] for v in verts},
            {v: self.beta[v] for v in verts},
        )

    def rename(self, old: str, new: str) -> "WeightedGraph":
        i = self._idx(old)
        if new != old and new in self._index:
            raise GraphError(f"label {new!r} already present")
        verts = list(self.vertices)
        verts[i] = new
        alpha = {(new if v == old else v): w for v, w in self.alpha.items()}
        beta = {(new if v == old else v): w for v, w in self.beta.items()}
        return WeightedGraph(verts, self._rows, self._loops, alpha, beta)

    def add_vertex(
        self, v: str, looped: bool = False, neighbors: Iterable[str] = (), alpha: PolyLike = 1, beta: PolyLike = 1
    ) -> "WeightedGraph":
        if v in self._index:
            raise GraphError(f"label {v!r} already present")
        n = len(self.vertices)
        rows = list(self._rows) + [0]
        for u in neighbors:
            j = self._idx(u)
            rows[j] |= 1 << n
            rows[n] |= 1 << j
        a = dict(self.alpha)
        b = dict(self.beta)
        a[v] = _as_poly(alpha)
        b[v] = _as_poly(beta)
        loops = self._loops | ((1 << n) if looped else 0)
        return WeightedGraph(list(self.vertices) + [v], rows, loops, a, b)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def disjoint_union(g1: WeightedGraph, g2: WeightedGraph) -> WeightedGraph:
    clash = set(g1.vertices) & set(g2.vertices)
    if clash:
        raise GraphError(f"label collision: {sorted(clash)}")
    n1 = len(g1.vertices)
    rows = list(g1.rows) + [r << n1 for r in g2.rows]
    alpha = {**g1.alpha, **g2.alpha}
    beta = {**g1.beta, **g2.beta}
    return WeightedGraph(
        list(g1.vertices) + list(g2.vertices), rows, g1.loop_mask | (g2.loop_mask << n1), alpha, beta
    )


def join(g1: WeightedGraph, g2: WeightedGraph) -> WeightedGraph:
    """Disjoint union plus every edge between the two vertex sets."""
    g = disjoint_union(g1, g2)
    n1, n2 = len(g1.vertices), len(g2.vertices)
    left = (1 << n1) - 1
    right = ((1 << n2) - 1) << n1
    rows = [r | right if i < n1 else r | left for i, r in enumerate(g.rows)]
    return WeightedGraph(g.vertices, rows, g.loop_mask, g.alpha, g.beta)


def rank_nullity(g: WeightedGraph, subset: Iterable[str]) -> RankNullity:
    return g.rank_nullity(subset)


def local_complement(g: WeightedGraph, a: str) -> WeightedGraph:
    return g.local_complement(a)


def pivot(g: WeightedGraph, a: str, b: str) -> WeightedGraph:
    return g.pivot(a, b)


def complement(g: WeightedGraph) -> WeightedGraph:
    return g.complement()


def delete_vertex(g: WeightedGraph, a: str) -> WeightedGraph:
    return g.delete_vertex(a)


def induced_subgraph(g: WeightedGraph, subset: Iterable[str]) -> WeightedGraph:
    return g.induced_subgraph(subset)


# -- small named graphs ------------------------------------------------------


def empty_graph() -> WeightedGraph:
    return WeightedGraph.build([])


def edgeless(n: int, prefix: str = "v") -> WeightedGraph:
    return WeightedGraph.build([f"{prefix}{i}" for i in range(n)])


def path(n: int, prefix: str = "v") -> WeightedGraph:
    vs = [f"{prefix}{i}" for i in range(n)]
    return WeightedGraph.build(vs, zip(vs, vs[1:]))


def cycle(n: int, prefix: str = "v") -> WeightedGraph:
    vs = [f"{prefix}{i}" for i in range(n)]
    return WeightedGraph.build(vs, list(zip(vs, vs[1:])) + [(vs[-1], vs[0])])


def complete(n: int, prefix: str = "v") -> WeightedGraph:
    vs = [f"{prefix}{i}" for i in range(n)]
    return WeightedGraph.build(vs, [(vs[i], vs[j]) for i in range(n) for j in range(i + 1, n)])


def single(label: str = "v", looped: bool = False) -> WeightedGraph:
    return WeightedGraph.build([label], loops=[label] if looped else [])
