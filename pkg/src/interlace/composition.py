"""Composition ``H * K`` along a shared unlooped marker vertex, and the weights
that let ``q(H * K)`` be computed from ``K`` alone.

For every ``S`` inside ``H - a`` the *type* compares the rank of ``M`` (the
adjacency matrix of ``H[S]``) with the two bordered matrices obtained by adding
``a`` unlooped and looped.  Summing the usual subset contributions by type
gives ``q1, q2, q3`` and from them

    beta(a) = q1,   alpha(a) = q2 / (y-1),   beta(a_c) = q3,

with the division done term by term (every type-2 subset has nullity >= 1).
Then ``q(H * K) = q(K') + q((K^a)')``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from .expansion import q_expand
from .graph import GraphError, WeightedGraph, disjoint_union
from .poly import ONE, X, Y, ZERO, Poly, exact_div, poly_sum

XM1 = X - 1
YM1 = Y - 1
COPY_MARK = "~c"


class CompositionError(GraphError):
    pass


class TypeGuardError(RuntimeError):
    """A type-2 subset had nullity 0; the termwise division would be wrong."""


@dataclass(frozen=True)
class CompositionWeights:
    alpha_a: Poly
    beta_a: Poly
    beta_ac: Poly


def _check_marker(g: WeightedGraph, a: str, name: str) -> None:
    if a not in g:
        raise CompositionError(f"{a!r} is not a vertex of {name}")
    if g.has_loop(a):
        raise CompositionError(f"shared vertex {a!r} is looped in {name}")
    if g.alpha[a] != ONE or g.beta[a] != ONE:
        raise CompositionError(f"shared vertex {a!r} is weighted in {name}")


def compose(h: WeightedGraph, k: WeightedGraph, a: str) -> WeightedGraph:
    """``H * K``: drop ``a`` and join every H-neighbour of ``a`` to every K-neighbour."""
    shared = set(h.vertices) & set(k.vertices)
    if shared != {a}:
        raise CompositionError(f"H and K must share exactly {{{a}}}, they share {sorted(shared)}")
    _check_marker(h, a, "H")
    _check_marker(k, a, "K")
    nh = h.neighbors(a)
    nk = k.neighbors(a)
    g = disjoint_union(h.delete_vertex(a), k.delete_vertex(a))
    for u in nh:
        for w in nk:
            g = g.toggle_edge(u, w)
    return g


def copy_label(k: WeightedGraph, a: str) -> str:
    label = a + COPY_MARK
    while label in k:
        label += COPY_MARK
    return label


# -- subset types ------------------------------------------------------------------


def _types_for_mask(h: WeightedGraph, h_looped: WeightedGraph, h_lc: WeightedGraph, abit: int, mask: int):
    r_m = h.rank_mask(mask)
    r0 = h.rank_mask(mask | abit)
    r1 = h_looped.rank_mask(mask | abit)
    if r0 == r_m and r1 == r_m + 1:
        by_border = 1
    elif r0 == r_m + 2 and r1 == r_m + 2:
        by_border = 2
    elif r1 == r_m and r0 == r_m + 1:
        by_border = 3
    else:
        raise TypeGuardError(f"subset fits no type: r(M)={r_m}, r0={r0}, r1={r1}")
    r_ma = h_lc.rank_mask(mask)
    by_lc = {0: 1, -1: 2, 1: 3}.get(r_m - r_ma)
    if by_lc != by_border:
        raise TypeGuardError(f"type mismatch: bordered gives {by_border}, r(M) vs r(M^a) gives {by_lc}")
    return by_border, r_m


def subset_type(h: WeightedGraph, a: str, subset) -> int:
    """Type 1, 2 or 3 of ``S`` with respect to the unlooped vertex ``a``."""
    subset = list(subset)
    if a in subset:
        raise CompositionError("subset must not contain the marker vertex")
    if h.has_loop(a):
        raise CompositionError(f"{a!r} must be unlooped")
    abit = 1 << h.index(a)
    t, _ = _types_for_mask(h, h.with_loop(a), h.local_complement(a), abit, h.subset_mask(subset))
    return t


def type_sums(h: WeightedGraph, a: str) -> Tuple[Poly, Poly, Poly]:
    """``(q1, q2, q3)``: subset contributions of ``H - a`` split by type."""
    parts, _ = _type_parts(h, a)
    return parts[1], parts[2], parts[3]


def _type_parts(h: WeightedGraph, a: str):
    """Per type, the summed contributions; also alpha(a) summed termwise."""
    if h.has_loop(a):
        raise CompositionError(f"{a!r} must be unlooped")
    ia = h.index(a)
    abit = 1 << ia
    h_looped = h.with_loop(a)
    h_lc = h.local_complement(a)
    others = [i for i in range(len(h)) if i != ia]
    alphas = [h.alpha[h.vertices[i]] for i in others]
    betas = [h.beta[h.vertices[i]] for i in others]
    buckets: Dict[Tuple[int, int, int], list] = {}

    def walk(j: int, mask: int, size: int, weight: Poly) -> None:
        if not weight:
            return
        if j == len(others):
            t, r = _types_for_mask(h, h_looped, h_lc, abit, mask)
            buckets.setdefault((t, r, size - r), []).append(weight)
            return
        walk(j + 1, mask, size, weight * betas[j])
        walk(j + 1, mask | (1 << others[j]), size + 1, weight * alphas[j])

    walk(0, 0, 0, ONE)
    sums = {1: [], 2: [], 3: []}
    alpha_terms = []
    for (t, r, nul), ws in buckets.items():
        w = poly_sum(ws)
        sums[t].append(w * XM1 ** r * YM1 ** nul)
        if t == 2:
            if nul < 1:
                raise TypeGuardError("type-2 subset with nullity 0")
            alpha_terms.append(w * XM1 ** r * YM1 ** (nul - 1))
    return {t: poly_sum(v) for t, v in sums.items()}, poly_sum(alpha_terms)


def composition_weights(h: WeightedGraph, a: str) -> CompositionWeights:
    """Weights for ``a`` (and its copy ``a_c``) that stand in for ``H - a``."""
    _check_marker(h, a, "H")
    parts, alpha = _type_parts(h, a)
    return CompositionWeights(alpha_a=alpha, beta_a=parts[1], beta_ac=parts[3])


def composed_parts(
    h: WeightedGraph, a: str, k: WeightedGraph, weights: CompositionWeights | None = None
) -> Tuple[WeightedGraph, WeightedGraph | None]:
    """``K'`` and ``(K^a)'``; the second is None when beta(a_c) is zero."""
    _check_marker(k, a, "K")
    w = weights or composition_weights(h, a)
    k1 = k.with_weights(a, w.alpha_a, w.beta_a)
    if not w.beta_ac:
        return k1, None
    ac = copy_label(k, a)
    k2 = k.local_complement(a).rename(a, ac).with_weights(ac, ZERO, w.beta_ac)
    return k1, k2


def q_composed(h: WeightedGraph, a: str, k: WeightedGraph, q=q_expand) -> Poly:
    """q(H * K) from ``K`` and the composition weights of ``(H, a)``.

    ``q`` evaluates the two re-weighted copies of ``K`` (default: subset expansion).
    """
    shared = set(h.vertices) & set(k.vertices)
    if shared != {a}:
        raise CompositionError(f"H and K must share exactly {{{a}}}, they share {sorted(shared)}")
    k1, k2 = composed_parts(h, a, k)
    total = q(k1)
    if k2 is not None:
        total = total + q(k2)
    return total


# -- cleared-denominator cross-checks ----------------------------------------------------


def type_sum_identities(h: WeightedGraph, a: str) -> Dict[str, bool]:
    """The four type-sum equations, each multiplied through by its denominator."""
    q1, q2, q3 = type_sums(h, a)
    h_minus = h.delete_vertex(a)
    q_h = q_expand(h)
    q_hl = q_expand(h.with_loop(a))
    q_hama = q_expand(h.local_complement(a).delete_vertex(a))
    sq = XM1 ** 2
    return {
        "sum": q_expand(h_minus) == q1 + q2 + q3,
        "H": YM1 * q_h == Y * YM1 * q1 + (YM1 + sq) * q2 + X * YM1 * q3,
        "H_loop": YM1 * q_hl == X * YM1 * q1 + (YM1 + sq) * q2 + Y * YM1 * q3,
        "H_lc": XM1 * YM1 * q_hama == XM1 * YM1 * q1 + sq * q2 + YM1 ** 2 * q3,
    }


def two_weight_formulas(h: WeightedGraph, a: str) -> Tuple[Poly, Poly]:
    """alpha(a), beta(a) for simple ``H`` by the division formulas, divided exactly."""
    if not h.is_simple():
        raise CompositionError("the two-weight formulas need a simple H")
    q_h = q_expand(h)
    q_m = q_expand(h.delete_vertex(a))
    den = XM1 ** 2 - YM1 ** 2
    alpha = exact_div(q_h - Y * q_m, den)
    beta = exact_div((XM1 ** 2 + YM1) * q_m - YM1 * q_h, den)
    return alpha, beta


def three_weight_cleared(h: WeightedGraph, a: str, w: CompositionWeights) -> Dict[str, bool]:
    """Three-weight formulas with denominators moved to the left-hand side."""
    q_m = q_expand(h.delete_vertex(a))
    q_h = q_expand(h)
    q_hl = q_expand(h.with_loop(a))
    c = XM1 ** 2 + YM1
    return {
        "alpha": ((X + Y) * YM1 - 2 * c) * w.alpha_a == (X + Y) * q_m - q_h - q_hl,
        "beta_diff": (Y - X) * (w.beta_a - w.beta_ac) == q_h - q_hl,
        "beta_sum": (2 * c - YM1 * (X + Y)) * (w.beta_a + w.beta_ac) == 2 * c * q_m - YM1 * (q_h + q_hl),
    }
