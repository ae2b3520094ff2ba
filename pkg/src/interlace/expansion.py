"""Interlace polynomials by direct summation over vertex subsets.

This is the ground truth every other method is checked against.  The subset
sum is organised as a depth-first walk over include/exclude choices so that the
weight product of each subset is built incrementally; contributions are
collected per ``(rank, nullity)`` bucket and multiplied by
``(x-1)^rank (y-1)^nullity`` only once per bucket.
"""

from __future__ import annotations

from typing import Dict, Tuple

from .graph import WeightedGraph, join, single
from .poly import ONE, X, Y, Poly, exact_div, poly_sum, substitute

MAX_EXPANSION_VERTICES = 20

XM1 = X - 1
YM1 = Y - 1


class ExpansionTooLarge(ValueError):
    pass


def subset_buckets(g: WeightedGraph) -> Dict[Tuple[int, int], Poly]:
    """Map ``(rank, nullity)`` to the summed weight products of subsets with that profile."""
    n = len(g.vertices)
    if n > MAX_EXPANSION_VERTICES:
        raise ExpansionTooLarge(f"subset expansion capped at {MAX_EXPANSION_VERTICES} vertices, got {n}")
    alphas = [g.alpha[v] for v in g.vertices]
    betas = [g.beta[v] for v in g.vertices]
    buckets: Dict[Tuple[int, int], list] = {}

    def walk(i: int, mask: int, size: int, weight: Poly) -> None:
        if not weight:
            return
        if i == n:
            r = g.rank_mask(mask)
            buckets.setdefault((r, size - r), []).append(weight)
            return
        walk(i + 1, mask, size, weight * betas[i])
        walk(i + 1, mask | (1 << i), size + 1, weight * alphas[i])

    walk(0, 0, 0, ONE)
    return {key: poly_sum(ws) for key, ws in buckets.items()}


def _combine(buckets: Dict[Tuple[int, int], Poly], use_rank: bool, use_nullity: bool) -> Poly:
    parts = []
    for (r, nul), w in sorted(buckets.items()):
        factor = ONE
        if use_rank and r:
            factor = factor * XM1 ** r
        if use_nullity and nul:
            factor = factor * YM1 ** nul
        parts.append(w * factor)
    return poly_sum(parts)


def q_expand(g: WeightedGraph) -> Poly:
    """Weighted interlace polynomial q(G); the empty graph gives 1."""
    return _combine(subset_buckets(g), True, True)


def qn_expand(g: WeightedGraph) -> Poly:
    """Weighted vertex-nullity polynomial: only the nullity factor."""
    return _combine(subset_buckets(g), False, True)


def qr_expand(g: WeightedGraph) -> Poly:
    """Weighted vertex-rank polynomial: only the rank factor."""
    return _combine(subset_buckets(g), True, False)


def gamma(g: WeightedGraph) -> int:
    """Coefficient of ``y`` in the unweighted vertex-nullity polynomial."""
    return qn_expand(g.unweighted()).coefficient((("y", 1),))


def epsilon(g: WeightedGraph) -> int:
    """Unweighted vertex-nullity polynomial evaluated at ``y = 0``."""
    return qn_expand(g.unweighted()).coefficient(())


def has_nonempty_simple_component(g: WeightedGraph) -> bool:
    return any(not any(g.has_loop(v) for v in comp) for comp in g.components())


def indeterminate_names(g: WeightedGraph) -> Tuple[Dict[str, str], Dict[str, str]]:
    """Fresh weight indeterminate names per vertex, one alpha and one beta each."""
    taken = set()
    for v in g.vertices:
        taken |= g.alpha[v].variables() | g.beta[v].variables()
    prefix = "w"
    while any(name.startswith(prefix + "a") or name.startswith(prefix + "b") for name in taken):
        prefix += "w"
    alpha_names = {v: f"{prefix}a{i}" for i, v in enumerate(g.vertices)}
    beta_names = {v: f"{prefix}b{i}" for i, v in enumerate(g.vertices)}
    return alpha_names, beta_names


def indeterminate_weighted(g: WeightedGraph) -> Tuple[WeightedGraph, Dict[str, str], Dict[str, str]]:
    """Re-weight every vertex by its own pair of indeterminates."""
    alpha_names, beta_names = indeterminate_names(g)
    out = g
    for v in g.vertices:
        out = out.with_weights(v, Poly.var(alpha_names[v]), Poly.var(beta_names[v]))
    return out, alpha_names, beta_names


def q_from_qn_cleared(g: WeightedGraph) -> Poly:
    """``(x-1)^n q(G)`` computed from the vertex-nullity polynomial of the indeterminate-weighted graph.

    The substitution alpha_i -> (x-1) alpha(v_i), beta_i -> beta(v_i),
    y -> 1 + (y-1)/(x-1) is applied after multiplying through by ``(x-1)^n``:
    a ``y^k`` term becomes ``(x+y-2)^k (x-1)^(n-k)``.
    """
    n = len(g.vertices)
    tilde, alpha_names, beta_names = indeterminate_weighted(g)
    qn = qn_expand(tilde)
    by_y: Dict[int, Dict] = {}
    for m, c in qn.items():
        exps = dict(m)
        k = exps.pop("y", 0)
        by_y.setdefault(k, {})[tuple(sorted(exps.items()))] = c
    bindings = {}
    for v in g.vertices:
        bindings[alpha_names[v]] = XM1 * g.alpha[v]
        bindings[beta_names[v]] = g.beta[v]
    numerator = X + Y - 2
    parts = []
    for k, terms in by_y.items():
        coeff = substitute(Poly(terms), bindings)
        parts.append(coeff * numerator ** k * XM1 ** (n - k))
    return poly_sum(parts)


def simplicity_test(g: WeightedGraph, extra: str = "_e") -> dict:
    """Three equivalent verdicts on whether an unweighted graph is simple.

    ``G + E_1`` is the join of G with one new unlooped vertex.  Returns
    ``is_simple`` (no loops), ``divisible`` (``y`` divides q_N(G + E_1)),
    ``equality`` (q_N(G + E_1) == y q_N(G^c)), and both
    polynomials.  ``agree`` is true when the three verdicts coincide.
    """
    label = extra
    while label in g:
        label += "_"
    g_u = g.unweighted()
    plus = join(g_u, single(label))
    lhs = qn_expand(plus)
    rhs = Y * qn_expand(g_u.complement())
    try:
        exact_div(lhs, Y)
        divisible = True
    except ValueError:
        divisible = False
    is_simple = g.is_simple()
    equality = lhs == rhs
    return {
        "is_simple": is_simple,
        "divisible": divisible,
        "equality": equality,
        "agree": is_simple == divisible == equality,
        "witness": (lhs, rhs),
    }
