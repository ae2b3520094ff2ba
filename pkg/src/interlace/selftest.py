"""Invariant suites run by ``interlace selftest``.

Each suite checks one family of identities on an exhaustive sweep of small
graphs followed by seeded random instances.  The first failing instance of a
suite is shrunk by deleting vertices while it still fails, and reported as
graph-file text.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, List, Optional, Tuple

from . import composition as comp
from .expansion import (
    epsilon,
    has_nonempty_simple_component,
    indeterminate_weighted,
    q_expand,
    q_from_qn_cleared,
    qn_expand,
    qr_expand,
    simplicity_test,
)
from .generators import all_graphs, random_dh_graph, random_graph, random_small_poly, random_tree
from .graph import WeightedGraph, gf2_rank, gf2_rank_basis
from .graphfile import write_graph_file
from .poly import ONE, X, Poly, canonical_string, exact_div, parse_poly, substitute
from .recursion import FIRST, REDUCE, check_arity, check_leaf_bound, pivot_reweight_identity_check, q_recursive, reweight_linear
from .reduction import edgeless_q, find_reduction, reduce_fully
from .trees import OrderedRootedTree, q_tree, q_tree_unweighted, verify_tree_strategy_bijection

EXHAUSTIVE_N = 4
LEAF_BOUND_MAX_N = 7
COMPOSE_H_MAX = 6
COMPOSE_K_MAX = 5
TREE_MAX_N = 10


class CheckFailed(AssertionError):
    pass


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise CheckFailed(what)


@dataclass
class SuiteResult:
    name: str
    instances: int = 0
    failure: Optional[str] = None
    reproducer: Optional[str] = None


@dataclass
class SelftestReport:
    results: List[SuiteResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.failure is None for r in self.results)

    def summary_lines(self) -> List[str]:
        out = []
        for r in self.results:
            status = "ok" if r.failure is None else "FAIL"
            out.append(f"{r.name:<14} {r.instances:>6} instances  {status}")
        return out


# -- graph checks ----------------------------------------------------------------------


def check_rank(g: WeightedGraph) -> None:
    n = len(g)
    for mask in range(1 << n) if n <= 6 else (random.Random(n).getrandbits(n) for _ in range(64)):
        rows = [(g.rows[i] & mask) | (g.loop_mask & 1 << i) for i in range(n) if mask >> i & 1]
        _require(g.rank_mask(mask) == gf2_rank_basis(rows), f"rank of subset mask {mask}")
    full = [g.rows[i] | (g.loop_mask & 1 << i) for i in range(n)]
    _require(gf2_rank(full) == gf2_rank_basis(full), "full rank")


def check_operations(g: WeightedGraph) -> None:
    for a in g.vertices:
        _require(g.local_complement(a).local_complement(a) == g, f"local complement at {a} is not an involution")
    for a, b in g.edges():
        p = g.pivot(a, b)
        _require(p.pivot(a, b) == g, f"pivot on {a}{b} is not an involution")
        _require(p == g.pivot(b, a), f"pivot on {a}{b} is not symmetric")
        _require(p.loop_mask == g.loop_mask, f"pivot on {a}{b} changed loops")
    _require(g.complement().complement() == g, "complement is not an involution")


def check_expansion(g: WeightedGraph) -> None:
    q = q_expand(g)
    # weights may mention x and y, so specialise through indeterminate weights
    tilde, an, bn = indeterminate_weighted(g)
    qt = q_expand(tilde)
    back = {an[v]: g.alpha[v] for v in g.vertices}
    back.update({bn[v]: g.beta[v] for v in g.vertices})
    _require(qn_expand(g) == substitute(substitute(qt, {"x": 2}), back), "q_N is not q at x=2")
    _require(qr_expand(g) == substitute(substitute(qt, {"y": 2}), back), "q_R is not q at y=2")
    _require(q_from_qn_cleared(g) == (X - 1) ** len(g) * q, "q from q_N of the indeterminate graph")
    u = g.unweighted()
    eps = epsilon(u)
    _require((eps > 0) == (not has_nonempty_simple_component(u)), "epsilon > 0 iff no simple component")
    if len(u) and u.is_connected() and u.loop_mask:
        _require(eps > 1, "connected looped graph has epsilon > 1")
    verdict = simplicity_test(u)
    _require(verdict["agree"], "simplicity verdicts disagree")


def check_identities(g: WeightedGraph) -> None:
    q = q_expand(g)
    for a in g.vertices:
        if not g.has_loop(a):
            lhs = q - g.beta[a] * q_expand(g.delete_vertex(a))
            ga = g.local_complement(a)
            rhs = q_expand(ga) - g.beta[a] * q_expand(ga.delete_vertex(a))
            _require(lhs == rhs, f"local complement identity at {a}")
        r1, r2 = Poly.var("r1"), Poly.var("r2")
        _require(
            q_expand(reweight_linear(g, a, r1, r2)) == r1 * q + r2 * q_expand(g.delete_vertex(a)),
            f"linear reweighting at {a}",
        )
        s, t = Poly.var("s"), Poly.var("t")
        g1 = g.with_weights(a, s, t)
        g2 = g.with_weights(a, g.alpha[a] - s, g.beta[a] - t)
        _require(q_expand(g1) + q_expand(g2) == q, f"weight additivity at {a}")
    for a, b in g.edges():
        if g.has_loop(a) or g.has_loop(b):
            continue
        piv = g.pivot(a, b)
        # the coefficient is the weight of the second deleted vertex
        lhs = q_expand(g.delete_vertex(a)) - g.beta[b] * q_expand(g.delete_vertex(a, b))
        rhs = q_expand(piv.delete_vertex(a)) - g.beta[b] * q_expand(piv.delete_vertex(a, b))
        _require(lhs == rhs, f"pivot identity on {a}{b}")
        _require(pivot_reweight_identity_check(g, a, b), f"pivot reweighting on {a}{b}")
    comps = g.components()
    if len(comps) > 1:
        first = g.induced_subgraph(comps[0])
        rest = g.delete_vertex(*comps[0])
        _require(q_expand(first) * q_expand(rest) == q, "q is multiplicative over components")


def check_recursion(g: WeightedGraph) -> None:
    q = q_expand(g)
    for strat in (FIRST, REDUCE):
        for ternary in (False, True):
            for counting in (False, True):
                got, tree = q_recursive(g, strat, ternary=ternary, leaf_bound_mode=counting)
                tag = f"{strat}/{'ternary' if ternary else 'binary'}{'/leaf-bound' if counting else ''}"
                _require(got == q, f"recursion {tag} disagrees with expansion")
                _require(tree.evaluate() == q, f"recorded tree {tag} evaluates wrongly")
                _require(check_arity(tree), f"recorded tree {tag} has wrong arity")


def check_leaf_bound_suite(g: WeightedGraph) -> None:
    if len(g) > LEAF_BOUND_MAX_N:
        return
    report = check_leaf_bound(g.unweighted())
    _require(report["satisfied"], f"leaf bound fails: {report}")


def check_reduction(g: WeightedGraph) -> None:
    q = q_expand(g)
    current = g
    while True:
        step = find_reduction(current)
        if step is None:
            break
        current = step.apply(current)
        _require(q_expand(current) == q, f"{step.to_text()} changes q")
    trace, terminal = reduce_fully(g)
    core = edgeless_q(terminal) if not terminal.has_edges() else q_recursive(terminal, FIRST, record=False)[0]
    _require(core == q, "reduce plus recursion on the core")


GRAPH_SUITES: List[Tuple[str, Callable[[WeightedGraph], None]]] = [
    ("rank", check_rank),
    ("operations", check_operations),
    ("expansion", check_expansion),
    ("identities", check_identities),
    ("recursion", check_recursion),
    ("leaf-bound", check_leaf_bound_suite),
    ("reduction", check_reduction),
]


# -- instance streams ------------------------------------------------------------------


def exhaustive_graphs(max_n: int) -> Iterator[WeightedGraph]:
    for n in range(0, min(EXHAUSTIVE_N, max_n) + 1):
        yield from all_graphs(n)


def random_graphs(rng: random.Random, max_n: int, samples: int) -> List[WeightedGraph]:
    if max_n < 1:
        return []
    sizes = sorted(rng.randint(1, max_n) for _ in range(samples))
    return [random_graph(rng, n) for n in sizes]


def _fails(check, g) -> Optional[str]:
    try:
        check(g)
    except CheckFailed as e:
        return str(e)
    except Exception as e:  # any crash is a failure too
        return f"{type(e).__name__}: {e}"
    return None


def shrink(check, g: WeightedGraph) -> Tuple[WeightedGraph, str]:
    """Delete vertices one at a time while the check still fails."""
    msg = _fails(check, g)
    changed = True
    while changed:
        changed = False
        for v in list(g.vertices):
            smaller = g.delete_vertex(v)
            m = _fails(check, smaller)
            if m is not None:
                g, msg, changed = smaller, m, True
                break
    return g, msg


def _run_graph_suite(name, check, graphs: Iterable[WeightedGraph]) -> SuiteResult:
    res = SuiteResult(name)
    for g in graphs:
        res.instances += 1
        if _fails(check, g) is not None:
            small, msg = shrink(check, g)
            res.failure = msg
            res.reproducer = write_graph_file(small)
            break
    return res


# -- non-graph suites ------------------------------------------------------------------


def _run_poly_suite(rng: random.Random, samples: int) -> SuiteResult:
    res = SuiteResult("poly")
    for _ in range(max(samples, 1)):
        res.instances += 1
        p, q, r = (random_small_poly(rng) for _ in range(3))
        try:
            _require(p + q == q + p and p * q == q * p, "commutativity")
            _require((p + q) + r == p + (q + r) and (p * q) * r == p * (q * r), "associativity")
            _require(p * (q + r) == p * q + p * r, "distributivity")
            _require(p - p == 0 and p * ONE == p, "identities")
            _require(parse_poly(canonical_string(p)) == p, "canonical text round trip")
            sub = {"x": q, "y": r}
            _require(substitute(p * q, sub) == substitute(p, sub) * substitute(q, sub), "substitution")
            if q:
                _require(exact_div(p * q, q) == p, "exact division")
        except CheckFailed as e:
            res.failure = str(e)
            res.reproducer = f"p = {canonical_string(p)}\nq = {canonical_string(q)}\nr = {canonical_string(r)}\n"
            break
    return res


def _random_composition_pair(rng: random.Random, max_n: int):
    nh = rng.randint(2, max(2, min(COMPOSE_H_MAX, max_n)))
    nk = rng.randint(1, max(1, min(COMPOSE_K_MAX, max_n)))
    h = random_graph(rng, nh, prefix="h").rename("h0", "a").with_loop("a", False).with_weights("a", 1, 1)
    k = random_graph(rng, nk, prefix="k").rename("k0", "a").with_loop("a", False).with_weights("a", 1, 1)
    return h, k


def check_composition(h: WeightedGraph, k: WeightedGraph) -> None:
    _require(comp.q_composed(h, "a", k) == q_expand(comp.compose(h, k, "a")), "composed q disagrees")
    _require(all(comp.type_sum_identities(h, "a").values()), "type-sum equations")
    w = comp.composition_weights(h, "a")
    if h.delete_vertex("a").is_simple():
        _require(not w.beta_ac, "simple H needs no copy weight")
        _require(comp.two_weight_formulas(h, "a") == (w.alpha_a, w.beta_a), "two-weight formulas")
    else:
        _require(all(comp.three_weight_cleared(h, "a", w).values()), "three-weight formulas")


def _run_composition_suite(rng: random.Random, max_n: int, samples: int) -> SuiteResult:
    res = SuiteResult("composition")
    if max_n < 2:
        return res
    pairs = []
    for n in range(2, min(3, max_n) + 1):
        for h in all_graphs(n, ["a", "h1", "h2"]):
            if not h.has_loop("a"):
                pairs.append((h, WeightedGraph.build(["a", "k1"], [("a", "k1")], ["k1"])))
    pairs += [_random_composition_pair(rng, max_n) for _ in range(samples // 2)]
    for h, k in pairs:
        res.instances += 1
        msg = _fails(lambda hh: check_composition(hh, k), h)
        if msg is not None:
            res.failure = msg
            res.reproducer = "# H\n" + write_graph_file(h) + "# K\n" + write_graph_file(k)
            break
    return res


def check_tree(tree: OrderedRootedTree) -> None:
    q = q_expand(tree.graph)
    _require(q_tree(tree) == q, "cover sum disagrees with expansion")
    _require(q_tree_unweighted(tree.unweighted()) == q_expand(tree.graph.unweighted()), "es-number formula")
    _require(verify_tree_strategy_bijection(tree), "strategy leaves are not the es-covers")


def _random_ordered_tree(rng: random.Random, n: int) -> OrderedRootedTree:
    g = random_tree(rng, n, weighted=True)
    root = rng.choice(g.vertices)
    base = OrderedRootedTree.from_graph(g, root)
    order = {p: rng.sample(list(kids), len(kids)) for p, kids in base.children.items()}
    return OrderedRootedTree.from_graph(g, root, order)


def _run_tree_suite(rng: random.Random, max_n: int, samples: int) -> SuiteResult:
    res = SuiteResult("trees")
    top = min(TREE_MAX_N, max_n)
    if top < 1:
        return res
    for _ in range(samples):
        tree = _random_ordered_tree(rng, rng.randint(1, top))
        res.instances += 1
        msg = _fails(check_tree, tree)
        if msg is not None:
            res.failure = msg
            order = {p: list(k) for p, k in tree.children.items()}
            res.reproducer = write_graph_file(tree.graph, tree.root, order)
            break
    return res


def _run_dh_suite(rng: random.Random, max_n: int, samples: int) -> SuiteResult:
    def check(g):
        _, terminal = reduce_fully(g)
        _require(not terminal.has_edges(), "pendant/twin graph did not reduce to edgeless")
        if len(g) <= 12:
            _require(edgeless_q(terminal) == q_expand(g), "closed form after reduction")

    graphs = [random_dh_graph(rng, rng.randint(1, max_n)) for _ in range(samples)] if max_n >= 1 else []
    return _run_graph_suite("pendant-twin", check, graphs)


def _run_empty() -> SuiteResult:
    res = SuiteResult("empty-graph", instances=1)
    g = WeightedGraph.build([])
    if q_expand(g) != ONE or q_recursive(g)[0] != ONE:
        res.failure = "q of the empty graph is not 1"
        res.reproducer = write_graph_file(g)
    return res


def run_selftest(max_n: int = 7, samples: int = 200, seed: int = 0, log: Callable[[str], None] = lambda s: None) -> SelftestReport:
    report = SelftestReport()
    rng = random.Random(seed)
    report.results.append(_run_empty())
    log(report.results[-1].name)
    report.results.append(_run_poly_suite(rng, samples))
    log(report.results[-1].name)
    randoms = random_graphs(rng, max_n, samples)
    for name, check in GRAPH_SUITES:
        graphs = list(exhaustive_graphs(max_n)) + randoms
        report.results.append(_run_graph_suite(name, check, graphs))
        log(name)
    report.results.append(_run_composition_suite(rng, max_n, samples))
    log("composition")
    report.results.append(_run_tree_suite(rng, max_n, samples))
    log("trees")
    report.results.append(_run_dh_suite(rng, max_n, samples // 4))
    log("pendant-twin")
    return report
