"""``interlace`` command line: compute, compose, stats, selftest.

Exit codes: 0 ok, 1 usage, 2 parse error, 3 semantic error, 4 invariant failure.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import List, Optional, Tuple

from .composition import CompositionError, TypeGuardError, compose, composition_weights, q_composed
from .expansion import ExpansionTooLarge, gamma, epsilon, q_expand, qn_expand, qr_expand
from .graph import GraphError, WeightedGraph
from .graphfile import GraphFileError, GraphSpec, read_graph_file
from .poly import Poly, canonical_string, substitute
from .recursion import FIRST, REDUCE, check_leaf_bound, q_recursive, tree_to_text
from .reduction import edgeless_q, reduce_fully
from .selftest import run_selftest
from .trees import OrderedRootedTree, q_tree

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_SEMANTIC, EXIT_INVARIANT = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class SemanticError(Exception):
    pass


class InvariantError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="interlace", description="Weighted interlace polynomials of looped graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="print the polynomial of a graph file")
    p.add_argument("file")
    p.add_argument("--poly", choices=("q", "qn", "qr"), default="q")
    p.add_argument("--method", choices=("expand", "recurse", "reduce", "tree", "auto"), default="auto")
    p.add_argument("--strategy", choices=("first", "tree", "reduce"), default="first")
    p.add_argument("--ternary", action="store_true", help="three-way branching on edges")
    p.add_argument("--record-tree", metavar="PATH", help="write the computation tree or reduction trace")
    p.add_argument("--verbose", action="store_true", help="report method and timing on stderr")

    p = sub.add_parser("compose", help="q of H*K by composition weights and by expansion")
    p.add_argument("file_h")
    p.add_argument("file_k")
    p.add_argument("--shared", required=True, metavar="ID")

    p = sub.add_parser("stats", help="leaf counts against the epsilon and gamma bounds")
    p.add_argument("file")

    p = sub.add_parser("selftest", help="run the invariant suites")
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _load(path: str) -> GraphSpec:
    try:
        return read_graph_file(path)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")


def _tree(spec: GraphSpec) -> OrderedRootedTree:
    if spec.root is None:
        raise SemanticError("the tree method and strategy need a `root` line")
    return OrderedRootedTree.from_graph(spec.graph, spec.root, spec.order)


def _hide_in_weights(g: WeightedGraph, name: str) -> Tuple[WeightedGraph, str]:
    """Rename variable ``name`` inside the weights so that specialising it leaves weights alone."""
    used = set()
    for v in g.vertices:
        used |= g.alpha[v].variables() | g.beta[v].variables()
    if name not in used:
        return g, name
    fresh = name + "_w"
    while fresh in used:
        fresh += "_"
    swap = {name: Poly.var(fresh)}
    for v in g.vertices:
        g = g.with_weights(v, substitute(g.alpha[v], swap), substitute(g.beta[v], swap))
    return g, fresh


def compute(
    spec: GraphSpec,
    poly: str = "q",
    method: str = "auto",
    strategy: str = "first",
    ternary: bool = False,
) -> Tuple[Poly, Optional[str]]:
    """The requested polynomial and, where the method records one, a text trace."""
    record = None
    if method == "expand":
        q = {"q": q_expand, "qn": qn_expand, "qr": qr_expand}[poly](spec.graph)
        return q, None
    var = {"q": None, "qn": "x", "qr": "y"}[poly]
    g, hidden = spec.graph, None
    if var is not None:
        g, hidden = _hide_in_weights(g, var)
        spec = GraphSpec(g, spec.root, spec.order)
    if method == "tree":
        q = q_tree(_tree(spec))
    elif method == "recurse":
        strat = _tree(spec).strategy() if strategy == "tree" else (REDUCE if strategy == "reduce" else FIRST)
        q, node = q_recursive(g, strat, ternary=ternary)
        record = tree_to_text(node)
    else:
        trace, core = reduce_fully(g)
        record = trace.to_text()
        if not core.has_edges():
            q = edgeless_q(core)
        else:
            strat = REDUCE if method == "auto" else FIRST
            q, node = q_recursive(core, strat, ternary=ternary)
            record += "core recursion:\n" + tree_to_text(node)
    if var is not None:
        q = substitute(q, {var: 2})
        if hidden != var:
            q = substitute(q, {hidden: Poly.var(var)})
    return q, record


def cmd_compute(args) -> int:
    spec = _load(args.file)
    start = time.perf_counter()
    q, record = compute(spec, args.poly, args.method, args.strategy, args.ternary)
    elapsed = time.perf_counter() - start
    if args.record_tree:
        with open(args.record_tree, "w", encoding="utf-8") as fh:
            fh.write(record if record is not None else f"# method {args.method} records no tree\n")
    print(canonical_string(q))
    if args.verbose:
        print(f"method={args.method} poly={args.poly} time={elapsed:.4f}s", file=sys.stderr)
    return EXIT_OK


def cmd_compose(args) -> int:
    h = _load(args.file_h).graph
    k = _load(args.file_k).graph
    a = args.shared
    try:
        w = composition_weights(h, a)
        via_weights = q_composed(h, a, k)
        via_expand = q_expand(compose(h, k, a))
    except CompositionError as e:
        raise SemanticError(str(e))
    print(f"alpha({a}) = {canonical_string(w.alpha_a)}")
    print(f"beta({a}) = {canonical_string(w.beta_a)}")
    print(f"beta({a}_c) = {canonical_string(w.beta_ac)}")
    print(f"q via weights = {canonical_string(via_weights)}")
    print(f"q via expansion = {canonical_string(via_expand)}")
    if via_weights != via_expand:
        raise InvariantError("composition weights and expansion disagree")
    return EXIT_OK


def cmd_stats(args) -> int:
    spec = _load(args.file)
    g = spec.graph
    strategies: List = [FIRST, REDUCE]
    if spec.root is not None:
        strategies.append(_tree(spec).strategy())
    report = check_leaf_bound(g, strategies)
    print(f"gamma = {gamma(g)}")
    print(f"epsilon = {epsilon(g)}")
    print(f"simple = {'yes' if g.is_simple() else 'no'}")
    for run in report["runs"]:
        mode = "ternary" if run["ternary"] else "binary"
        print(
            f"{run['strategy']}/{mode}: leaves={run['leaves']} active={run['active_nodes']} "
            f"connected_leaves={run['connected_leaves']} bound={'ok' if run['satisfied'] else 'VIOLATED'}"
        )
    print(f"bound satisfied = {'yes' if report['satisfied'] else 'no'}")
    if not report["satisfied"]:
        raise InvariantError("leaf-count bound violated")
    return EXIT_OK


def cmd_selftest(args) -> int:
    if args.max_n < 0 or args.samples < 0:
        raise UsageError("--max-n and --samples must be non-negative")
    report = run_selftest(args.max_n, args.samples, args.seed)
    for line in report.summary_lines():
        print(line)
    for r in report.results:
        if r.failure is not None:
            print(f"suite {r.name} failed: {r.failure}", file=sys.stderr)
            print("reproducer:", file=sys.stderr)
            print(r.reproducer, file=sys.stderr, end="")
    return EXIT_OK if report.ok else EXIT_INVARIANT


COMMANDS = {"compute": cmd_compute, "compose": cmd_compose, "stats": cmd_stats, "selftest": cmd_selftest}


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(f"interlace: {e}", file=sys.stderr)
        return EXIT_USAGE
    except GraphFileError as e:
        print(str(e), file=sys.stderr)
        return EXIT_PARSE if e.kind == "parse" else EXIT_SEMANTIC
    except InvariantError as e:
        print(f"interlace: invariant failure: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except TypeGuardError as e:
        print(f"interlace: invariant failure: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except (SemanticError, GraphError, ExpansionTooLarge) as e:
        print(f"interlace: {e}", file=sys.stderr)
        return EXIT_SEMANTIC


if __name__ == "__main__":
    sys.exit(main())
