"""Weighted interlace polynomials of graphs with loops.

The main entry points are :func:`q_expand` (subset expansion),
:func:`q_recursive` (local complement and pivot recursion), :func:`reduce_fully`
(pendant and twin reductions), :func:`q_composed` (composition weights) and
:func:`q_tree` (earlier-sibling covers of ordered trees).
"""

from .composition import CompositionWeights, compose, composition_weights, q_composed, subset_type, type_sums
from .expansion import epsilon, gamma, q_expand, qn_expand, qr_expand, simplicity_test
from .graph import GraphError, WeightedGraph, complement, disjoint_union, join, local_complement, pivot
from .graphfile import GraphFileError, parse_graph_file, read_graph_file, write_graph_file
from .poly import ONE, X, Y, ZERO, Poly, PolyError, PolyParseError, canonical_string, exact_div, parse_poly, substitute
from .recursion import NodeKind, TreeStrategy, check_leaf_bound, q_recursive, tree_stats
from .reduction import find_reduction, reduce_fully
from .trees import OrderedRootedTree, es_covers, es_numbers, q_tree, q_tree_unweighted

__all__ = [
    "CompositionWeights", "compose", "composition_weights", "q_composed", "subset_type", "type_sums",
    "epsilon", "gamma", "q_expand", "qn_expand", "qr_expand", "simplicity_test",
    "GraphError", "WeightedGraph", "complement", "disjoint_union", "join", "local_complement", "pivot",
    "GraphFileError", "parse_graph_file", "read_graph_file", "write_graph_file",
    "ONE", "X", "Y", "ZERO", "Poly", "PolyError", "PolyParseError", "canonical_string", "exact_div",
    "parse_poly", "substitute",
    "NodeKind", "TreeStrategy", "check_leaf_bound", "q_recursive", "tree_stats",
    "find_reduction", "reduce_fully",
    "OrderedRootedTree", "es_covers", "es_numbers", "q_tree", "q_tree_unweighted",
]
