"""Line-oriented graph files.

::

    # a path with a weighted middle vertex
    vertex a
    vertex b loop alpha="x-1" beta="2"
    vertex c
    edge a b
    edge b c
    root a
    order a b

Vertices must be declared before they are used.  ``order`` lists children of a
parent for ordered rooted trees.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .graph import WeightedGraph
from .poly import ONE, Poly, PolyParseError, canonical_string, parse_poly

_TOKEN = re.compile(r'\s*(?:([A-Za-z_]+)="([^"]*)"|([^\s"=#]+)|(#.*)|(\S))')


class GraphFileError(ValueError):
    """``kind`` is ``"parse"`` or ``"semantic"``; line and column are 1-based."""

    def __init__(self, message: str, line: int, col: int, kind: str = "parse", path: str = "<input>"):
        super().__init__(f"{path}:{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col
        self.kind = kind
        self.path = path


@dataclass
class GraphSpec:
    graph: WeightedGraph
    root: Optional[str] = None
    order: Dict[str, List[str]] = field(default_factory=dict)


def _tokens(text: str, lineno: int, path: str) -> List[Tuple[str, str, str, int]]:
    """``(kind, key, value, col)``; kind is ``word`` or ``kv``."""
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            out.append(("kv", m.group(1), m.group(2), m.start(2) + 1))
        elif m.group(3) is not None:
            out.append(("word", m.group(3), "", m.start(3) + 1))
        elif m.group(4) is not None:
            break
        elif m.group(5) is not None:
            ch = m.group(5)
            col = m.start(5) + 1
            if ch == "=" and text[m.end(5):m.end(5) + 1] == '"':
                ch, col = '"', col + 1
            what = "unterminated quote" if ch == '"' else f"unexpected {ch!r}"
            raise GraphFileError(what, lineno, col, "parse", path)
        pos = m.end()
    return out


def parse_graph_file(text: str, path: str = "<input>") -> GraphSpec:
    vertices: List[str] = []
    loops: List[str] = []
    alpha: Dict[str, Poly] = {}
    beta: Dict[str, Poly] = {}
    edges: List[Tuple[str, str]] = []
    seen_edges = set()
    root = None
    order: Dict[str, List[str]] = {}

    def fail(msg, lineno, col, kind="parse"):
        raise GraphFileError(msg, lineno, col, kind, path)

    def need(label, lineno, col):
        if label not in alpha:
            fail(f"unknown vertex {label!r}", lineno, col, "semantic")

    for lineno, line in enumerate(text.splitlines(), 1):
        toks = _tokens(line, lineno, path)
        if not toks:
            continue
        kind, word, _, col = toks[0]
        if kind != "word":
            fail("expected a directive", lineno, col)
        args = toks[1:]
        if word == "vertex":
            if not args or args[0][0] != "word":
                fail("vertex needs an id", lineno, col)
            label = args[0][1]
            if label in alpha:
                fail(f"duplicate vertex {label!r}", lineno, args[0][3], "semantic")
            a = b = ONE
            looped = False
            for k, key, value, c in args[1:]:
                if k == "word":
                    if key != "loop":
                        fail(f"unexpected {key!r}", lineno, c)
                    looped = True
                elif key in ("alpha", "beta"):
                    try:
                        p = parse_poly(value)
                    except PolyParseError as e:
                        fail(f"bad {key} expression: {e.message}", lineno, c + e.pos)
                    if key == "alpha":
                        a = p
                    else:
                        b = p
                else:
                    fail(f"unknown attribute {key!r}", lineno, c - len(key) - 2)
            vertices.append(label)
            alpha[label] = a
            beta[label] = b
            if looped:
                loops.append(label)
        elif word == "edge":
            if len(args) != 2 or any(t[0] != "word" for t in args):
                fail("edge needs two ids", lineno, col)
            (_, u, _, cu), (_, v, _, cv) = args
            need(u, lineno, cu)
            need(v, lineno, cv)
            if u == v:
                fail(f"self-edge on {u!r}; use the loop flag", lineno, cv, "semantic")
            key = frozenset((u, v))
            if key in seen_edges:
                fail(f"duplicate edge {u} {v}", lineno, cu, "semantic")
            seen_edges.add(key)
            edges.append((u, v))
        elif word == "root":
            if len(args) != 1 or args[0][0] != "word":
                fail("root needs one id", lineno, col)
            need(args[0][1], lineno, args[0][3])
            if root is not None:
                fail("root given twice", lineno, col, "semantic")
            root = args[0][1]
        elif word == "order":
            if len(args) < 1 or any(t[0] != "word" for t in args):
                fail("order needs a parent and its children", lineno, col)
            for t in args:
                need(t[1], lineno, t[3])
            order.setdefault(args[0][1], []).extend(t[1] for t in args[1:])
        else:
            fail(f"unknown directive {word!r}", lineno, col)

    graph = WeightedGraph.build(vertices, edges, loops, alpha, beta)
    return GraphSpec(graph, root, order)


def read_graph_file(path: str) -> GraphSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_graph_file(fh.read(), path)


def write_graph_file(g: WeightedGraph, root: Optional[str] = None, order: Optional[Dict[str, List[str]]] = None) -> str:
    lines = []
    for v in g.vertices:
        parts = ["vertex", v]
        if g.has_loop(v):
            parts.append("loop")
        if g.alpha[v] != ONE:
            parts.append(f'alpha="{canonical_string(g.alpha[v])}"')
        if g.beta[v] != ONE:
            parts.append(f'beta="{canonical_string(g.beta[v])}"')
        lines.append(" ".join(parts))
    for u, v in g.edges():
        lines.append(f"edge {u} {v}")
    if root is not None:
        lines.append(f"root {root}")
    for p, kids in (order or {}).items():
        if kids:
            lines.append(" ".join(["order", p, *kids]))
    return "\n".join(lines) + "\n"
