import random

import pytest

from interlace.cli import main
from interlace.generators import random_graph, random_tree
from interlace.graphfile import write_graph_file

K2 = "vertex a\nvertex b\nedge a b\n"
TREE = "vertex r\nvertex a\nvertex b\nvertex c\nedge r a\nedge a b\nedge a c\nroot r\norder a c b\n"
METHODS = ["expand", "recurse", "reduce", "auto"]


@pytest.fixture
def write(tmp_path):
    def _write(text, name="g.txt"):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return str(p)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_k2_expand(capsys, write):
    code, out, _ = run(capsys, "compute", write(K2), "--method", "expand")
    assert code == 0 and out == "-2*x + 2*y + x^2\n"


def test_edgeless_vertex_nullity(capsys, write):
    code, out, _ = run(capsys, "compute", write("vertex a\nvertex b\nvertex c\n"), "--poly", "qn")
    assert code == 0 and out == "y^3\n"


@pytest.mark.parametrize("poly", ["q", "qn", "qr"])
def test_methods_agree_byte_for_byte(capsys, write, poly):
    rng = random.Random(1)
    for _ in range(5):
        path = write(write_graph_file(random_graph(rng, rng.randint(1, 6))))
        outs = set()
        for m in METHODS:
            for extra in ([], ["--ternary"], ["--strategy", "reduce"]):
                code, out, _ = run(capsys, "compute", path, "--poly", poly, "--method", m, *extra)
                assert code == 0
                outs.add(out)
        assert len(outs) == 1


def test_tree_method_and_strategy(capsys, write):
    path = write(TREE)
    outs = {run(capsys, "compute", path, "--method", m)[1] for m in METHODS + ["tree"]}
    outs.add(run(capsys, "compute", path, "--method", "recurse", "--strategy", "tree")[1])
    assert len(outs) == 1


def test_weighted_tree_file(capsys, write):
    g = random_tree(random.Random(2), 7, weighted=True)
    path = write(write_graph_file(g, root=g.vertices[0]))
    outs = {run(capsys, "compute", path, "--method", m, "--poly", p)[1] for m in ("tree", "expand") for p in ("qn",)}
    assert len(outs) == 1


def test_tree_without_root_is_semantic_error(capsys, write):
    code, out, err = run(capsys, "compute", write(K2), "--method", "tree")
    assert code == 3 and out == "" and "root" in err


def test_exit_codes(capsys, write):
    assert run(capsys, "compute", write("vertex a\nedge a b\n"))[0] == 3
    assert run(capsys, "compute", write("vertex a\nedge a a\n"))[0] == 3
    code, _, err = run(capsys, "compute", write('vertex a alpha="(x"\n', "bad.txt"))
    assert code == 2 and "bad.txt:1:" in err
    assert run(capsys, "compute", "/nonexistent/file")[0] == 1
    assert run(capsys, "compute", write(K2), "--method", "guess")[0] == 1
    assert run(capsys)[0] == 1


def test_record_tree(capsys, write, tmp_path):
    trace = tmp_path / "trace.txt"
    code, _, _ = run(capsys, "compute", write(K2), "--method", "recurse", "--record-tree", str(trace))
    assert code == 0 and trace.read_text().startswith("BinaryPivot")
    code, _, _ = run(capsys, "compute", write(TREE), "--method", "reduce", "--record-tree", str(trace))
    assert code == 0 and "pendant" in trace.read_text()


def test_compose_edge_h(capsys, write):
    h = write("vertex v\nvertex a\nedge v a\n", "h.txt")
    k = write("vertex a\nvertex w\nvertex u loop\nedge a w\nedge a u\n", "k.txt")
    code, out, _ = run(capsys, "compose", h, k, "--shared", "a")
    assert code == 0
    lines = out.splitlines()
    assert lines[:3] == ["alpha(a) = 1", "beta(a) = 1", "beta(a_c) = 0"]
    assert lines[3].split(" = ")[1] == lines[4].split(" = ")[1]


def test_compose_looped_neighbour(capsys, write):
    h = write("vertex v loop\nvertex a\nedge v a\n", "h.txt")
    k = write("vertex a\nvertex w\nedge a w\n", "k.txt")
    code, out, _ = run(capsys, "compose", h, k, "--shared", "a")
    assert code == 0 and "beta(a_c) = -1 + x" in out


def test_compose_rejects_looped_or_weighted_marker(capsys, write):
    k = write("vertex a\nvertex w\nedge a w\n", "k.txt")
    for text in ("vertex v\nvertex a loop\nedge v a\n", 'vertex v\nvertex a beta="2"\nedge v a\n'):
        assert run(capsys, "compose", write(text, "h.txt"), k, "--shared", "a")[0] == 3


def test_stats_examples(capsys, write):
    code, out, _ = run(capsys, "stats", write("vertex a\nvertex b\nvertex c\nedge a b\nedge b c\n"))
    assert code == 0 and "epsilon = 0" in out
    code, out, _ = run(capsys, "stats", write("vertex a loop\nvertex b loop\nedge a b\n"))
    assert code == 0 and "epsilon = 2" in out and "bound satisfied = yes" in out
    code, out, _ = run(capsys, "stats", write("vertex a\nvertex b\nvertex c\nvertex d\nedge a b\nedge c d\n"))
    assert code == 0 and "gamma = 0" in out


def test_output_is_stable_across_runs(capsys, write):
    path = write(write_graph_file(random_graph(random.Random(3), 6)))
    first = run(capsys, "compute", path)[1]
    assert all(run(capsys, "compute", path)[1] == first for _ in range(3))
