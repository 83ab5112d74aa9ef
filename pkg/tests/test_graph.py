import io

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from blockcut.graph import (
    EdgeListError,
    Graph,
    connected_components,
    degree_sums,
    format_edge_list,
    parse_edge_list,
    read_edge_list,
    write_edge_list,
)

from conftest import dense_adjacency, path3, two_triangles


def test_parse_path():
    g = parse_edge_list("0 1\n1 2\n")
    assert (g.n, g.m) == (3, 2)
    assert g.degree.tolist() == [1, 2, 1]


def test_duplicate_lines_accumulate():
    g = parse_edge_list("0 1\n0 1\n")
    assert (g.n, g.m) == (2, 2)
    assert g.multiplicity(0, 1) == 2
    assert g.degree.tolist() == [2, 2]


def test_reverse_orientation_is_same_edge():
    g = parse_edge_list("0 1\n1 0 3\n")
    assert g.multiplicity(1, 0) == 4
    assert g.m == 4


def test_self_loop_rejected_with_line_number():
    with pytest.raises(EdgeListError) as err:
        parse_edge_list("0 0\n")
    assert err.value.lineno == 1


@pytest.mark.parametrize(
    "text, lineno",
    [("0 1\n1 x\n", 2), ("# c\n\n0 1 0\n", 3), ("0 1 -2\n", 1), ("0 1 2 3\n", 1), ("-1 2\n", 1)],
)
def test_malformed_lines(text, lineno):
    with pytest.raises(EdgeListError) as err:
        parse_edge_list(text)
    assert err.value.lineno == lineno


def test_header_sets_vertex_count():
    g = parse_edge_list("n 5\n# comment\n\n0 1\n")
    assert g.n == 5
    assert g.degree.tolist() == [1, 1, 0, 0, 0]
    with pytest.raises(EdgeListError):
        parse_edge_list("n 2\n0 3\n")


def test_empty_input():
    g = parse_edge_list("")
    assert (g.n, g.m) == (0, 0)


def test_degree_sums_examples():
    g = two_triangles()
    assert degree_sums(g, np.array([1, 1, 1, 2, 2, 2])) == (7, 7)
    assert degree_sums(g, np.ones(6, int)) == (2 * g.m, 0)
    assert degree_sums(path3(), np.array([1, 1, 2])) == (3, 1)
    with pytest.raises(ValueError):
        degree_sums(g, np.ones(5, int))


def test_components():
    assert connected_components(two_triangles()).count == 1
    lab = connected_components(Graph.from_edges(4, [0, 2], [1, 3]))
    assert lab.count == 2
    assert lab.labels.tolist() == [0, 0, 1, 1]
    assert connected_components(Graph.empty(4)).count == 4


def test_graph_is_read_only():
    g = two_triangles()
    with pytest.raises(ValueError):
        g.degree[0] = 5


def test_file_round_trip(tmp_path):
    g = two_triangles()
    write_edge_list(g, tmp_path / "g.txt")
    assert read_edge_list(tmp_path / "g.txt") == g
    text = format_edge_list(g)
    assert text.splitlines()[0] == "n 6"
    assert "2 5 1" in text.splitlines()


def test_subgraph_relabels():
    g = two_triangles()
    sub = g.subgraph(np.array([3, 4, 5]))
    assert (sub.n, sub.m) == (3, 3)


edge_lists = st.integers(2, 12).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(1, 3)).filter(lambda e: e[0] != e[1]),
            max_size=40,
        ),
    )
)


@settings(max_examples=100, deadline=None)
@given(edge_lists)
def test_structure_invariants(data):
    n, edges = data
    text = f"n {n}\n" + "".join(f"{u} {v} {w}\n" for u, v, w in edges)
    g = parse_edge_list(io.StringIO(text))
    a = dense_adjacency(g)
    # exhaustive pair audit
    expected = np.zeros((n, n))
    for u, v, w in edges:
        expected[u, v] += w
        expected[v, u] += w
    assert np.array_equal(a, expected)
    assert np.array_equal(a, a.T) and not a.diagonal().any()
    for i in range(n):
        for j in range(n):
            assert g.multiplicity(i, j) == expected[i, j]
    assert g.degree.sum() == 2 * g.m
    assert parse_edge_list(format_edge_list(g)) == g


@settings(max_examples=50, deadline=None)
@given(edge_lists, st.data())
def test_degree_sums_swap(data, draw):
    n, edges = data
    g = parse_edge_list(f"n {n}\n" + "".join(f"{u} {v} {w}\n" for u, v, w in edges))
    labels = np.array(draw.draw(st.lists(st.sampled_from([1, 2]), min_size=n, max_size=n)))
    a, b = degree_sums(g, labels)
    assert degree_sums(g, 3 - labels) == (b, a)
    assert a + b == 2 * g.m
