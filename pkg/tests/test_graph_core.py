import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graph_core.edge_list import format_edge_list, graph_from_json, graph_to_json, parse_edge_list
from graph_core.generators import (double_cone_vertex, from_family, gen_complete, gen_cycle, gen_double_cone,
                                   gen_path, gen_star, join)
from graph_core.graph import Arc, ArcSet, Graph, adjacency_and_degree, relabel
from util.errors import GeneratorError, GraphFormatError
from util.types import ErrorCode


@pytest.mark.parametrize("text, code", [
    ("0 0\n", ErrorCode.LOOP_EDGE),
    ("0 1\n1 0\n", ErrorCode.DUPLICATE_EDGE),
    ("0 1\n2 3\n", ErrorCode.DISCONNECTED),
    ("0 a\n", ErrorCode.BAD_TOKEN),
    ("0 1 2\n", ErrorCode.BAD_TOKEN),
    ("# nothing here\n\n", ErrorCode.EMPTY_GRAPH),
    ("0 -1\n", ErrorCode.BAD_VERTEX),
])
def test_parse_edge_list_rejects(text, code):
    with pytest.raises(GraphFormatError) as err:
        parse_edge_list(text)
    assert err.value.code == code


def test_parse_edge_list_comments_and_order():
    g = parse_edge_list("# triangle\n2 1\n0 1  # first\n\n0 2\n")
    assert g.n_vertices == 3
    assert g.edges == ((0, 1), (0, 2), (1, 2))
    assert format_edge_list(g) == "0 1\n0 2\n1 2\n"


def test_edge_list_roundtrip_is_canonical():
    g = gen_double_cone(5)
    again = parse_edge_list(format_edge_list(g))
    assert again == g
    assert format_edge_list(again) == format_edge_list(g)


def test_graph_json():
    g = gen_double_cone(3)
    payload = graph_to_json(g)
    assert payload["labels"] == ["u+", "u-", "x0", "x1", "x2"]
    back = graph_from_json(json.dumps(payload))
    assert back == g and back.labels == g.labels
    with pytest.raises(GraphFormatError):
        graph_from_json({"edges": [[0, 1]]})


def test_generators_sizes():
    assert gen_complete(4).n_edges == 6
    assert gen_cycle(5).n_edges == 5
    assert gen_path(4).n_edges == 3
    star = gen_star(3)
    assert star.n_vertices == 4 and star.degree(0) == 3
    cone = gen_double_cone(5)
    assert (cone.n_vertices, cone.n_edges) == (7, 15)
    assert cone.degree(0) == 5 and cone.degree(2) == 4
    assert not cone.has_edge(0, 1)


@pytest.mark.parametrize("family", ["cycle:2", "complete:1", "double-cone:2", "wheel:5", "cycle:x"])
def test_from_family_rejects(family):
    with pytest.raises(GeneratorError):
        from_family(family)


def test_from_family():
    assert from_family("k4") == gen_complete(4)
    assert from_family("double-cone:4") == gen_double_cone(4)
    assert from_family(" Star:3 ") == gen_star(3)


def test_join_of_empty_pair_and_cycle():
    size, edges = join(2, [], 3, [(0, 1), (1, 2), (2, 0)])
    assert size == 5
    assert len(edges) == 3 + 6
    assert Graph(size, edges) == gen_double_cone(3)


def test_double_cone_vertex_names():
    assert double_cone_vertex(4, "u+") == 0
    assert double_cone_vertex(4, "u-") == 1
    assert double_cone_vertex(4, "x0") == 2
    assert double_cone_vertex(4, "x5") == 3
    with pytest.raises(GeneratorError):
        double_cone_vertex(4, "y1")


def test_arcset_k4(k4):
    arcset = ArcSet(k4)
    assert len(arcset) == 12
    assert list(arcset) == sorted(arcset)
    rev = arcset.reversal
    assert np.array_equal(rev[rev], np.arange(12))
    assert all(arcset[rev[i]] == arcset[i].reverse() for i in range(12))
    assert len(arcset.in_arcs(0)) == 3
    assert all(arcset[i].terminus == 0 for i in arcset.in_arcs(0))
    assert (0, 1) in arcset and (0, 0) not in arcset
    with pytest.raises(GraphFormatError):
        arcset.index((0, 0))


def test_adjacency_and_degree(k4):
    A, D = adjacency_and_degree(k4)
    assert np.array_equal(A, np.ones((4, 4), dtype=int) - np.eye(4, dtype=int))
    assert np.array_equal(np.diag(D), [3, 3, 3, 3])


def test_arc_reverse():
    assert Arc(1, 2).reverse() == Arc(2, 1)
    assert str(Arc(1, 2)) == "(1,2)"


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=3, max_value=7).flatmap(
    lambda n: st.tuples(st.just(n), st.permutations(list(range(n + 2))))))
def test_relabel_preserves_degrees(case):
    n, perm = case
    g = gen_double_cone(n)
    h = relabel(g, perm)
    assert h.n_edges == g.n_edges
    assert sorted(h.degrees()) == sorted(g.degrees())
    for x in range(g.n_vertices):
        assert h.degree(perm[x]) == g.degree(x)
        assert h.label(perm[x]) == g.label(x)


def test_sparse_vertex_index_rejected_before_allocation():
    with pytest.raises(GraphFormatError) as err:
        parse_edge_list("0 1\n1 2000000\n")
    assert err.value.code == ErrorCode.DISCONNECTED
    with pytest.raises(GraphFormatError) as err:
        Graph(10 ** 9, [(0, 1)])
    assert err.value.code == ErrorCode.DISCONNECTED
    assert Graph(1, []).n_vertices == 1
