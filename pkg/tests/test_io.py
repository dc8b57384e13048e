from __future__ import annotations

import json

import pytest
from hypothesis import given

from chromata.errors import NonSimpleError, ParseError
from chromata.graph import Graph
from chromata.io import GraphSource, parse_graph, parse_graph6, serialize_graph, to_graph6
from test_graph_core import simple_graphs


def test_graph6_hand_decoded():
    # 'B' = 66 - 63 = 3 vertices; '_' = 95 - 63 = 0b100000, so x(0,1) = 1 and the rest 0
    g = parse_graph6("B_")
    assert g.n == 3 and g.edges == ((0, 1),)
    # 'A' = 2 vertices; '_' sets the single bit x(0,1)
    assert parse_graph6("A_") == Graph(2, [(0, 1)])
    assert parse_graph6("A?") == Graph(2)
    # K4 is "C~": 6 bits all set
    assert to_graph6(Graph(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)])) == "C~"


def test_graph6_long_size_prefix():
    g = Graph(100, [(0, 99), (42, 43)])
    text = to_graph6(g)
    assert text[0] == "~"
    assert parse_graph6(text).same_edge_set(g)


def test_edge_list_examples():
    g = parse_graph(GraphSource("edge-list", "0 1\n1 2\n2 0"))
    assert g.m == 3 and g.max_degree == 2
    with pytest.raises(NonSimpleError):
        parse_graph(GraphSource("edge-list", "0 0"))
    with pytest.raises(ParseError):
        parse_graph(GraphSource("edge-list", "0 x"))


def test_json_and_errors():
    g = parse_graph(GraphSource("json", json.dumps({"n": 3, "edges": [[0, 1]]})))
    assert g == Graph(3, [(0, 1)])
    with pytest.raises(ParseError):
        parse_graph(GraphSource("json", "{not json"))
    with pytest.raises(ParseError):
        parse_graph(GraphSource("graph6", "B"))
    with pytest.raises(ParseError):
        parse_graph(GraphSource("dimacs", "p edge 1 0"))


@given(simple_graphs(max_n=12))
def test_round_trip_every_format(g):
    for fmt in ("graph6", "json", "edge-list"):
        once = parse_graph(serialize_graph(g, fmt))
        twice = parse_graph(serialize_graph(once, fmt))
        assert once == twice
        assert once.same_edge_set(g)
        if fmt != "edge-list":
            assert once.n == g.n
