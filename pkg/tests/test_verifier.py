from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chromata.catalog import all_graphs
from chromata.coloring import EdgeColoring
from chromata.errors import PaletteExceeded
from chromata.graph import Graph, complete_graph, cycle_graph, path_graph, star_graph
from chromata.verify import chi_a_lower_bound, verify
from conftest import is_acyclic_brute


def test_examples():
    rep = verify(cycle_graph(4), [1, 2, 1, 2])
    assert rep.proper and not rep.acyclic
    (cyc,) = [v for v in rep.violations if v.kind == "bichromatic_cycle"]
    assert sorted(cyc.edges) == [0, 1, 2, 3]
    rep = verify(complete_graph(3), [1, 2, 3])
    assert rep.proper and rep.acyclic and rep.colors_used == 3
    assert not verify(path_graph(3), [1, 1]).proper
    with pytest.raises(PaletteExceeded):
        verify(path_graph(3), [1, 5], kappa=4)


def test_witness_cycles_alternate_two_colors():
    g = complete_graph(4)
    rep = verify(g, [1, 2, 3, 3, 2, 1])  # perfect matchings 1,2,3 pairwise form 4-cycles
    assert not rep.acyclic
    for v in rep.violations:
        cols = {[1, 2, 3, 3, 2, 1][e] for e in v.edges}
        assert len(cols) == 2 and len(v.edges) % 2 == 0


def test_lower_bound_examples():
    assert chi_a_lower_bound(star_graph(4)) == 4
    assert chi_a_lower_bound(cycle_graph(5)) == 3
    assert chi_a_lower_bound(Graph(0)) == 0


def _random_proper(g: Graph, rng: random.Random) -> list[int]:
    k = 2 * g.max_degree  # an edge sees at most 2 * max degree - 2 colors
    colors = [0] * g.m
    for e in rng.sample(range(g.m), g.m):
        u, v = g.edges[e]
        used = {colors[f] for f in g.inc[u] + g.inc[v]}
        free = [c for c in range(1, k + 1) if c not in used]
        colors[e] = rng.choice(free)
    return colors


def test_pair_check_matches_cycle_enumeration():
    rng = random.Random(2024)
    graphs = [g for g in all_graphs(7) if g.m >= 3]
    disagreements = 0
    for g in rng.sample(graphs, 150):
        for _ in range(40):
            cols = _random_proper(g, rng)
            if verify(g, cols).acyclic != is_acyclic_brute(g, cols):
                disagreements += 1
    assert disagreements == 0


@given(st.integers(0, 10**6))
def test_verify_is_read_only(seed):
    rng = random.Random(seed)
    g = complete_graph(rng.randint(2, 6))
    cols = _random_proper(g, rng)
    snapshot = tuple(cols)
    verify(g, cols)
    assert tuple(cols) == snapshot
    c = EdgeColoring.from_colors(g, 2 * g.max_degree, cols)
    before = (tuple(c.colors), repr(c._at))
    verify(g, c)
    assert (tuple(c.colors), repr(c._at)) == before
