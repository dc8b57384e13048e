from __future__ import annotations

import random
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chromata.catalog import all_graphs
from chromata.coloring import EdgeColoring
from chromata.errors import EdgeAlreadyColored, NonMaximalSwap, NotCandidate, SameColor
from chromata.generate import random_planar
from chromata.graph import Graph, complete_graph, cycle_graph, path_graph, star_graph
from chromata.verify import verify
from conftest import random_partial_coloring


def colored(g: Graph, kappa: int, colors) -> EdgeColoring:
    return EdgeColoring.from_colors(g, kappa, colors)


def test_used_and_free_colors():
    k3 = colored(complete_graph(3), 3, [1, 2, 3])
    for v in range(3):
        assert len(k3.used_colors(v)) == 2
    assert EdgeColoring(complete_graph(3), 3).used_colors(0) == set()
    star = colored(star_graph(4), 4, [1, 2, 3, 4])
    assert star.used_colors(0) == {1, 2, 3, 4}

    p = colored(path_graph(3), 5, [1, 2])  # edges 0-1 (1), 1-2 (2)
    assert p.free_colors(1) == {3, 4, 5}
    # uv = 0-1 uncolored, U(u) = {1}, U(v) = {2, 3}
    g = Graph(5, [(0, 1), (0, 2), (1, 3), (1, 4)])
    c = colored(g, 3, [0, 1, 2, 3])
    assert c.used_colors(0) == {1} and c.used_colors(1) == {2, 3}
    assert c.free_colors_edge(0) == set()
    k3b = colored(complete_graph(3), 4, [1, 2, 3])
    assert k3b.free_colors_edge(0) == {4}


def test_upsilon_and_w_set():
    p = colored(path_graph(3), 3, [1, 2])  # a-b = 1, b-c = 2
    assert p.upsilon(0, 1) == {2}
    k3 = colored(complete_graph(3), 3, [0, 1, 2])  # edge 0-1 uncolored
    assert k3.upsilon(0, 1) == k3.used_colors(1)


def test_w_set_is_asymmetric():
    # u=0 with ua (2), ub (3), uv (1); v=1 with vc (2), vd (3)
    g = Graph(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
    c = colored(g, 3, [1, 2, 3, 2, 3])
    assert c.w_set(0, 1) == {2, 3}
    assert c.w_set(1, 0) == {4, 5}
    assert c.w_set(0, 1) != c.w_set(1, 0)
    # pendant v: nothing at v besides uv, so both sides are empty
    g2 = Graph(4, [(0, 1), (0, 2), (0, 3)])
    c2 = colored(g2, 3, [1, 2, 3])
    assert c2.w_set(0, 1) == set() and c2.w_set(1, 0) == set()


def test_candidate_colors():
    k3 = colored(complete_graph(3), 4, [1, 2, 0])
    assert k3.candidate_colors(2) == {3, 4}
    s = colored(star_graph(3), 3, [1, 2, 0])
    assert s.candidate_colors(2) == {3}
    assert EdgeColoring(Graph(2, [(0, 1)]), 2).candidate_colors(0) == {1, 2}
    with pytest.raises(EdgeAlreadyColored):
        k3.candidate_colors(0)


def test_maximal_dichromatic_path_examples():
    p4 = colored(path_graph(4), 2, [1, 2, 1])
    path = p4.maximal_dichromatic_path(1, 1, 2)
    assert set(path.vertices) == {0, 1, 2, 3} and not path.is_cycle
    c4 = colored(cycle_graph(4), 2, [1, 2, 1, 2])
    assert c4.maximal_dichromatic_path(0, 1, 2).is_cycle
    assert colored(path_graph(3), 4, [3, 4]).maximal_dichromatic_path(0, 1, 2) is None
    with pytest.raises(SameColor):
        p4.maximal_dichromatic_path(0, 1, 1)


def test_critical_and_alternating_paths():
    p3 = colored(path_graph(3), 2, [1, 2])  # u=0 -1- x=1 -2- v=2
    assert p3.has_alternating_path(1, 2, 0, 2)
    assert not p3.has_critical_path(1, 2, 0, 2)
    p4 = colored(path_graph(4), 2, [1, 2, 1])
    assert p4.has_critical_path(1, 2, 0, 3)
    lone = colored(Graph(3, [(1, 2)]), 3, [3])
    assert not lone.has_critical_path(1, 2, 0, 2) and not lone.has_alternating_path(1, 2, 0, 2)
    with pytest.raises(SameColor):
        p3.has_critical_path(1, 1, 0, 2)


def test_is_valid_examples():
    c4 = colored(cycle_graph(4), 3, [1, 2, 1, 0])
    assert not c4.is_valid(3, 2)
    assert c4.is_valid(3, 3)
    with pytest.raises(NotCandidate):
        c4.is_valid(3, 1)
    tree = colored(star_graph(3), 3, [1, 0, 0])
    assert all(tree.is_valid(e, a) for e in (1, 2) for a in tree.candidate_colors(e))


def test_swap_assign_examples():
    p3 = colored(path_graph(3), 2, [1, 2])
    path = p3.maximal_dichromatic_path(0, 1, 2)
    p3.swap_path(path)
    assert p3.colors == [2, 1]
    p3.swap_path(p3.maximal_dichromatic_path(0, 1, 2))
    assert p3.colors == [1, 2]
    c = EdgeColoring(complete_graph(3), 3)
    before = list(c.colors)
    c.assign(0, 2)
    c.unassign(0)
    assert c.colors == before
    c4 = colored(cycle_graph(4), 2, [1, 2, 1, 2])
    with pytest.raises(NonMaximalSwap):
        c4.swap_path(c4.maximal_dichromatic_path(0, 1, 2))
    p4 = colored(path_graph(4), 2, [1, 2, 1])
    part = p4.maximal_dichromatic_path(0, 1, 2)
    from dataclasses import replace

    with pytest.raises(NonMaximalSwap):
        p4.swap_path(replace(part, vertices=part.vertices[:2], edges=part.edges[:1], edge_colors=part.edge_colors[:1]))


def test_upsilon_multiset():
    c = colored(star_graph(3), 3, [1, 2, 3])
    assert c.upsilon_multiset([]) == Counter()
    leaves = [(0, x) for x in (1, 2, 3)]
    assert c.upsilon_multiset(leaves) == Counter()
    from_leaves = c.upsilon_multiset([(x, 0) for x in (1, 2, 3)])
    assert from_leaves == Counter({1: 2, 2: 2, 3: 2})
    p = colored(Graph(4, [(0, 1), (1, 2), (2, 3)]), 3, [2, 1, 2])
    assert p.upsilon_multiset([(0, 1), (3, 2)])[1] == 2


def test_serialization_round_trip():
    g = complete_graph(4)
    c = colored(g, 5, [1, 2, 3, 3, 2, 1])
    assert EdgeColoring.from_dict(g, c.to_dict()) == c


@given(st.integers(5, 30), st.integers(0, 10**6))
def test_fact1_path_is_the_same_from_every_vertex_on_it(n, seed):
    rng = random.Random(seed)
    g = random_planar(n, rng.choice([1, "7/10", "1/2"]), seed)
    c = random_partial_coloring(g, g.max_degree + 3, rng)
    alpha, beta = rng.sample(range(1, c.kappa + 1), 2)
    for v in range(g.n):
        path = c.maximal_dichromatic_path(v, alpha, beta)
        if path is None:
            continue
        for x in path.vertices:
            other = c.maximal_dichromatic_path(x, alpha, beta)
            assert set(other.edges) == set(path.edges)
            if not path.is_cycle:
                assert other.vertices in (path.vertices, path.reversed().vertices)


@given(st.integers(0, 10**6))
def test_validity_is_sound(seed):
    rng = random.Random(seed)
    graphs = [g for g in all_graphs(6) if g.m]
    g = rng.choice(graphs)
    c = random_partial_coloring(g, max(g.max_degree, 2) + rng.randint(0, 1), rng, fill=0.6)
    for e in range(g.m):
        if c.colors[e]:
            continue
        for a in c.candidate_colors(e):
            if c.is_valid(e, a):
                trial = c.copy()
                trial.assign(e, a)
                assert verify(g, trial).ok


@given(st.integers(0, 10**6))
def test_swap_preserves_properness_and_is_an_involution(seed):
    rng = random.Random(seed)
    g = random_planar(rng.randint(5, 20), "7/10", seed)
    c = random_partial_coloring(g, g.max_degree + 2, rng, fill=0.9)
    c.debug = True
    alpha, beta = rng.sample(range(1, c.kappa + 1), 2)
    path = c.maximal_dichromatic_path(rng.randrange(g.n), alpha, beta)
    if path is None or path.is_cycle:
        return
    before = list(c.colors)
    outside = [e for e in range(g.m) if e not in path.edges]
    c.swap_path(path)
    assert verify(g, c).proper
    assert [c.colors[e] for e in outside] == [before[e] for e in outside]
    c.swap_path(c.maximal_dichromatic_path(path.vertices[0], alpha, beta))
    assert c.colors == before
