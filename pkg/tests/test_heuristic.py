from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chromata.errors import InfeasiblePalette, InvalidParam
from chromata.exact import chi_a_exact
from chromata.generate import random_planar
from chromata.graph import Graph, complete_graph, cycle_graph
from chromata.heuristic import SolveConfig, solve, solve_minimize
from chromata.verify import verify


def random_tree(n: int, rng: random.Random) -> Graph:
    return Graph(n, [(rng.randrange(v), v) for v in range(1, n)])


@given(st.integers(2, 40), st.integers(0, 10**6))
def test_trees_at_max_degree(n, seed):
    g = random_tree(n, random.Random(seed))
    out = solve(g, SolveConfig(kappa=g.max_degree, seed=seed))
    assert out.solved and verify(g, out.coloring).ok


def test_small_examples():
    out = solve(cycle_graph(4), SolveConfig(kappa=3))
    assert out.solved and out.coloring.colors_used() == 3
    for s in (0, 1, 2):
        g = random_planar(100, 1, s)
        out = solve(g, SolveConfig(seed=s))
        assert out.solved and out.kappa == g.max_degree + 6
        rep = verify(g, out.coloring)
        assert rep.ok and rep.complete and rep.colors_used <= g.max_degree + 6


def test_minimize_examples():
    assert solve_minimize(complete_graph(3))[0] == 3
    assert solve_minimize(cycle_graph(4))[0] == 3
    assert solve_minimize(complete_graph(4))[0] == chi_a_exact(complete_graph(4)).chi_a


def test_palette_errors():
    with pytest.raises(InfeasiblePalette):
        solve(complete_graph(4), SolveConfig(kappa=2))
    with pytest.raises(InvalidParam):
        SolveConfig(edge_order="sideways")


def test_exhausted_is_reported_not_raised():
    # K4 needs five colors; four can never succeed
    out = solve(complete_graph(4), SolveConfig(kappa=4, max_restarts=2))
    assert out.status == "exhausted" and out.coloring is None


@given(st.integers(5, 40), st.sampled_from([1, "7/10", "1/2"]), st.integers(0, 10**6))
def test_deterministic_and_monotone(n, p, seed):
    g = random_planar(n, p, seed)
    cfg = SolveConfig(kappa=g.max_degree + 2, seed=seed, max_restarts=3)
    a, b = solve(g, cfg), solve(g, cfg)
    assert a.status == b.status and a.stats.to_dict() == b.stats.to_dict()
    assert (a.coloring.colors if a.solved else None) == (b.coloring.colors if b.solved else None)
    if a.solved:
        up = solve(g, SolveConfig(kappa=g.max_degree + 3, seed=seed, max_restarts=3))
        assert up.solved


def test_debug_mode_checks_every_move():
    g = random_planar(40, 1, 11)
    out = solve(g, SolveConfig(kappa=g.max_degree + 1, seed=3, debug=True, max_restarts=2))
    if out.solved:
        assert verify(g, out.coloring).ok
