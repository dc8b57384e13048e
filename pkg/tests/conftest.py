from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import HealthCheck, settings

from chromata.coloring import EdgeColoring
from chromata.generate import random_planar
from chromata.graph import Graph

settings.register_profile("repo", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


def brute_cycles(g: Graph) -> list[tuple[int, ...]]:
    """Every simple cycle as a tuple of edge ids, each found once (independent of the verifier)."""
    seen: set[frozenset[int]] = set()
    out = []

    def dfs(start: int, v: int, visited: list[int], edges: list[int]) -> None:
        for w, e in zip(g.adj[v], g.inc[v]):
            if w == start and len(edges) >= 2 and e != edges[-1]:
                key = frozenset(edges + [e])
                if key not in seen:
                    seen.add(key)
                    out.append(tuple(edges + [e]))
            elif w > start and w not in visited:
                dfs(start, w, visited + [w], edges + [e])

    for s in range(g.n):
        dfs(s, s, [s], [])
    return out


def is_acyclic_brute(g: Graph, colors) -> bool:
    """Proper, and every cycle sees at least three colors."""
    for v in range(g.n):
        cs = [colors[e] for e in g.inc[v] if colors[e]]
        if len(cs) != len(set(cs)):
            return False
    for cyc in brute_cycles(g):
        if all(colors[e] for e in cyc) and len({colors[e] for e in cyc}) < 3:
            return False
    return True


def random_partial_coloring(g: Graph, kappa: int, rng: random.Random, fill: float = 0.7) -> EdgeColoring:
    """Random proper, acyclic partial coloring built edge by edge from valid colors."""
    c = EdgeColoring(g, kappa)
    order = list(range(g.m))
    rng.shuffle(order)
    for e in order:
        if rng.random() > fill:
            continue
        options = c.valid_colors(e)
        if options:
            c.assign(e, rng.choice(options))
    return c


def set_partitions_min_blocks(g: Graph) -> int:
    """Fewest colors over all proper acyclic colorings, by naive set-partition enumeration.

    Colors are interchangeable, so restricted growth strings cover every
    coloring up to renaming; only properness is pruned during generation.
    """
    best = g.m
    colors = [0] * g.m

    def rec(e: int, top: int) -> None:
        nonlocal best
        if top >= best:
            return
        if e == g.m:
            if is_acyclic_brute(g, colors):
                best = top
            return
        u, v = g.edges[e]
        for col in range(1, top + 2):
            if any(colors[f] == col for f in g.inc[u] + g.inc[v] if f < e):
                continue
            colors[e] = col
            rec(e + 1, max(top, col))
        colors[e] = 0

    if g.m == 0:
        return 0
    rec(0, 0)
    return best


def naive_colorable(g: Graph, kappa: int) -> bool:
    """All kappa^m assignments, filtered by the brute-force cycle check."""
    return any(is_acyclic_brute(g, cols) for cols in itertools.product(range(1, kappa + 1), repeat=g.m))


@pytest.fixture
def planar_sample():
    return [random_planar(n, p, s) for n, p, s in [(12, 1, 1), (20, "7/10", 2), (30, "1/2", 3), (15, 1, 4)]]
