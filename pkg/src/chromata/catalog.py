"""Exhaustive catalogs of small graphs, deduplicated up to isomorphism.

Canonical certificates come from nauty (via pynauty). Catalog order is
deterministic: by vertex count, then edge count, then certificate bytes.
"""

from __future__ import annotations

from collections.abc import Iterator
from functools import lru_cache

import pynauty

from .graph import Graph


def certificate(g: Graph) -> bytes:
    """Canonical form of ``g``: equal iff the graphs are isomorphic (same n)."""
    if g.n == 0:
        return b""
    adj = {v: list(g.adj[v]) for v in range(g.n)}
    return g.n.to_bytes(2, "big") + pynauty.certificate(pynauty.Graph(g.n, adjacency_dict=adj))


def canonical_graph(g: Graph) -> Graph:
    if g.n == 0:
        return g
    adj = {v: list(g.adj[v]) for v in range(g.n)}
    lab = pynauty.canon_label(pynauty.Graph(g.n, adjacency_dict=adj))
    pos = {old: new for new, old in enumerate(lab)}
    return Graph(g.n, sorted(tuple(sorted((pos[u], pos[v]))) for u, v in g.edges))


@lru_cache(maxsize=None)
def _graphs_on(n: int) -> tuple[Graph, ...]:
    # grow by single edges; every graph with m edges extends one with m - 1
    level = {certificate(Graph(n)): Graph(n)}
    result = list(level.values())
    pairs = [(i, j) for j in range(n) for i in range(j)]
    while level:
        nxt: dict[bytes, Graph] = {}
        for g in level.values():
            for u, v in pairs:
                if g.has_edge(u, v):
                    continue
                h = Graph(n, g.edges + ((u, v),))
                key = certificate(h)
                if key not in nxt:
                    nxt[key] = h
        level = {k: canonical_graph(nxt[k]) for k in sorted(nxt)}
        result.extend(level.values())
    return tuple(result)


def graphs_on(n: int) -> tuple[Graph, ...]:
    """All graphs on exactly ``n`` vertices (isolated vertices allowed)."""
    return _graphs_on(n)


def all_graphs(max_n: int, min_n: int = 1) -> Iterator[Graph]:
    for n in range(min_n, max_n + 1):
        yield from graphs_on(n)


@lru_cache(maxsize=None)
def _connected_by_edges(max_m: int) -> tuple[Graph, ...]:
    level = {certificate(Graph(2, [(0, 1)])): Graph(2, [(0, 1)])}
    result = list(level.values())
    for _ in range(max_m - 1):
        nxt: dict[bytes, Graph] = {}
        for g in level.values():
            cands = [Graph(g.n, g.edges + ((u, v),)) for v in range(g.n) for u in range(v) if not g.has_edge(u, v)]
            cands += [Graph(g.n + 1, g.edges + ((u, g.n),)) for u in range(g.n)]
            for h in cands:
                key = certificate(h)
                if key not in nxt:
                    nxt[key] = h
        level = {k: canonical_graph(nxt[k]) for k in sorted(nxt)}
        result.extend(level.values())
    return tuple(sorted(result, key=lambda g: (g.m, g.n, certificate(g))))


def connected_graphs_by_edges(max_m: int) -> tuple[Graph, ...]:
    """All connected graphs with 1..max_m edges (no isolated vertices)."""
    return _connected_by_edges(max_m) if max_m >= 1 else ()
