"""Planarity testing, rotation systems and face tracing.

The planarity test itself is delegated to networkx (left-right algorithm).
Everything downstream of it, the rotation system, the face walk and the
Euler audit, is computed here from the rotation alone so the contract can
be checked independently of the algorithm that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx

from .graph import Graph

Dart = tuple[int, int]


@dataclass(frozen=True)
class Face:
    id: int
    darts: tuple[Dart, ...]
    component: int
    # set only for the empty face of an isolated vertex
    isolated_vertex: int | None = None

    @property
    def degree(self) -> int:
        return len(self.darts)

    @property
    def vertices(self) -> tuple[int, ...]:
        if self.isolated_vertex is not None:
            return (self.isolated_vertex,)
        return tuple(u for u, _ in self.darts)


@dataclass(frozen=True)
class PlaneEmbedding:
    """Rotation system plus the faces it induces.

    ``rotation[v]`` lists the neighbours of ``v`` in counter-clockwise order.
    A face is the cycle of darts obtained by repeatedly turning from dart
    ``(u, v)`` to ``(v, w)`` where ``w`` follows ``u`` clockwise around ``v``
    (equivalently, precedes it in ``rotation[v]``).
    """

    graph: Graph
    rotation: tuple[tuple[int, ...], ...]
    faces: tuple[Face, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "faces", _trace_faces(self.graph, self.rotation))

    @property
    def face_degrees(self) -> tuple[int, ...]:
        return tuple(f.degree for f in self.faces)

    @cached_property
    def face_of_dart(self) -> dict[Dart, int]:
        return {d: f.id for f in self.faces for d in f.darts}

    def next_dart(self, dart: Dart) -> Dart:
        u, v = dart
        rot = self.rotation[v]
        return (v, rot[(rot.index(u) - 1) % len(rot)])

    def euler_ok(self) -> bool:
        """V - E + F = 2 on every connected component."""
        g = self.graph
        comps = g.components()
        counts = [0] * len(comps)
        for f in self.faces:
            counts[f.component] += 1
        for ci, comp in enumerate(comps):
            members = set(comp)
            e = sum(1 for u, _ in g.edges if u in members)
            if len(comp) - e + counts[ci] != 2:
                return False
        return True

    def is_valid(self) -> bool:
        """Every dart in exactly one face, rotation matches adjacency, Euler holds."""
        g = self.graph
        for v in range(g.n):
            if sorted(self.rotation[v]) != list(g.adj[v]):
                return False
        seen: set[Dart] = set()
        for f in self.faces:
            for d in f.darts:
                if d in seen:
                    return False
                seen.add(d)
        if len(seen) != 2 * g.m:
            return False
        return self.euler_ok()


@dataclass(frozen=True)
class NonPlanarWitness:
    """Edge ids of a Kuratowski subgraph (a subdivision of K5 or K3,3)."""

    graph: Graph
    edges: tuple[int, ...]
    kind: str


def _trace_faces(g: Graph, rotation) -> tuple[Face, ...]:
    comp_of = [0] * g.n
    for ci, comp in enumerate(g.components()):
        for v in comp:
            comp_of[v] = ci
    pos = [{w: i for i, w in enumerate(rotation[v])} for v in range(g.n)]
    visited: set[Dart] = set()
    faces: list[Face] = []
    for v in range(g.n):
        if not rotation[v]:
            faces.append(Face(len(faces), (), comp_of[v], isolated_vertex=v))
            continue
        for w in rotation[v]:
            start = (v, w)
            if start in visited:
                continue
            darts = []
            d = start
            while d not in visited:
                visited.add(d)
                darts.append(d)
                a, b = d
                rot = rotation[b]
                d = (b, rot[(pos[b][a] - 1) % len(rot)])
            faces.append(Face(len(faces), tuple(darts), comp_of[v]))
    return tuple(faces)


def embed_planar(g: Graph) -> PlaneEmbedding | NonPlanarWitness:
    planar, cert = nx.check_planarity(g.to_networkx(), counterexample=True)
    if not planar:
        edges = tuple(sorted(g.edge_id(u, v) for u, v in cert.edges()))
        branch = sum(1 for v in cert.nodes() if cert.degree(v) >= 3)
        kind = "K5" if branch == 5 else "K3,3"
        return NonPlanarWitness(g, edges, kind)
    rotation = []
    for v in range(g.n):
        cw = list(cert.neighbors_cw_order(v)) if cert.degree(v) else []
        rotation.append(tuple(reversed(cw)))
    emb = PlaneEmbedding(g, tuple(rotation))
    assert emb.is_valid(), "planarity backend returned an inconsistent rotation system"
    return emb


def is_planar(g: Graph) -> bool:
    return isinstance(embed_planar(g), PlaneEmbedding)


def faces(emb: PlaneEmbedding) -> list[tuple[int, int, tuple[int, ...]]]:
    """``(face_id, degree, sorted vertex-degree signature)`` for every face.

    Vertices met more than once on the boundary walk appear once per visit.
    """
    deg = emb.graph.degrees
    return [(f.id, f.degree, tuple(sorted(deg[v] for v in f.vertices) if f.darts else ())) for f in emb.faces]
