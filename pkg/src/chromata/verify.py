"""Ground-truth checker for acyclic edge colorings.

A proper coloring is acyclic iff for every pair of colors the edges carrying
those two colors form a forest. A two-colored cycle passes through vertices
that see both colors, so only pairs that meet at some vertex are examined.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

from .coloring import EdgeColoring
from .errors import PaletteExceeded
from .graph import Graph


@dataclass
class Violation:
    kind: str  # "clash" or "bichromatic_cycle"
    edges: tuple[int, ...]
    vertices: tuple[int, ...]
    colors: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"kind": self.kind, "edges": list(self.edges), "vertices": list(self.vertices), "colors": list(self.colors)}


@dataclass
class VerifyReport:
    proper: bool
    acyclic: bool
    colors_used: int
    complete: bool
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.proper and self.acyclic

    def to_dict(self) -> dict:
        return {
            "proper": self.proper,
            "acyclic": self.acyclic,
            "complete": self.complete,
            "colors_used": self.colors_used,
            "violations": [v.to_dict() for v in self.violations],
        }


def _find(parent: dict[int, int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _tree_path(adj: dict[int, list[tuple[int, int]]], src: int, dst: int) -> tuple[list[int], list[int]]:
    """Vertices and edges of the unique path from src to dst in a forest."""
    prev: dict[int, tuple[int, int]] = {src: (-1, -1)}
    stack = [src]
    while stack:
        x = stack.pop()
        if x == dst:
            break
        for y, e in adj.get(x, ()):
            if y not in prev:
                prev[y] = (x, e)
                stack.append(y)
    verts, edges = [dst], []
    x = dst
    while x != src:
        p, e = prev[x]
        edges.append(e)
        verts.append(p)
        x = p
    verts.reverse()
    edges.reverse()
    return verts, edges


def verify(g: Graph, coloring: EdgeColoring | Sequence[int | None], kappa: int | None = None) -> VerifyReport:
    """Check properness and acyclicity of a (possibly partial) edge coloring.

    ``coloring`` is an :class:`EdgeColoring` or a per-edge color list with
    ``0``/``None`` for uncolored edges; only colored edges are checked. Raises
    :class:`PaletteExceeded` if a color lies outside ``1..kappa``.
    """
    if isinstance(coloring, EdgeColoring):
        colors = list(coloring.colors)
        kappa = coloring.kappa if kappa is None else kappa
    else:
        colors = [c or 0 for c in coloring]
    if len(colors) != g.m:
        raise ValueError(f"coloring has {len(colors)} entries for {g.m} edges")
    for e, c in enumerate(colors):
        if c < 0 or (kappa is not None and c > kappa):
            raise PaletteExceeded(f"edge {e} has color {c} outside [1, {kappa}]")

    violations: list[Violation] = []
    at: list[dict[int, int]] = [{} for _ in range(g.n)]
    for e, c in enumerate(colors):
        if not c:
            continue
        for x in g.edges[e]:
            if c in at[x]:
                other = at[x][c]
                violations.append(Violation("clash", (other, e), (x,), (c,)))
            else:
                at[x][c] = e
    proper = not violations

    # color pairs meeting at a vertex; for each, union-find over the two classes
    pairs: set[tuple[int, int]] = set()
    for v in range(g.n):
        cs = sorted(at[v])
        for i, a in enumerate(cs):
            for b in cs[i + 1 :]:
                pairs.add((a, b))
    by_color: dict[int, list[int]] = {}
    for e, c in enumerate(colors):
        if c:
            by_color.setdefault(c, []).append(e)

    acyclic = True
    for a, b in sorted(pairs):
        parent: dict[int, int] = {}
        adj: dict[int, list[tuple[int, int]]] = {}
        for e in sorted(by_color[a] + by_color[b]):
            u, v = g.edges[e]
            parent.setdefault(u, u)
            parent.setdefault(v, v)
            ru, rv = _find(parent, u), _find(parent, v)
            if ru == rv:
                verts, path_edges = _tree_path(adj, v, u)
                acyclic = False
                cyc_edges = tuple(path_edges + [e])
                violations.append(Violation("bichromatic_cycle", cyc_edges, tuple(verts), (a, b)))
                break
            parent[ru] = rv
            adj.setdefault(u, []).append((v, e))
            adj.setdefault(v, []).append((u, e))

    return VerifyReport(
        proper=proper,
        acyclic=acyclic,
        colors_used=len({c for c in colors if c}),
        complete=all(colors),
        violations=violations,
    )


def chi_a_lower_bound(g: Graph) -> int:
    """Max degree, plus one when the max degree is 2 and a cycle exists."""
    d = g.max_degree
    if d == 2 and g.has_cycle():
        return 3
    return d
