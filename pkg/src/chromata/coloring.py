"""Partial edge colorings and the color-set calculus used by the recoloring proofs.

Colors are the integers ``1..kappa``; ``0`` marks an uncolored edge. Every
vertex keeps a map ``color -> edge id`` of its colored incident edges, so
membership tests and two-color path walks are constant time per step.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .errors import EdgeAlreadyColored, NonMaximalSwap, NotCandidate, PaletteExceeded, SameColor
from .graph import Graph

# union of multisets is Counter addition
ColorMultiset = Counter


@dataclass(frozen=True)
class DichromaticPath:
    """A maximal two-colored path, or a two-colored cycle when ``is_cycle``.

    ``vertices`` has one more entry than ``edges`` for a path; for a cycle
    both have the same length and the last edge closes back to
    ``vertices[0]``.
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    colors: tuple[int, int]
    edge_colors: tuple[int, ...]
    is_cycle: bool = False

    @property
    def first_color(self) -> int:
        return self.edge_colors[0]

    @property
    def last_color(self) -> int:
        return self.edge_colors[-1]

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    def reversed(self) -> DichromaticPath:
        if self.is_cycle:
            vs = (self.vertices[0],) + tuple(reversed(self.vertices[1:]))
            return DichromaticPath(vs, tuple(reversed(self.edges)), self.colors, tuple(reversed(self.edge_colors)), True)
        return DichromaticPath(
            tuple(reversed(self.vertices)), tuple(reversed(self.edges)), self.colors, tuple(reversed(self.edge_colors))
        )


class EdgeColoring:
    """Proper partial edge coloring of a fixed graph with palette ``[kappa]``."""

    def __init__(self, graph: Graph, kappa: int):
        self.graph = graph
        self.kappa = kappa
        self.colors: list[int] = [0] * graph.m
        self._at: list[dict[int, int]] = [{} for _ in range(graph.n)]
        self.debug = False

    @classmethod
    def from_colors(cls, graph: Graph, kappa: int, colors: Sequence[int | None]) -> EdgeColoring:
        """Build from a per-edge color list (``0``/``None`` = uncolored); must be proper."""
        if len(colors) != graph.m:
            raise ValueError(f"expected {graph.m} colors, got {len(colors)}")
        c = cls(graph, kappa)
        for e, col in enumerate(colors):
            if col:
                if not 1 <= col <= kappa:
                    raise PaletteExceeded(f"edge {e} has color {col} outside [1, {kappa}]")
                c.assign(e, col)
        return c

    def copy(self) -> EdgeColoring:
        c = EdgeColoring(self.graph, self.kappa)
        c.colors = list(self.colors)
        c._at = [dict(d) for d in self._at]
        c.debug = self.debug
        return c

    # -- raw state -------------------------------------------------------

    def color(self, e: int) -> int:
        return self.colors[e]

    def edge_with(self, v: int, color: int) -> int | None:
        return self._at[v].get(color)

    def is_total(self) -> bool:
        return all(self.colors)

    def colors_used(self) -> int:
        return len({c for c in self.colors if c})

    def _set(self, e: int, color: int) -> None:
        u, v = self.graph.edges[e]
        old = self.colors[e]
        if old:
            del self._at[u][old]
            del self._at[v][old]
        self.colors[e] = color
        if color:
            self._at[u][color] = e
            self._at[v][color] = e

    # -- color-set queries -----------------------------------------------

    def used_colors(self, v: int) -> set[int]:
        return set(self._at[v])

    def free_colors(self, v: int) -> set[int]:
        return set(range(1, self.kappa + 1)).difference(self._at[v])

    def free_colors_edge(self, e: int) -> set[int]:
        u, v = self.graph.edges[e]
        return set(range(1, self.kappa + 1)).difference(self._at[u], self._at[v])

    def upsilon(self, u: int, v: int) -> set[int]:
        """Colors at ``v`` other than the color of ``uv`` (nothing removed if uncolored)."""
        out = set(self._at[v])
        out.discard(self.colors[self.graph.edge_id(u, v)])
        return out

    def w_set(self, u: int, v: int) -> set[int]:
        """Neighbours ``x`` of ``u`` whose edge ``ux`` carries a color of ``upsilon(u, v)``."""
        at_u = self._at[u]
        return {self.graph.other(at_u[c], u) for c in self.upsilon(u, v) if c in at_u}

    def upsilon_multiset(self, pairs: Iterable[tuple[int, int]]) -> Counter:
        total: Counter = Counter()
        for u, v in pairs:
            total.update(self.upsilon(u, v))
        return total

    def candidate_colors(self, e: int) -> set[int]:
        if self.colors[e]:
            raise EdgeAlreadyColored(f"edge {e} already has color {self.colors[e]}")
        return self.free_colors_edge(e)

    # -- two-colored paths -------------------------------------------------

    def _walk(self, start: int, first: int, other: int) -> tuple[list[int], list[int], list[int]]:
        """Follow colors first, other, first, ... from ``start`` until stuck or back at start."""
        verts, edges, cols = [], [], []
        v, col = start, first
        while True:
            e = self._at[v].get(col)
            if e is None:
                break
            v = self.graph.other(e, v)
            edges.append(e)
            cols.append(col)
            verts.append(v)
            if v == start:
                break
            col = other if col == first else first
        return verts, edges, cols

    def maximal_dichromatic_path(self, v: int, alpha: int, beta: int) -> DichromaticPath | None:
        """The unique maximal (alpha, beta) path or cycle through ``v``; None if v touches neither."""
        if alpha == beta:
            raise SameColor(f"need two distinct colors, got {alpha} twice")
        at = self._at[v]
        if alpha not in at and beta not in at:
            return None
        first = alpha if alpha in at else beta
        second = beta if first == alpha else alpha
        fv, fe, fc = self._walk(v, first, second)
        if fv and fv[-1] == v:
            return DichromaticPath((v, *fv[:-1]), tuple(fe), (alpha, beta), tuple(fc), True)
        bv, be, bc = self._walk(v, second, first)
        verts = tuple(reversed(bv)) + (v,) + tuple(fv)
        edges = tuple(reversed(be)) + tuple(fe)
        cols = tuple(reversed(bc)) + tuple(fc)
        return DichromaticPath(verts, edges, (alpha, beta), cols)

    def _oriented_from(self, u: int, alpha: int, beta: int) -> DichromaticPath | None:
        path = self.maximal_dichromatic_path(u, alpha, beta)
        if path is None or path.is_cycle:
            return None
        if path.vertices[0] == u:
            return path
        if path.vertices[-1] == u:
            return path.reversed()
        return None

    def has_critical_path(self, alpha: int, beta: int, u: int, v: int) -> bool:
        """Maximal (alpha, beta) path with ends u and v, both end edges colored alpha."""
        path = self._oriented_from(u, alpha, beta)
        return (
            path is not None and path.vertices[-1] == v and u != v and path.first_color == alpha and path.last_color == alpha
        )

    def has_alternating_path(self, alpha: int, beta: int, u: int, v: int) -> bool:
        """Maximal (alpha, beta) path from u (first edge alpha) to v (last edge beta)."""
        path = self._oriented_from(u, alpha, beta)
        return (
            path is not None and path.vertices[-1] == v and u != v and path.first_color == alpha and path.last_color == beta
        )

    # -- validity and mutation --------------------------------------------

    def is_valid(self, e: int, alpha: int) -> bool:
        """True iff giving ``e`` the candidate color ``alpha`` closes no two-colored cycle."""
        if alpha not in self.candidate_colors(e):
            raise NotCandidate(f"color {alpha} is not a candidate for edge {e}")
        u, v = self.graph.edges[e]
        common = set(self._at[u]).intersection(self._at[v])
        if not common:
            return True
        self._set(e, alpha)
        try:
            return not any(self.maximal_dichromatic_path(u, alpha, beta).is_cycle for beta in common)
        finally:
            self._set(e, 0)

    def valid_colors(self, e: int) -> list[int]:
        return [a for a in sorted(self.candidate_colors(e)) if self.is_valid(e, a)]

    def assign(self, e: int, alpha: int) -> None:
        if not 1 <= alpha <= self.kappa:
            raise NotCandidate(f"color {alpha} outside palette [1, {self.kappa}]")
        if alpha not in self.candidate_colors(e):
            raise NotCandidate(f"color {alpha} is not a candidate for edge {e}")
        self._set(e, alpha)
        if self.debug:
            self.check_invariants()

    def unassign(self, e: int) -> None:
        self._set(e, 0)
        if self.debug:
            self.check_invariants()

    def swap_path(self, path: DichromaticPath, force: bool = False) -> None:
        """Exchange the two colors along a maximal dichromatic path (Kempe move)."""
        alpha, beta = path.colors
        current = self.maximal_dichromatic_path(path.vertices[0], alpha, beta)
        if current is None or set(current.edges) != set(path.edges):
            raise NonMaximalSwap("path is not the maximal dichromatic path through its first vertex")
        if current.is_cycle and not force:
            raise NonMaximalSwap("refusing to swap a two-colored cycle without force=True")
        swapped = [(e, beta if self.colors[e] == alpha else alpha) for e in path.edges]
        for e, _ in swapped:
            self._set(e, 0)
        for e, col in swapped:
            self._set(e, col)
        if self.debug:
            self.check_invariants()

    def check_invariants(self) -> None:
        """Assert properness and that the per-vertex caches match the colors."""
        rebuilt: list[dict[int, int]] = [{} for _ in range(self.graph.n)]
        for e, col in enumerate(self.colors):
            if not col:
                continue
            assert 1 <= col <= self.kappa, f"edge {e} color {col} outside palette"
            for x in self.graph.edges[e]:
                assert col not in rebuilt[x], f"color {col} repeated at vertex {x}"
                rebuilt[x][col] = e
        assert rebuilt == self._at, "color cache out of sync"

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {"kappa": self.kappa, "colors": [[e, c] for e, c in enumerate(self.colors) if c]}

    @classmethod
    def from_dict(cls, graph: Graph, doc: dict) -> EdgeColoring:
        kappa, colors = coloring_list_from_dict(graph, doc)
        return cls.from_colors(graph, kappa, colors)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeColoring):
            return NotImplemented
        return self.graph == other.graph and self.kappa == other.kappa and self.colors == other.colors

    def __repr__(self) -> str:
        done = sum(1 for c in self.colors if c)
        return f"EdgeColoring(kappa={self.kappa}, colored={done}/{len(self.colors)})"


def coloring_list_from_dict(graph: Graph, doc: dict) -> tuple[int, list[int]]:
    """Read ``{kappa, colors: [[edge_id, color], ...]}`` without checking properness."""
    if not isinstance(doc, dict) or "kappa" not in doc or "colors" not in doc:
        raise ValueError("coloring JSON must have 'kappa' and 'colors'")
    kappa = doc["kappa"]
    if not isinstance(kappa, int) or kappa < 0:
        raise ValueError("'kappa' must be a non-negative integer")
    colors = [0] * graph.m
    for item in doc["colors"]:
        if not (isinstance(item, list) and len(item) == 2 and all(isinstance(x, int) for x in item)):
            raise ValueError(f"bad coloring entry {item!r}")
        e, col = item
        if not 0 <= e < graph.m:
            raise ValueError(f"edge id {e} out of range")
        if col < 1:
            raise ValueError(f"edge {e}: colors start at 1, got {col}")
        colors[e] = col
    return kappa, colors
