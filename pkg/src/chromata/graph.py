"""Simple undirected graphs with dense, stable vertex and edge ids."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from functools import cached_property

from .errors import InvalidParam, NonSimpleError

Edge = tuple[int, int]


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Edge ids are positions in ``edges`` and follow input order. Each edge is
    stored as ``(u, v)`` with ``u < v``. Operations that change the graph
    return a new instance.
    """

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise InvalidParam(f"vertex count must be non-negative, got {n}")
        norm: list[Edge] = []
        index: dict[Edge, int] = {}
        for pair in edges:
            u, v = int(pair[0]), int(pair[1])
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParam(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise NonSimpleError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in index:
                raise NonSimpleError(f"parallel edge {key}")
            index[key] = len(norm)
            norm.append(key)
        nbrs: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for eid, (u, v) in enumerate(norm):
            nbrs[u].append((v, eid))
            nbrs[v].append((u, eid))
        for row in nbrs:
            row.sort()
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(norm)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(w for w, _ in row) for row in nbrs)
        self.inc: tuple[tuple[int, ...], ...] = tuple(tuple(e for _, e in row) for row in nbrs)
        self._index = index

    # -- basic queries -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    @cached_property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @cached_property
    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._index

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self._index[(u, v) if u < v else (v, u)]
        except KeyError:
            raise KeyError(f"no edge ({u}, {v})") from None

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if v == a else a

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def same_edge_set(self, other: Graph) -> bool:
        return self.n == other.n and set(self.edges) == set(other.edges)

    # -- structure -----------------------------------------------------

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def has_cycle(self) -> bool:
        return self.m > self.n - len(self.components())

    def is_biconnected(self) -> bool:
        """2-connected: connected, at least 3 vertices, no cut vertex."""
        if self.n < 3 or not self.is_connected():
            return False
        return not self.cut_vertices()

    def cut_vertices(self) -> set[int]:
        disc = [-1] * self.n
        low = [0] * self.n
        cuts: set[int] = set()
        timer = 0
        for root in range(self.n):
            if disc[root] != -1:
                continue
            disc[root] = low[root] = timer
            timer += 1
            children = 0
            stack = [(root, -1, iter(self.adj[root]))]
            while stack:
                v, parent, it = stack[-1]
                advanced = False
                for w in it:
                    if disc[w] == -1:
                        disc[w] = low[w] = timer
                        timer += 1
                        if v == root:
                            children += 1
                        stack.append((w, v, iter(self.adj[w])))
                        advanced = True
                        break
                    if w != parent:
                        low[v] = min(low[v], disc[w])
                if advanced:
                    continue
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if p != root and low[v] >= disc[p]:
                        cuts.add(p)
            if children > 1:
                cuts.add(root)
        return cuts

    # -- derived graphs ------------------------------------------------

    def without_edge(self, e: int) -> Graph:
        """Same vertex set, edge ``e`` removed; later edge ids shift down by one."""
        return Graph(self.n, self.edges[:e] + self.edges[e + 1 :])

    def induced(self, keep: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph on ``keep`` relabelled densely in increasing order.

        Returns the subgraph and the list mapping new ids to old ids.
        """
        old = sorted(set(keep))
        new_of = {v: i for i, v in enumerate(old)}
        edges = [(new_of[u], new_of[v]) for u, v in self.edges if u in new_of and v in new_of]
        return Graph(len(old), edges), old

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    @classmethod
    def from_networkx(cls, g) -> Graph:
        nodes = sorted(g.nodes())
        pos = {v: i for i, v in enumerate(nodes)}
        return cls(len(nodes), sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in g.edges()))


def strip_small_vertices(g: Graph) -> Graph:
    """Remove every vertex of degree at most 2 in one pass (not iterated)."""
    keep = [v for v in range(g.n) if g.degree(v) > 2]
    return g.induced(keep)[0]


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def named_graph(name: str) -> Graph:
    """Small named graphs used by the CLI and the tests."""
    import networkx as nx

    builders = {
        "tetrahedron": nx.tetrahedral_graph,
        "cube": nx.cubical_graph,
        "octahedron": nx.octahedral_graph,
        "dodecahedron": nx.dodecahedral_graph,
        "icosahedron": nx.icosahedral_graph,
        "petersen": nx.petersen_graph,
    }
    if name in builders:
        return Graph.from_networkx(builders[name]())
    if name.startswith("K") and name[1:].isdigit():
        return complete_graph(int(name[1:]))
    if name.startswith("C") and name[1:].isdigit():
        return cycle_graph(int(name[1:]))
    if name.startswith("P") and name[1:].isdigit():
        return path_graph(int(name[1:]))
    raise InvalidParam(f"unknown named graph {name!r}")
