"""Exhaustive acyclic edge coloring for small graphs.

Depth-first search over a fixed edge order. Colors are introduced in
canonical order (an edge may use any color already in play or the single
next unused one), which removes the palette's permutation symmetry. Only
valid colors are tried, and an assignment is rejected early when it leaves
an uncolored neighbouring edge with no candidate color at all.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .coloring import EdgeColoring
from .errors import BudgetExceeded
from .graph import Graph
from .verify import chi_a_lower_bound, verify

YES, NO, BUDGET = "yes", "no", "budget_exceeded"


@dataclass
class Decision:
    status: str
    certificate: EdgeColoring | None
    nodes_expanded: int

    @property
    def colorable(self) -> bool | None:
        return {YES: True, NO: False}.get(self.status)


@dataclass
class ExactResult:
    chi_a: int
    certificate: EdgeColoring
    nodes_expanded: int
    bound_used: int

    def to_dict(self) -> dict:
        return {
            "chi_a": self.chi_a,
            "certificate": self.certificate.to_dict(),
            "nodes_expanded": self.nodes_expanded,
            "bound_used": self.bound_used,
        }


def search_order(g: Graph) -> list[int]:
    """Edges in order of BFS discovery from a max-degree vertex, component by component."""
    pos = [-1] * g.n
    k = 0
    starts = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    for s in starts:
        if pos[s] != -1:
            continue
        pos[s] = k
        k += 1
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in sorted(g.adj[x], key=lambda w: (-g.degree(w), w)):
                if pos[y] == -1:
                    pos[y] = k
                    k += 1
                    queue.append(y)
    return sorted(range(g.m), key=lambda e: (max(pos[x] for x in g.edges[e]), min(pos[x] for x in g.edges[e]), e))


class _Budget(Exception):
    pass


def acyclic_colorable(g: Graph, kappa: int, budget: int | None = None) -> Decision:
    """Decide whether ``g`` has an acyclic edge coloring with ``kappa`` colors.

    ``budget`` caps the number of search nodes (color assignments tried).
    """
    if g.m == 0:
        return Decision(YES, EdgeColoring(g, kappa), 0)
    if kappa < g.max_degree or kappa <= 0:
        return Decision(NO, None, 0)
    order = search_order(g)
    c = EdgeColoring(g, kappa)
    nodes = 0
    neighbours = [
        sorted({f for x in g.edges[e] for f in g.inc[x] if f != e}) for e in range(g.m)
    ]

    def starved(e: int) -> bool:
        for f in neighbours[e]:
            if not c.colors[f] and not c.free_colors_edge(f):
                return True
        return False

    def dfs(i: int, top: int) -> bool:
        nonlocal nodes
        if i == len(order):
            return True
        e = order[i]
        for alpha in range(1, min(kappa, top + 1) + 1):
            if alpha not in c.free_colors_edge(e) or not c.is_valid(e, alpha):
                continue
            nodes += 1
            if budget is not None and nodes > budget:
                raise _Budget
            c._set(e, alpha)
            if not starved(e) and dfs(i + 1, max(top, alpha)):
                return True
            c._set(e, 0)
        return False

    try:
        found = dfs(0, 0)
    except _Budget:
        return Decision(BUDGET, None, nodes)
    if not found:
        return Decision(NO, None, nodes)
    report = verify(g, c)
    assert report.ok and report.complete, "exact search produced an invalid coloring"
    return Decision(YES, c, nodes)


def chi_a_exact(g: Graph, budget: int | None = None) -> ExactResult:
    """Smallest palette admitting an acyclic edge coloring, found by ascending search.

    ``budget`` applies to the total node count across all palette sizes tried.
    """
    lower = chi_a_lower_bound(g)
    total = 0
    kappa = lower
    while True:
        remaining = None if budget is None else budget - total
        res = acyclic_colorable(g, kappa, remaining)
        total += res.nodes_expanded
        if res.status == YES:
            return ExactResult(kappa, res.certificate, total, lower)
        if res.status == BUDGET:
            # kappa is undecided; any palette of size m is always acyclic-colorable
            raise BudgetExceeded(
                f"node budget {budget} exhausted while deciding kappa={kappa}",
                lower=kappa,
                upper=max(g.m, kappa),
            )
        kappa += 1
