"""Greedy acyclic edge coloring with Kempe-style repair moves.

Edges are colored one at a time with a valid color. When an edge has no
valid color the solver tries, in order:

1. Kempe repair: for a candidate color ``a`` blocked by an ``(a, b)`` path
   joining the two ends of the edge, swap the maximal ``(b, g)`` path that
   starts at one end (``g`` free there). This moves ``b`` off that end and
   breaks the blocking path. The swap is kept only if it creates no
   two-colored cycle and the edge then has a valid color.
2. Uncolor a neighbouring edge so the stuck edge can be colored, and put the
   neighbour back in the queue.
3. Restart from scratch with a shuffled edge order.

Everything is driven by a seeded ``random.Random``, so a given graph and
config always produce the same outcome.
"""

from __future__ import annotations

import random
import time
from collections import deque
from dataclasses import dataclass, field

from .coloring import EdgeColoring
from .errors import InfeasiblePalette, InvalidParam
from .graph import Graph
from .verify import chi_a_lower_bound, verify

EDGE_ORDERS = ("smallest_last", "input", "random")
SOLVED, EXHAUSTED = "solved", "exhausted"

# cap on Kempe swaps attempted for a single dead end
_SWAPS_PER_DEAD_END = 64


@dataclass
class SolveConfig:
    kappa: int | None = None  # None means max degree + 6
    max_restarts: int = 20
    max_moves_per_edge: int = 50
    seed: int = 0
    edge_order: str = "smallest_last"
    debug: bool = False

    def __post_init__(self):
        if self.edge_order not in EDGE_ORDERS:
            raise InvalidParam(f"edge_order must be one of {EDGE_ORDERS}, got {self.edge_order!r}")
        if self.max_restarts < 0 or self.max_moves_per_edge < 1:
            raise InvalidParam("max_restarts must be >= 0 and max_moves_per_edge >= 1")

    def palette(self, g: Graph) -> int:
        return g.max_degree + 6 if self.kappa is None else self.kappa


@dataclass
class SolveStats:
    assignments: int = 0
    swaps: int = 0
    uncolorings: int = 0
    restarts: int = 0
    wall_time: float = 0.0

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "assignments": self.assignments,
            "swaps": self.swaps,
            "uncolorings": self.uncolorings,
            "restarts": self.restarts,
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 6)
        return out


@dataclass
class SolveOutcome:
    status: str
    kappa: int
    coloring: EdgeColoring | None
    stats: SolveStats = field(default_factory=SolveStats)

    @property
    def solved(self) -> bool:
        return self.status == SOLVED

    def to_dict(self, timing: bool = False) -> dict:
        return {
            "status": self.status,
            "kappa": self.kappa,
            "colors_used": self.coloring.colors_used() if self.coloring else None,
            "coloring": self.coloring.to_dict() if self.coloring else None,
            "stats": self.stats.to_dict(timing),
        }


def smallest_last_order(g: Graph) -> list[int]:
    """Vertices with the repeatedly-removed minimum-degree vertex placed last."""
    deg = list(g.degrees)
    removed = [False] * g.n
    buckets: dict[int, set[int]] = {}
    for v, d in enumerate(deg):
        buckets.setdefault(d, set()).add(v)
    removal = []
    for _ in range(g.n):
        d = min(k for k, b in buckets.items() if b)
        v = min(buckets[d])
        buckets[d].discard(v)
        removed[v] = True
        removal.append(v)
        for w in g.adj[v]:
            if not removed[w]:
                buckets[deg[w]].discard(w)
                deg[w] -= 1
                buckets.setdefault(deg[w], set()).add(w)
    return removal[::-1]


def edge_order(g: Graph, how: str, rng: random.Random) -> list[int]:
    if how == "input":
        return list(range(g.m))
    if how == "random":
        order = list(range(g.m))
        rng.shuffle(order)
        return order
    pos = [0] * g.n
    for i, v in enumerate(smallest_last_order(g)):
        pos[v] = i
    return sorted(range(g.m), key=lambda e: (max(pos[x] for x in g.edges[e]), min(pos[x] for x in g.edges[e]), e))


class _Run:
    """One coloring attempt with a fixed edge order."""

    def __init__(self, g: Graph, kappa: int, cfg: SolveConfig, rng: random.Random, stats: SolveStats):
        self.g = g
        self.c = EdgeColoring(g, kappa)
        self.c.debug = cfg.debug
        self.cfg = cfg
        self.rng = rng
        self.stats = stats

    def score(self, e: int, alpha: int) -> int:
        """How many uncolored neighbouring edges would gain ``alpha`` as a common color."""
        g, c = self.g, self.c
        total = 0
        for x in g.edges[e]:
            for f in g.inc[x]:
                if f != e and not c.colors[f] and c.edge_with(g.other(f, x), alpha) is not None:
                    total += 1
        return total

    def color_best(self, e: int) -> bool:
        valid = self.c.valid_colors(e)
        if not valid:
            return False
        alpha = min(valid, key=lambda a: (self.score(e, a), a))
        self.c.assign(e, alpha)
        self.stats.assignments += 1
        return True

    def _locally_acyclic(self, edges) -> bool:
        """No two-colored cycle passes through any of ``edges``."""
        g, c = self.g, self.c
        for f in edges:
            x, y = g.edges[f]
            cf = c.colors[f]
            for d in c.used_colors(x) & c.used_colors(y):
                if d != cf and c.maximal_dichromatic_path(x, cf, d).is_cycle:
                    return False
        return True

    def kempe_repair(self, e: int) -> bool:
        g, c = self.g, self.c
        u, v = g.edges[e]
        tries = 0
        for alpha in sorted(c.candidate_colors(e)):
            for beta in sorted(c.used_colors(u) & c.used_colors(v)):
                blocking = c.maximal_dichromatic_path(u, alpha, beta)
                if v not in blocking.vertices:
                    continue
                for end in (v, u):
                    for gamma in sorted(c.free_colors(end) - {alpha}):
                        if tries >= _SWAPS_PER_DEAD_END:
                            return False
                        tries += 1
                        path = c.maximal_dichromatic_path(end, beta, gamma)
                        c.swap_path(path)
                        self.stats.swaps += 1
                        if self._locally_acyclic(path.edges) and self.color_best(e):
                            return True
                        c.swap_path(path)
                        self.stats.swaps += 1
        return False

    def release_neighbour(self, e: int, attempt: int) -> int | None:
        """Uncolor a neighbouring edge so that ``e`` gets a valid color; returns it."""
        g, c = self.g, self.c
        options = []
        for x in g.edges[e]:
            for f in g.inc[x]:
                if f == e or not c.colors[f]:
                    continue
                old = c.colors[f]
                c._set(f, 0)
                valid = c.valid_colors(e)
                c._set(f, old)
                if valid:
                    options.append(f)
        if not options:
            return None
        options.sort()
        # first attempt is deterministic-lowest id; later ones randomize to escape loops
        f = options[0] if attempt == 0 else self.rng.choice(options)
        c.unassign(f)
        self.stats.uncolorings += 1
        self.color_best(e)
        return f

    def run(self, order: list[int]) -> bool:
        queue = deque(order)
        moves: dict[int, int] = {}
        budget = self.cfg.max_moves_per_edge * max(1, self.g.m)
        while queue:
            e = queue.popleft()
            if self.c.colors[e]:
                continue
            if self.color_best(e):
                continue
            if self.kempe_repair(e):
                continue
            k = moves.get(e, 0)
            if k >= self.cfg.max_moves_per_edge or budget <= 0:
                return False
            moves[e] = k + 1
            budget -= 1
            f = self.release_neighbour(e, k)
            if f is None:
                return False
            queue.appendleft(f)
        return True


def solve(g: Graph, cfg: SolveConfig | None = None) -> SolveOutcome:
    cfg = cfg or SolveConfig()
    kappa = cfg.palette(g)
    lower = chi_a_lower_bound(g)
    if kappa < lower:
        raise InfeasiblePalette(f"kappa={kappa} is below the lower bound {lower}")
    start = time.perf_counter()
    rng = random.Random(cfg.seed)
    stats = SolveStats()
    order = edge_order(g, cfg.edge_order, rng)
    result = None
    for attempt in range(cfg.max_restarts + 1):
        if attempt:
            stats.restarts += 1
            order = list(range(g.m))
            rng.shuffle(order)
        run = _Run(g, kappa, cfg, rng, stats)
        if run.run(order):
            result = run.c
            break
    stats.wall_time = time.perf_counter() - start
    if result is None:
        return SolveOutcome(EXHAUSTED, kappa, None, stats)
    report = verify(g, result)
    assert report.ok and report.complete, "solver produced a coloring that fails verification"
    return SolveOutcome(SOLVED, kappa, result, stats)


def solve_minimize(g: Graph, cfg: SolveConfig | None = None) -> tuple[int | None, EdgeColoring | None]:
    """Descend the palette from max degree + 6 while the solver keeps succeeding."""
    cfg = cfg or SolveConfig()
    lower = chi_a_lower_bound(g)
    best: tuple[int | None, EdgeColoring | None] = (None, None)
    kappa = g.max_degree + 6
    while kappa >= lower:
        out = solve(g, SolveConfig(kappa, cfg.max_restarts, cfg.max_moves_per_edge, cfg.seed, cfg.edge_order, cfg.debug))
        if not out.solved:
            break
        used = out.coloring.colors_used()
        best = (used, out.coloring)
        kappa = used - 1
    return best
