"""Structural lemmas about minimal counterexamples, as executable predicates.

A graph G with maximum degree at most kappa is *kappa-deletion-minimal* when
it has no acyclic edge coloring with kappa colors but every proper subgraph
does. Because a coloring of a graph restricts to a coloring of any subgraph,
it is enough to check the subgraphs ``G - e`` for each edge ``e``: every other
proper subgraph of a graph without isolated vertices sits inside one of them.

:func:`find_deletion_minimal` scans a stream of graphs for such graphs and
returns replayable certificates; :func:`check_lemma` evaluates one lemma on a
certified graph and reports a clause-level witness when it fails.
"""

from __future__ import annotations

import logging
import re
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from itertools import combinations

from .coloring import EdgeColoring
from .errors import BudgetExceeded, InvalidParam, PreconditionUnverified, UnknownLemmaId
from .exact import NO, YES, acyclic_colorable
from .graph import Graph
from .verify import verify

log = logging.getLogger(__name__)

HOLDS, FAILS, NOT_APPLICABLE = "holds", "fails", "not-applicable"

# lemmas proved for minor-minimal graphs; checked here on deletion-minimal ones only
MINOR_CAVEAT = "stated for kappa-minimal graphs; checked on a deletion-minimal certificate"


# -- kappa rules -------------------------------------------------------------


def parse_kappa_rule(text: str) -> Callable[[int], int]:
    """``"delta"``, ``"delta+2"``, ``"delta-1"`` or a plain integer."""
    s = text.strip().lower().replace(" ", "")
    if re.fullmatch(r"\d+", s):
        k = int(s)
        return lambda delta: k
    m = re.fullmatch(r"(?:delta|d|Δ)([+-]\d+)?", s)
    if not m:
        raise InvalidParam(f"bad kappa rule {text!r}; use e.g. 'delta', 'delta+2' or an integer")
    off = int(m.group(1) or 0)
    return lambda delta: delta + off


def _rule(kappa_rule) -> Callable[[int], int]:
    if callable(kappa_rule):
        return kappa_rule
    if isinstance(kappa_rule, int):
        return lambda delta: kappa_rule
    return parse_kappa_rule(str(kappa_rule))


# -- certificates --------------------------------------------------------------


@dataclass
class MinimalityCertificate:
    graph: Graph
    kappa: int
    nodes_for_no: int  # search nodes the exact solver needed to refute G
    deletions: tuple[tuple[tuple[int, int], tuple[int, ...]], ...]  # (removed edge, coloring of G - e)

    def coloring_without(self, edge: tuple[int, int]) -> EdgeColoring:
        """The stored coloring of ``G - uv`` lifted to G with ``uv`` left uncolored."""
        g = self.graph
        for removed, colors in self.deletions:
            if removed == tuple(sorted(edge)):
                e = g.edge_id(*removed)
                return EdgeColoring.from_colors(g, self.kappa, list(colors[:e]) + [0] + list(colors[e:]))
        raise KeyError(edge)

    def replay(self, budget: int | None = None) -> bool:
        """Re-derive the evidence: G is not kappa-colorable, and every stored G - e coloring verifies."""
        g = self.graph
        if acyclic_colorable(g, self.kappa, budget).status != NO:
            return False
        if len(self.deletions) != g.m:
            return False
        for removed, colors in self.deletions:
            h = g.without_edge(g.edge_id(*removed))
            rep = verify(h, list(colors), self.kappa)
            if not (rep.ok and rep.complete):
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "n": self.graph.n,
            "edges": [list(e) for e in self.graph.edges],
            "kappa": self.kappa,
            "max_degree": self.graph.max_degree,
            "nodes_for_no": self.nodes_for_no,
            "deletions": [{"edge": list(e), "colors": list(c)} for e, c in self.deletions],
        }


@dataclass
class MinimalSearch:
    """Certificates found in a scan, plus what was skipped and why."""

    certificates: list[MinimalityCertificate] = field(default_factory=list)
    scanned: int = 0
    skipped: list[dict] = field(default_factory=list)

    def __iter__(self):
        return iter(self.certificates)

    def __len__(self) -> int:
        return len(self.certificates)

    def to_dict(self) -> dict:
        return {
            "scanned": self.scanned,
            "found": len(self.certificates),
            "empty": not self.certificates,
            "skipped": self.skipped,
            "certificates": [c.to_dict() for c in self.certificates],
        }


def find_deletion_minimal(
    graphs: Iterable[Graph],
    kappa_rule: Callable[[int], int] | str | int = "delta",
    budget: int | None = None,
) -> MinimalSearch:
    """Scan ``graphs`` for kappa-deletion-minimal ones, kappa = kappa_rule(max degree).

    Disconnected graphs and graphs with isolated vertices are skipped: a
    component (or the graph minus the isolated vertex) would be a smaller
    counterexample. Graphs whose exact search runs past ``budget`` nodes are
    logged and listed under ``skipped``.
    """
    rule = _rule(kappa_rule)
    out = MinimalSearch()

    def colorable(h: Graph, kappa: int) -> tuple[bool, object]:
        dec = acyclic_colorable(h, kappa, budget)
        if dec.status not in (YES, NO):
            raise BudgetExceeded(f"exact search exceeded {budget} nodes")
        return dec.status == YES, dec

    for g in graphs:
        out.scanned += 1
        if g.m == 0 or g.min_degree == 0 or not g.is_connected():
            continue
        kappa = rule(g.max_degree)
        if kappa < g.max_degree:
            continue
        try:
            ok, dec = colorable(g, kappa)
            if ok:
                continue
            deletions = []
            for e in range(g.m):
                h = g.without_edge(e)
                ok_h, dec_h = colorable(h, kappa)
                if not ok_h:
                    break
                deletions.append((g.edges[e], tuple(dec_h.certificate.colors)))
            else:
                out.certificates.append(MinimalityCertificate(g, kappa, dec.nodes_expanded, tuple(deletions)))
        except BudgetExceeded as exc:
            log.warning("skipping graph %s: %s", g.edges, exc)
            out.skipped.append({"edges": [list(e) for e in g.edges], "kappa": kappa, "reason": str(exc)})
    return out


# -- verdicts ------------------------------------------------------------------


@dataclass
class LemmaVerdict:
    lemma_id: str
    graph: Graph
    status: str
    witness: dict | None = None
    caveat: str | None = None
    vacuous: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def holds(self) -> bool | None:
        return {HOLDS: True, FAILS: False}.get(self.status)

    def to_dict(self) -> dict:
        return {
            "lemma": self.lemma_id,
            "status": self.status,
            "holds": self.holds,
            "vacuous": self.vacuous,
            "witness": self.witness,
            "caveat": self.caveat,
            "notes": self.notes,
            "edges": [list(e) for e in self.graph.edges],
        }


class _Ctx:
    def __init__(self, g: Graph, kappa: int):
        self.g = g
        self.kappa = kappa
        self.delta = g.max_degree
        self.deg = g.degrees

    def nbrs(self, v: int) -> list[int]:
        return sorted(self.g.adj[v])

    def count_at_least(self, v: int, bound: int) -> int:
        return sum(1 for x in self.g.adj[v] if self.deg[x] >= bound)


def _two_vertex_pairs(ctx: _Ctx):
    """(v0, w, v) for every 2-vertex v0 and each ordering of its neighbours."""
    for v0 in range(ctx.g.n):
        if ctx.deg[v0] == 2:
            a, b = ctx.nbrs(v0)
            yield v0, a, b
            yield v0, b, a


def _lemma_delta2(ctx: _Ctx) -> tuple[str, dict | None, list[str]]:
    g = ctx.g
    low = [v for v in range(g.n) if ctx.deg[v] < 2]
    if low:
        return FAILS, {"clause": "min degree >= 2", "vertex": low[0], "degree": ctx.deg[low[0]]}, []
    if not g.is_biconnected():
        cut = sorted(g.cut_vertices())
        return FAILS, {"clause": "2-connected", "cut_vertex": cut[0] if cut else None}, []
    return HOLDS, None, []


def _lemma_2_in_triangle(ctx: _Ctx):
    for v0 in range(ctx.g.n):
        if ctx.deg[v0] == 2:
            a, b = ctx.nbrs(v0)
            if not ctx.g.has_edge(a, b):
                return FAILS, {"clause": "2-vertex in a triangle", "vertex": v0, "neighbors": [a, b]}, []
    return HOLDS, None, []


def _lemma_2_plus_edge(ctx: _Ctx):
    k, deg, notes = ctx.kappa, ctx.deg, []
    for v0, w, v in _two_vertex_pairs(ctx):
        need, floor = k - deg[w] + 1, k - deg[v] + 2
        have = ctx.count_at_least(v, floor)
        base = {"v0": v0, "w": w, "v": v}
        if have < need:
            return FAILS, {**base, "clause": "main", "count": have, "needed": need, "degree_floor": floor}, notes
        if k >= deg[v] + 1 and ctx.g.has_edge(w, v):
            if have < need + 1:
                return FAILS, {**base, "clause": "A.count", "count": have, "needed": need + 1}, notes
            if deg[v] < k - deg[w] + 3:
                return FAILS, {**base, "clause": "A.degree", "degree": deg[v], "needed": k - deg[w] + 3}, notes
        if k >= ctx.delta + 2 and ctx.count_at_least(v, k - ctx.delta + 2) == k - ctx.delta + 1:
            bound = deg[v] + ctx.delta - k - 3
            if bound < 0:
                notes.append(f"B: two-vertex bound {bound} is negative at v={v}")
            twos = sum(1 for x in ctx.g.adj[v] if deg[x] == 2)
            if twos > bound:
                return FAILS, {**base, "clause": "B.twos", "two_vertices": twos, "bound": bound}, notes
            if deg[v] < k - ctx.delta + 4:
                return FAILS, {**base, "clause": "B.degree", "degree": deg[v], "needed": k - ctx.delta + 4}, notes
    return HOLDS, None, notes


def _nbrs_at_least(ctx: _Ctx, small: int, bound: int, clause: str):
    for v in range(ctx.g.n):
        if ctx.deg[v] == small:
            for x in ctx.nbrs(v):
                if ctx.deg[x] < bound:
                    return FAILS, {"clause": clause, "vertex": v, "neighbor": x, "degree": ctx.deg[x], "needed": bound}, []
    return HOLDS, None, []


def _lemma_2_plus_plus_edge(ctx: _Ctx):
    return _nbrs_at_least(ctx, 2, ctx.kappa - ctx.delta + 4, "neighbors of a 2-vertex")


def _lemma_3_plus_vertex(ctx: _Ctx):
    return _nbrs_at_least(ctx, 3, ctx.kappa - ctx.delta + 2, "neighbors of a 3-vertex")


def _lemma_3_plus_plus_edge(ctx: _Ctx):
    return _nbrs_at_least(ctx, 3, ctx.kappa - ctx.delta + 3, "neighbors of a 3-vertex")


def _three_vertex_triangles(ctx: _Ctx, w_degree: int):
    """(w0, w, w1, w2): w0 a 3-vertex, w its neighbour of the given degree adjacent to both others."""
    g = ctx.g
    for w0 in range(g.n):
        if ctx.deg[w0] != 3:
            continue
        for w in ctx.nbrs(w0):
            if ctx.deg[w] != w_degree:
                continue
            w1, w2 = [x for x in ctx.nbrs(w0) if x != w]
            if g.has_edge(w, w1) and g.has_edge(w, w2):
                yield w0, w, w1, w2


def _lemma_l9(ctx: _Ctx):
    d = ctx.delta
    for w0, w, w1, w2 in _three_vertex_triangles(ctx, ctx.kappa - d + 3):
        for x in (w1, w2):
            if ctx.deg[x] != d:
                return FAILS, {"clause": "deg(w1) = deg(w2) = max degree", "w0": w0, "w": w, "vertex": x, "degree": ctx.deg[x]}, []
        low = [x for x in ctx.nbrs(w) if ctx.deg[x] < d - 1]
        if low != [w0]:
            return FAILS, {"clause": "only w0 below max degree - 1", "w0": w0, "w": w, "low_neighbors": low}, []
    return HOLDS, None, []


def _lemma_3_10_vertex(ctx: _Ctx):
    k, d = ctx.kappa, ctx.delta
    ell = k - d + 4
    for w0, w, _w1, _w2 in _three_vertex_triangles(ctx, ell):
        rest = [x for x in ctx.nbrs(w) if x != w0]
        for xs in combinations(rest, 4):
            degs = [ctx.deg[x] for x in xs]
            if (
                all(x <= 5 for x in degs)
                and sum(degs) <= k - d + 9
                and all(a + b <= d for a, b in combinations(degs, 2))
                and sum(1 for x in degs if x <= 4) >= 2
            ):
                return FAILS, {"clause": "no 4-set X*", "w0": w0, "w": w, "x_star": list(xs), "degrees": degs}, []
    return HOLDS, None, []


def _lemma_4sum(ctx: _Ctx):
    g, k, d, deg = ctx.g, ctx.kappa, ctx.delta, ctx.deg
    for w0 in range(g.n):
        if deg[w0] != 4:
            continue
        total = sum(deg[x] for x in g.adj[w0])
        for w in ctx.nbrs(w0):
            if deg[w] <= k - d and total < 2 * k + 4:
                return FAILS, {"clause": "a", "w0": w0, "w": w, "sum": total, "needed": 2 * k + 4}, []
            common = sorted(set(g.adj[w]) & set(g.adj[w0]))
            if deg[w] <= k - d + 1 and len(common) >= 2:
                if total < 2 * k + 5:
                    return FAILS, {"clause": "b", "w0": w0, "w": w, "sum": total, "needed": 2 * k + 5}, []
                if total == 2 * k + 5:
                    # equality rider: neighbours of w outside w0 and the two triangle mates are 6+
                    for w1, w2 in combinations(common, 2):
                        others = [x for x in ctx.nbrs(w) if x not in (w0, w1, w2)]
                        small = [x for x in others if deg[x] < 6]
                        if not small:
                            break
                    else:
                        return FAILS, {"clause": "b.equality", "w0": w0, "w": w, "small_neighbors": small}, []
    return HOLDS, None, []


def _lemma_5sum(ctx: _Ctx):
    g, k, d, deg = ctx.g, ctx.kappa, ctx.delta, ctx.deg
    for u in range(g.n):
        if deg[u] != 5:
            continue
        total = sum(deg[x] for x in g.adj[u])
        for w in ctx.nbrs(u):
            for w1 in ctx.nbrs(u):
                if w1 == w or not g.has_edge(w, w1):
                    continue
                for clause, cond in (
                    ("a", deg[w] <= k - d and deg[w1] <= 6),
                    ("b", deg[w] <= k - d - 1 and deg[w1] <= 7),
                ):
                    if cond and total < 2 * k + 7:
                        return FAILS, {"clause": clause, "u": u, "w": w, "w1": w1, "sum": total, "needed": 2 * k + 7}, []
    return HOLDS, None, []


@dataclass(frozen=True)
class LemmaSpec:
    id: str
    statement: str
    applies: Callable[[int, int], bool]  # (kappa, max degree) -> side conditions met
    check: Callable
    minor_only: bool = False
    subject_degree: int | None = None  # vertex degree the lemma talks about, for vacuity


LEMMAS: dict[str, LemmaSpec] = {
    s.id: s
    for s in (
        LemmaSpec("delta2", "2-connected with minimum degree at least 2", lambda k, d: True, _lemma_delta2),
        LemmaSpec(
            "2InTriangle", "every 2-vertex lies in a triangle", lambda k, d: k >= d + 1, _lemma_2_in_triangle, True, 2
        ),
        LemmaSpec(
            "2+edge",
            "a neighbour v of a 2-vertex with other neighbour w has at least kappa - deg(w) + 1 "
            "neighbours of degree at least kappa - deg(v) + 2; clauses (A) and (B) strengthen this",
            lambda k, d: True,
            _lemma_2_plus_edge,
            subject_degree=2,
        ),
        LemmaSpec(
            "2++edge",
            "neighbours of a 2-vertex have degree at least kappa - max degree + 4",
            lambda k, d: k >= d + 2,
            _lemma_2_plus_plus_edge,
            subject_degree=2,
        ),
        LemmaSpec(
            "3+vertex",
            "neighbours of a 3-vertex have degree at least kappa - max degree + 2",
            lambda k, d: k >= d + 2,
            _lemma_3_plus_vertex,
            subject_degree=3,
        ),
        LemmaSpec(
            "3++edge",
            "neighbours of a 3-vertex have degree at least kappa - max degree + 3",
            lambda k, d: k >= d + 2,
            _lemma_3_plus_plus_edge,
            True,
            3,
        ),
        LemmaSpec(
            "L9",
            "a 3-vertex in two triangles with a (kappa - max degree + 3)-vertex w: the mates have max degree "
            "and w has exactly one neighbour below max degree - 1",
            lambda k, d: k >= d + 2,
            _lemma_l9,
            subject_degree=3,
        ),
        LemmaSpec(
            "3-10vertex",
            "a 3-vertex in two triangles with an l-vertex w (l = kappa - max degree + 4, 8 <= l <= 10): "
            "no four small neighbours of w form the forbidden set",
            lambda k, d: 8 <= k - d + 4 <= 10,
            _lemma_3_10_vertex,
            subject_degree=3,
        ),
        LemmaSpec(
            "4Sum",
            "degree sums around a 4-vertex with a small neighbour, with the equality rider",
            lambda k, d: k >= d + 2,
            _lemma_4sum,
            subject_degree=4,
        ),
        LemmaSpec(
            "5Sum",
            "degree sums around a 5-vertex in a triangle with small neighbours",
            lambda k, d: k >= d + 5,
            _lemma_5sum,
            subject_degree=5,
        ),
    )
}

LEMMA_IDS = tuple(LEMMAS)


def check_lemma(lemma_id: str, g: Graph, cert: MinimalityCertificate) -> LemmaVerdict:
    spec = LEMMAS.get(lemma_id)
    if spec is None:
        raise UnknownLemmaId(f"unknown lemma {lemma_id!r}; known: {', '.join(LEMMA_IDS)}")
    if not cert.graph.same_edge_set(g) or cert.graph.n != g.n:
        raise PreconditionUnverified("certificate is for a different graph")
    caveat = MINOR_CAVEAT if spec.minor_only else None
    if not spec.applies(cert.kappa, g.max_degree):
        return LemmaVerdict(lemma_id, g, NOT_APPLICABLE, caveat=caveat)
    status, witness, notes = spec.check(_Ctx(g, cert.kappa))
    vacuous = spec.subject_degree is not None and spec.subject_degree not in g.degrees
    return LemmaVerdict(lemma_id, g, status, witness, caveat, vacuous, notes)


def check_all(cert: MinimalityCertificate, ids: Iterable[str] | None = None) -> list[LemmaVerdict]:
    return [check_lemma(i, cert.graph, cert) for i in (ids or LEMMA_IDS)]


# -- Fact 2 ------------------------------------------------------------------


@dataclass
class Fact2Verdict:
    edge: tuple[int, int]
    s: int
    no_valid_candidate: bool
    lhs: int
    rhs: int
    relation: str  # "=" when the common set is empty, ">=" otherwise

    @property
    def holds(self) -> bool:
        degree_ok = self.lhs == self.rhs if self.relation == "=" else self.lhs >= self.rhs
        return self.no_valid_candidate and degree_ok

    def to_dict(self) -> dict:
        return {
            "edge": list(self.edge),
            "s": self.s,
            "no_valid_candidate": self.no_valid_candidate,
            "lhs": self.lhs,
            "relation": self.relation,
            "rhs": self.rhs,
            "holds": self.holds,
        }


def check_fact2(
    g: Graph,
    kappa: int,
    uv: tuple[int, int],
    phi: EdgeColoring,
    cert: MinimalityCertificate | None = None,
) -> Fact2Verdict:
    """Check both conclusions for edge ``uv`` given a coloring of G that leaves only ``uv`` uncolored."""
    u, v = uv
    if not g.has_edge(u, v):
        raise PreconditionUnverified(f"{uv} is not an edge")
    e = g.edge_id(u, v)
    if phi.graph is not g and not phi.graph.same_edge_set(g):
        raise PreconditionUnverified("coloring belongs to a different graph")
    uncolored = [f for f in range(g.m) if not phi.colors[f]]
    rep = verify(g, phi.colors, kappa)
    if uncolored != [e] or not rep.ok:
        raise PreconditionUnverified("phi must be an acyclic coloring of G - uv with uv uncolored")
    if cert is not None and (cert.kappa != kappa or not cert.graph.same_edge_set(g)):
        raise PreconditionUnverified("certificate does not match (G, kappa)")
    no_valid = not any(phi.is_valid(e, a) for a in phi.candidate_colors(e))
    common = phi.used_colors(u) & phi.used_colors(v)
    s = len(common)
    deg = g.degrees
    if s == 0:
        return Fact2Verdict((u, v), 0, no_valid, deg[u] + deg[v], kappa + 2, "=")
    lhs = deg[u] + deg[v] + sum(deg[w] for w in phi.w_set(u, v))
    return Fact2Verdict((u, v), s, no_valid, lhs, kappa + 2 * s + 2, ">=")


def check_fact2_all(cert: MinimalityCertificate) -> list[Fact2Verdict]:
    """Fact 2 on every edge of a certified graph, both orientations, using the stored colorings."""
    out = []
    for edge in cert.graph.edges:
        phi = cert.coloring_without(edge)
        for uv in (edge, edge[::-1]):
            out.append(check_fact2(cert.graph, cert.kappa, uv, phi, cert))
    return out
