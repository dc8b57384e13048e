"""Charges on a plane graph and their redistribution by a rule set.

Every vertex starts with ``2 deg(v) - 6`` and every face with ``deg(f) - 6``;
on a connected plane graph these add up to -12 by Euler's formula. Rules
move charge from vertices to incident faces, so the total never changes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import DisconnectedInput
from ..planar import PlaneEmbedding
from .identities import verify_identities
from .rules import DegreeClass, DischargeRuleSet, builtin_rules


def fmt(q: Fraction) -> str:
    return str(q)


@dataclass
class ChargeState:
    vertex_charge: dict[int, Fraction]
    face_charge: dict[int, Fraction]

    @property
    def total(self) -> Fraction:
        return sum(self.vertex_charge.values(), Fraction(0)) + sum(self.face_charge.values(), Fraction(0))

    def copy(self) -> ChargeState:
        return ChargeState(dict(self.vertex_charge), dict(self.face_charge))

    def to_dict(self) -> dict:
        return {
            "vertices": {str(v): fmt(q) for v, q in sorted(self.vertex_charge.items())},
            "faces": {str(f): fmt(q) for f, q in sorted(self.face_charge.items())},
        }


@dataclass(frozen=True)
class Transfer:
    sender: int
    face: int
    rule: str
    amount: Fraction

    def to_dict(self) -> dict:
        return {"sender": self.sender, "face": self.face, "rule": self.rule, "amount": fmt(self.amount)}


@dataclass
class AuditReport:
    total_initial: Fraction
    total_final: Fraction
    negatives: list[dict] = field(default_factory=list)
    identity_checks: list[tuple[str, bool]] = field(default_factory=list)
    transfers: int = 0

    @property
    def all_nonnegative(self) -> bool:
        return not self.negatives

    def to_dict(self) -> dict:
        return {
            "total_initial": fmt(self.total_initial),
            "total_final": fmt(self.total_final),
            "negatives": self.negatives,
            "identity_checks": [{"id": i, "pass": ok} for i, ok in self.identity_checks],
            "transfers": self.transfers,
        }


class GraphCorner:
    """A (vertex, face) incidence of an embedded graph, as seen by the rules."""

    def __init__(self, emb: PlaneEmbedding, v: int, face_id: int):
        g = emb.graph
        face = emb.faces[face_id]
        self._g = g
        self._v = v
        self.sender_degree = g.degree(v)
        self.face_degree = face.degree
        verts = face.vertices
        self.face_vertex_degrees = tuple(g.degree(x) for x in verts) if len(set(verts)) == len(verts) else ()
        self._peers = [x for x in dict.fromkeys(verts) if x != v]
        # neighbours joined to v by an edge on this face's boundary
        self._via = {b for a, b in face.darts if a == v} | {a for a, b in face.darts if b == v}

    def _has(self, x: int, cls: DegreeClass) -> bool:
        return any(self._g.degree(y) in cls for y in self._g.adj[x])

    def sender_has_neighbor(self, cls: DegreeClass) -> bool:
        return self._has(self._v, cls)

    def via(self, cls: DegreeClass) -> bool:
        return any(self._g.degree(y) in cls for y in self._via)

    def peer_has_neighbor(self, peer: DegreeClass, cls: DegreeClass) -> bool:
        return any(self._g.degree(p) in peer and self._has(p, cls) for p in self._peers)

    def peer_lacks_neighbor(self, peer: DegreeClass, cls: DegreeClass) -> bool:
        return any(self._g.degree(p) in peer and not self._has(p, cls) for p in self._peers)


def initial_charges(emb: PlaneEmbedding) -> ChargeState:
    g = emb.graph
    if not g.is_connected() or g.n == 0:
        raise DisconnectedInput("initial charges are defined per connected component; audit each component")
    return ChargeState(
        {v: Fraction(2 * g.degree(v) - 6) for v in range(g.n)},
        {f.id: Fraction(f.degree - 6) for f in emb.faces},
    )


def apply_rules(emb: PlaneEmbedding, rules: DischargeRuleSet | None = None) -> tuple[ChargeState, list[Transfer]]:
    """Fire at most one rule per (vertex, incident face) pair; return final charges and the trace."""
    rules = rules or builtin_rules()
    state = initial_charges(emb).copy()
    trace: list[Transfer] = []
    for f in emb.faces:
        for v in dict.fromkeys(f.vertices):
            if f.isolated_vertex is not None:
                continue
            rule = rules.select(GraphCorner(emb, v, f.id))
            if rule is None or rule.amount == 0:
                continue
            state.vertex_charge[v] -= rule.amount
            state.face_charge[f.id] += rule.amount
            trace.append(Transfer(v, f.id, rule.id, rule.amount))
    return state, trace


def audit(emb: PlaneEmbedding, rules: DischargeRuleSet | None = None, identities: bool = True) -> AuditReport:
    rules = rules or builtin_rules()
    start = initial_charges(emb)
    final, trace = apply_rules(emb, rules)
    fired_v: dict[int, list[str]] = {}
    fired_f: dict[int, list[str]] = {}
    for t in trace:
        fired_v.setdefault(t.sender, []).append(t.rule)
        fired_f.setdefault(t.face, []).append(t.rule)
    negatives = []
    for v, q in sorted(final.vertex_charge.items()):
        if q < 0:
            negatives.append({"element": "vertex", "id": v, "degree": emb.graph.degree(v), "charge": fmt(q), "rules": fired_v.get(v, [])})
    for f, q in sorted(final.face_charge.items()):
        if q < 0:
            negatives.append({"element": "face", "id": f, "degree": emb.faces[f].degree, "charge": fmt(q), "rules": fired_f.get(f, [])})
    checks = [(row.id, row.ok) for row in verify_identities()] if identities else []
    return AuditReport(start.total, final.total, negatives, checks, len(trace))
