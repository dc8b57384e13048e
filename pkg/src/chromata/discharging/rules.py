"""Discharging rules as data.

A rule file has one rule per line::

    id: R1v ; sender: 4 & nbr=5- ; face: any & via=5- ; amount: 4/5 ; anchor: 2 - 2*4/5 - 2*1/5 = 0

``sender`` is a degree class optionally followed by ``nbr=C`` (the sender
has a neighbour in class C) or ``nonbr=C`` (it has none). ``face`` is
``any``, ``4+`` (faces of degree at least 4) or a triangle pattern such as
``(4,7-8,10+)``, optionally followed by ``via=C`` / ``novia=C`` (a boundary
edge of the face joins the sender to a neighbour in class C) and
``peer[C].nbr=D`` / ``peer[C].nonbr=D`` (another vertex of the face, in class
C, does or does not have a neighbour in class D). ``id`` is optional;
blank lines and ``#`` comments are ignored.

Degree classes are ``k``, ``k+``, ``k-`` or ``a-b``. When several rows match
a (sender, face) pair the most specific one wins: triangle patterns beat
``4+`` which beats ``any``, and among those more conditions beat fewer. Two
matching rows of equal specificity raise :class:`AmbiguousRuleMatch`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Protocol

from ..errors import AmbiguousRuleMatch, ParseError

Rational = Fraction


@dataclass(frozen=True)
class DegreeClass:
    lo: int
    hi: int | None  # None means unbounded

    def __contains__(self, d: int) -> bool:
        return d >= self.lo and (self.hi is None or d <= self.hi)

    def __str__(self) -> str:
        if self.hi is None:
            return f"{self.lo}+"
        if self.lo == self.hi:
            return str(self.lo)
        if self.lo == 0:
            return f"{self.hi}-"
        return f"{self.lo}-{self.hi}"

    @classmethod
    def parse(cls, text: str) -> DegreeClass:
        t = text.strip()
        m = re.fullmatch(r"(\d+)\+", t)
        if m:
            return cls(int(m.group(1)), None)
        m = re.fullmatch(r"(\d+)-", t)
        if m:
            return cls(0, int(m.group(1)))
        m = re.fullmatch(r"(\d+)-(\d+)", t)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if lo > hi:
                raise ParseError(f"empty degree range {t!r}")
            return cls(lo, hi)
        if t.isdigit():
            return cls(int(t), int(t))
        raise ParseError(f"bad degree class {text!r}")


class Corner(Protocol):
    """What a rule may ask about one (sender, face) incidence."""

    sender_degree: int
    face_degree: int
    # degrees of the face's vertices, sender included; only consulted for triangles
    face_vertex_degrees: tuple[int, ...]

    def sender_has_neighbor(self, cls: DegreeClass) -> bool: ...

    def via(self, cls: DegreeClass) -> bool: ...

    def peer_has_neighbor(self, peer: DegreeClass, cls: DegreeClass) -> bool | None: ...

    def peer_lacks_neighbor(self, peer: DegreeClass, cls: DegreeClass) -> bool | None: ...


@dataclass(frozen=True)
class Condition:
    kind: str  # nbr, nonbr, via, novia, peer_nbr, peer_nonbr
    cls: DegreeClass
    peer: DegreeClass | None = None

    def holds(self, corner: Corner) -> bool:
        if self.kind == "nbr":
            return corner.sender_has_neighbor(self.cls)
        if self.kind == "nonbr":
            return not corner.sender_has_neighbor(self.cls)
        if self.kind == "via":
            return corner.via(self.cls)
        if self.kind == "novia":
            return not corner.via(self.cls)
        if self.kind == "peer_nbr":
            return bool(corner.peer_has_neighbor(self.peer, self.cls))
        if self.kind == "peer_nonbr":
            return bool(corner.peer_lacks_neighbor(self.peer, self.cls))
        raise AssertionError(self.kind)

    def __str__(self) -> str:
        if self.kind.startswith("peer_"):
            return f"peer[{self.peer}].{self.kind[5:]}={self.cls}"
        return f"{self.kind}={self.cls}"


@dataclass(frozen=True)
class DischargeRule:
    id: str
    sender: DegreeClass
    sender_conditions: tuple[Condition, ...]
    face: str  # "any", "4+" or "tri"
    pattern: tuple[DegreeClass, ...]  # triangle pattern when face == "tri"
    face_conditions: tuple[Condition, ...]
    amount: Fraction
    anchor: str

    @property
    def specificity(self) -> tuple[int, int]:
        level = {"any": 0, "4+": 1, "tri": 2}[self.face]
        return level, len(self.sender_conditions) + len(self.face_conditions)

    def face_text(self) -> str:
        if self.face == "tri":
            return "(" + ",".join(str(c) for c in self.pattern) + ")"
        return self.face

    def matches(self, corner: Corner) -> bool:
        if corner.sender_degree not in self.sender:
            return False
        if self.face == "4+" and corner.face_degree < 4:
            return False
        if self.face == "tri":
            if corner.face_degree != 3 or len(corner.face_vertex_degrees) != 3:
                return False
            if not pattern_matches(self.pattern, corner.face_vertex_degrees):
                return False
        return all(c.holds(corner) for c in self.sender_conditions + self.face_conditions)

    def to_line(self) -> str:
        sender = " & ".join([str(self.sender)] + [str(c) for c in self.sender_conditions])
        face = " & ".join([self.face_text()] + [str(c) for c in self.face_conditions])
        return f"id: {self.id} ; sender: {sender} ; face: {face} ; amount: {self.amount} ; anchor: {self.anchor}"


def pattern_matches(pattern: tuple[DegreeClass, ...], degrees: tuple[int, ...]) -> bool:
    return any(all(d in c for d, c in zip(perm, pattern)) for perm in permutations(degrees))


@dataclass(frozen=True)
class DischargeRuleSet:
    rules: tuple[DischargeRule, ...]

    def __iter__(self):
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def select(self, corner: Corner) -> DischargeRule | None:
        """The most specific matching rule, or None when nothing matches."""
        hits = [r for r in self.rules if r.matches(corner)]
        if not hits:
            return None
        top = max(r.specificity for r in hits)
        best = sorted((r for r in hits if r.specificity == top), key=lambda r: r.id)
        if len(best) > 1:
            raise AmbiguousRuleMatch(
                "rules " + ", ".join(r.id for r in best) + " all match with equal specificity",
                rule_ids=[r.id for r in best],
                anchors=[r.anchor for r in best],
            )
        return best[0]

    def amount(self, corner: Corner) -> Fraction:
        rule = self.select(corner)
        return rule.amount if rule else Fraction(0)

    def max_amount_for(self, degree: int) -> Fraction:
        return max((r.amount for r in self.rules if degree in r.sender), default=Fraction(0))

    def to_text(self) -> str:
        return "\n".join(r.to_line() for r in self.rules) + "\n"


# -- parsing ---------------------------------------------------------------------

_PEER = re.compile(r"peer\[([^\]]+)\]\.(nbr|nonbr)=(.+)")


def _condition(text: str, allowed: set[str]) -> Condition:
    t = text.strip()
    m = _PEER.fullmatch(t)
    if m:
        kind = "peer_" + m.group(2)
        if kind not in allowed:
            raise ParseError(f"condition {t!r} not allowed here")
        return Condition(kind, DegreeClass.parse(m.group(3)), DegreeClass.parse(m.group(1)))
    if "=" not in t:
        raise ParseError(f"bad condition {t!r}")
    kind, cls = t.split("=", 1)
    kind = kind.strip()
    if kind not in allowed:
        raise ParseError(f"condition {t!r} not allowed here")
    return Condition(kind, DegreeClass.parse(cls))


def parse_rule(line: str, default_id: str) -> DischargeRule:
    fields: dict[str, str] = {}
    for part in line.split(";"):
        if not part.strip():
            continue
        if ":" not in part:
            raise ParseError(f"field without ':' in {part!r}")
        key, value = part.split(":", 1)
        key = key.strip()
        if key in fields:
            raise ParseError(f"duplicate field {key!r}")
        fields[key] = value.strip()
    for key in ("sender", "face", "amount"):
        if key not in fields:
            raise ParseError(f"rule is missing '{key}'")
    unknown = set(fields) - {"id", "sender", "face", "amount", "anchor"}
    if unknown:
        raise ParseError(f"unknown fields {sorted(unknown)}")

    s_parts = [p.strip() for p in fields["sender"].split("&")]
    sender = DegreeClass.parse(s_parts[0])
    s_conds = tuple(_condition(p, {"nbr", "nonbr"}) for p in s_parts[1:])

    f_parts = [p.strip() for p in fields["face"].split("&")]
    head = f_parts[0]
    pattern: tuple[DegreeClass, ...] = ()
    if head in ("any", "4+"):
        face = head
    elif head.startswith("(") and head.endswith(")"):
        face = "tri"
        pattern = tuple(DegreeClass.parse(x) for x in head[1:-1].split(","))
        if len(pattern) != 3:
            raise ParseError(f"triangle pattern needs three classes: {head!r}")
    else:
        raise ParseError(f"bad face selector {head!r}")
    f_conds = tuple(_condition(p, {"via", "novia", "peer_nbr", "peer_nonbr"}) for p in f_parts[1:])

    try:
        amount = Fraction(fields["amount"])
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad amount {fields['amount']!r}") from None
    if amount < 0:
        raise ParseError("amounts must be non-negative")
    return DischargeRule(fields.get("id", default_id), sender, s_conds, face, pattern, f_conds, amount, fields.get("anchor", ""))


def parse_rules(text: str) -> DischargeRuleSet:
    rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rules.append(parse_rule(line, f"row{lineno}"))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    ids = [r.id for r in rules]
    if len(set(ids)) != len(ids):
        raise ParseError("duplicate rule ids")
    return DischargeRuleSet(tuple(rules))


# Vertex sends for the Delta+6 argument. 4-vertices send by their neighbourhood
# (R1-R3) to every face; larger vertices send fixed amounts to 4+-faces (R5,
# R6) and table amounts to triangles (R4). Each anchor is the charge line the
# amount balances.
BUILTIN_RULES_TEXT = """\
id: R0 ; sender: 3 ; face: any ; amount: 0 ; anchor: 3-vertex: 2*3 - 6 = 0
id: R1v ; sender: 4 & nbr=5- ; face: any & via=5- ; amount: 4/5 ; anchor: 4-vertex: 2 - 2*4/5 - 2*1/5 = 0
id: R1o ; sender: 4 & nbr=5- ; face: any & novia=5- ; amount: 1/5 ; anchor: 4-vertex: 2 - 2*4/5 - 2*1/5 = 0
id: R2v ; sender: 4 & nonbr=5- & nbr=6 ; face: any & via=6 ; amount: 2/3 ; anchor: 4-vertex: 2 - 2*2/3 - 2*1/3 = 0
id: R2o ; sender: 4 & nonbr=5- & nbr=6 ; face: any & novia=6 ; amount: 1/3 ; anchor: 4-vertex: 2 - 2*2/3 - 2*1/3 = 0
id: R3 ; sender: 4 & nonbr=6- ; face: any ; amount: 1/2 ; anchor: 4-vertex: 2 - 4*1/2 = 0
id: R5 ; sender: 9+ ; face: 4+ ; amount: 1 ; anchor: 4-face: -2 + 2*1 = 0
id: R6 ; sender: 5-8 ; face: 4+ ; amount: 1/2 ; anchor: 4-face: -2 + 4*1/2 = 0
id: Ta ; sender: 9+ ; face: (3,9+,9+) ; amount: 3/2 ; anchor: (3,9+,9+): -3 + 2*3/2 = 0
id: Tb ; sender: 10+ ; face: (4,4,10+) ; amount: 7/5 ; anchor: (4,4,10+): -3 + 2*4/5 + 7/5 = 0
id: Tc5 ; sender: 5 ; face: (4,5,11) ; amount: 17/20 ; anchor: (4,5,11): -3 + 4/5 + 17/20 + 27/20 = 0
id: Tc11 ; sender: 11 ; face: (4,5,11) ; amount: 27/20 ; anchor: (4,5,11): -3 + 4/5 + 17/20 + 27/20 = 0
id: Td5 ; sender: 5 ; face: (4,5,10) ; amount: 4/5 ; anchor: (4,5,10): -3 + 2*4/5 + 7/5 = 0
id: Td10 ; sender: 10 ; face: (4,5,10) ; amount: 7/5 ; anchor: (4,5,10): -3 + 2*4/5 + 7/5 = 0
id: Td5b ; sender: 5 ; face: (4,5,12+) ; amount: 4/5 ; anchor: (4,5,12+): -3 + 2*4/5 + 7/5 = 0
id: Td12 ; sender: 12+ ; face: (4,5,12+) ; amount: 7/5 ; anchor: (4,5,12+): -3 + 2*4/5 + 7/5 = 0
id: Te6 ; sender: 6 ; face: (4,6,10+) ; amount: 1 ; anchor: (4,6,10+): -3 + 2/3 + 1 + 4/3 = 0
id: Te10 ; sender: 10+ ; face: (4,6,10+) ; amount: 4/3 ; anchor: (4,6,10+): -3 + 2/3 + 1 + 4/3 = 0
id: Tf ; sender: 7-9 ; face: (4,7-8,7-9) ; amount: 5/4 ; anchor: (4,7-8,7-9): -3 + 1/2 + 2*5/4 = 0
id: Tg7 ; sender: 7-8 ; face: (4,7-8,10+) ; amount: 7/6 ; anchor: (4,7-8,10+): -3 + 1/2 + 7/6 + 4/3 = 0
id: Tg10 ; sender: 10+ ; face: (4,7-8,10+) ; amount: 4/3 ; anchor: (4,7-8,10+): -3 + 1/2 + 7/6 + 4/3 = 0
id: Ti ; sender: 9+ ; face: (4,9+,9+) & peer[4].nbr=5- ; amount: 7/5 ; anchor: (4,9+,9+): -3 + 1/5 + 2*7/5 = 0
id: Tj ; sender: 9+ ; face: (4,9+,9+) & peer[4].nonbr=5- & peer[4].nbr=6 ; amount: 4/3 ; anchor: (4,9+,9+): -3 + 1/3 + 2*4/3 = 0
id: Tk ; sender: 9+ ; face: (4,9+,9+) & peer[4].nonbr=6- ; amount: 5/4 ; anchor: (4,9+,9+): -3 + 1/2 + 2*5/4 = 0
id: Tl ; sender: 5-7 ; face: (5,5,5-7) ; amount: 1 ; anchor: (5,5,5-7): -3 + 3*1 = 0
id: Tm5 ; sender: 5 ; face: (5,5,8+) ; amount: 7/8 ; anchor: (5,5,8+): -3 + 2*7/8 + 5/4 = 0
id: Tm8 ; sender: 8+ ; face: (5,5,8+) ; amount: 5/4 ; anchor: (5,5,8+): -3 + 2*7/8 + 5/4 = 0
id: Tn ; sender: 5-6 ; face: (5,6,6) ; amount: 1 ; anchor: (5,6,6): -3 + 3*1 = 0
id: To5 ; sender: 5 ; face: (5,6,7) ; amount: 5/6 ; anchor: (5,6,7): -3 + 5/6 + 1 + 7/6 = 0
id: To6 ; sender: 6 ; face: (5,6,7) ; amount: 1 ; anchor: (5,6,7): -3 + 5/6 + 1 + 7/6 = 0
id: To7 ; sender: 7 ; face: (5,6,7) ; amount: 7/6 ; anchor: (5,6,7): -3 + 5/6 + 1 + 7/6 = 0
id: Tp5 ; sender: 5 ; face: (5,6,8+) ; amount: 3/4 ; anchor: (5,6,8+): -3 + 3/4 + 1 + 5/4 = 0
id: Tp6 ; sender: 6 ; face: (5,6,8+) ; amount: 1 ; anchor: (5,6,8+): -3 + 3/4 + 1 + 5/4 = 0
id: Tp8 ; sender: 8+ ; face: (5,6,8+) ; amount: 5/4 ; anchor: (5,6,8+): -3 + 3/4 + 1 + 5/4 = 0
id: Tq5 ; sender: 5 ; face: (5,7,7) ; amount: 2/3 ; anchor: (5,7,7): -3 + 2/3 + 2*7/6 = 0
id: Tq7 ; sender: 7 ; face: (5,7,7) ; amount: 7/6 ; anchor: (5,7,7): -3 + 2/3 + 2*7/6 = 0
id: Tr5 ; sender: 5 ; face: (5,7,8+) ; amount: 17/28 ; anchor: (5,7,8+): -3 + 17/28 + 8/7 + 5/4 = 0
id: Tr7 ; sender: 7 ; face: (5,7,8+) ; amount: 8/7 ; anchor: (5,7,8+): -3 + 17/28 + 8/7 + 5/4 = 0
id: Tr8 ; sender: 8+ ; face: (5,7,8+) ; amount: 5/4 ; anchor: (5,7,8+): -3 + 17/28 + 8/7 + 5/4 = 0
id: Ts5 ; sender: 5 ; face: (5,8+,8+) ; amount: 1/2 ; anchor: (5,8+,8+): -3 + 1/2 + 2*5/4 = 0
id: Ts8 ; sender: 8+ ; face: (5,8+,8+) ; amount: 5/4 ; anchor: (5,8+,8+): -3 + 1/2 + 2*5/4 = 0
id: Tt ; sender: 6+ ; face: (6+,6+,6+) ; amount: 1 ; anchor: (6+,6+,6+): -3 + 3*1 = 0
"""


def builtin_rules() -> DischargeRuleSet:
    return parse_rules(BUILTIN_RULES_TEXT)
