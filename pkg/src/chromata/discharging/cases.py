"""Exhaustive final-charge analysis around a single vertex.

For a centre ``v`` of degree ``d`` in the plane graph H we enumerate every
cyclic arrangement of its neighbours ``x_0 .. x_{d-1}``: the H-degree of each
neighbour (3 .. 11, with 12 standing for "12 or more"), whether the face
between ``x_i`` and ``x_{i+1}`` is a triangle, and, when ``d >= 9``, a profile
for each 4-neighbour saying whether it has another neighbour of degree at
most 5 (``p5``), of degree 6 (``p6``) or neither (``p7``). A centre with
``d >= 8`` may also be *reduced*, meaning it lost 2-neighbours when H was
formed from G.

Arrangements that contradict the structural constraints below are
discarded; for the rest the centre's sends are looked up in the rule set and
the minimum of ``2d - 6 - sends`` is reported. The search is a
branch-and-bound that prunes partial arrangements which cannot beat the
best total found so far.

Constraints (H-degrees, ``k = kappa - Delta``; a vertex of G-degree at least
``B`` may appear in H with degree as low as ``min(B, 8 + m)`` where ``m``
counts its neighbours of degree at most 7, and H-degree at most 7 means
nothing was removed):

* neighbours of a 3-vertex have degree at least ``k + 3``;
* a 4-vertex with a neighbour ``w`` of degree at most ``k``: its other
  neighbours have degree at least ``2k + 4 - deg(w)``;
* a 4-vertex whose edge to ``w`` (degree at most ``k + 1``) lies in two
  triangles: its other neighbours have degree at least ``2k + 5 - deg(w)``;
* a 5-vertex in a triangle with ``w, w1`` where both have degree at most
  ``k``, or one at most ``k - 1`` and the other at most 7: its other
  neighbours have degree at least ``2k + 7 - deg(w) - deg(w1)``;
* an unreduced ``(k + 3)``-vertex whose 3-neighbour lies in two triangles
  with it has all other neighbours of degree at least 8;
* an unreduced ``(k + 4)``-vertex whose 3-neighbour lies in two triangles
  with it has no four other neighbours that all have degree at most 5, sum
  to at most ``k + 9`` and include two of degree at most 4;
* a reduced vertex has degree at least ``8 + m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import lcm

from ..errors import ConstraintCatalogIncomplete, InvalidParam
from .rules import DegreeClass, DischargeRuleSet, builtin_rules, pattern_matches

# 12 stands for "12 or more"; every rule threshold is at most 12
TOP = 12
CLASSES = tuple(range(3, TOP + 1))
PROFILES = ("p5", "p6", "p7")
# representative hidden neighbour degree implied by a profile
_HIDDEN = {"p5": 5, "p6": 6, "p7": None, None: None}

# tally counts saturate here; four of a class is all the 3-10 test can look at
_TALLY_CAP = 4

ALL_CONSTRAINTS = frozenset({"3-nbrs", "4-sum-a", "4-sum-b", "5-sum", "L9", "3-10", "reduced"})


@dataclass(frozen=True)
class ConstraintCatalog:
    kappa_minus_delta: int = 6
    enabled: frozenset[str] = ALL_CONSTRAINTS
    reduced_floor: int = 8

    def __post_init__(self):
        unknown = set(self.enabled) - ALL_CONSTRAINTS
        if unknown:
            raise InvalidParam(f"unknown constraints {sorted(unknown)}")

    def without(self, *names: str) -> ConstraintCatalog:
        return ConstraintCatalog(self.kappa_minus_delta, self.enabled - set(names), self.reduced_floor)


def builtin_constraints() -> ConstraintCatalog:
    return ConstraintCatalog()


@dataclass
class VertexCase:
    degree: int
    reduced: bool
    min_charge: Fraction | None  # None when no arrangement is feasible
    witness: dict | None
    nodes: int

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "reduced": self.reduced,
            "min_charge": None if self.min_charge is None else str(self.min_charge),
            "witness": self.witness,
            "nodes": self.nodes,
        }


class _Deferred(Exception):
    """A rule asked about a part of the arrangement that is not chosen yet."""


class _Arrangement:
    def __init__(self, d: int, reduced: bool):
        self.d = d
        self.reduced = reduced
        self.c: list[int | None] = [None] * d
        self.tri: list[bool | None] = [None] * d
        self.prof: list[str | None] = [None] * d
        # when set, no 3-neighbour may lie in two triangles with the centre
        self.no_double3 = False

    # neighbours of x_i other than the centre, as (index) when both known
    def mates(self, i: int) -> list[int]:
        d = self.d
        out = []
        if self.tri[(i - 1) % d] and self.c[(i - 1) % d] is not None:
            out.append((i - 1) % d)
        if self.tri[i] and self.c[(i + 1) % d] is not None:
            out.append((i + 1) % d)
        return out

    def small_count(self, i: int) -> int:
        """Known neighbours of x_i with degree at most 7, the centre included."""
        m = 1 if self.d <= 7 else 0
        return m + sum(1 for j in self.mates(i) if self.c[j] <= 7)

    def witness(self) -> dict:
        return {
            "neighbors": [("12+" if c == TOP else c) for c in self.c],
            "triangles": list(self.tri),
            "profiles": [p for p in self.prof],
        }


class _Corner:
    """Rule-facing view of the face between x_i and x_{i+1}."""

    def __init__(self, a: _Arrangement, i: int):
        self.a = a
        self.i = i
        self.j = (i + 1) % a.d
        self.sender_degree = a.d
        tri = a.tri[i]
        self.face_degree = 3 if tri else 4
        self.face_vertex_degrees = (a.d, a.c[i], a.c[self.j]) if tri else ()

    def sender_has_neighbor(self, cls: DegreeClass) -> bool:
        if any(c is not None and c in cls for c in self.a.c):
            return True
        if any(c is None for c in self.a.c):
            raise _Deferred
        return False

    def via(self, cls: DegreeClass) -> bool:
        return self.a.c[self.i] in cls or self.a.c[self.j] in cls

    def _nbr_degrees(self, k: int) -> list[int]:
        a = self.a
        degs = [a.d] + [a.c[t] for t in a.mates(k)]
        hidden = _HIDDEN[a.prof[k]]
        if hidden is not None:
            degs.append(hidden)
        return degs

    def _peers(self, peer: DegreeClass) -> list[int]:
        if self.face_degree != 3:
            return []
        return [k for k in (self.i, self.j) if self.a.c[k] in peer]

    def peer_has_neighbor(self, peer: DegreeClass, cls: DegreeClass) -> bool:
        return any(any(x in cls for x in self._nbr_degrees(k)) for k in self._peers(peer))

    def peer_lacks_neighbor(self, peer: DegreeClass, cls: DegreeClass) -> bool:
        return any(not any(x in cls for x in self._nbr_degrees(k)) for k in self._peers(peer))


class _Checker:
    def __init__(self, cat: ConstraintCatalog):
        self.cat = cat
        k = cat.kappa_minus_delta
        self.k = k
        self.on = cat.enabled

    # a neighbour of class c meets a lower bound B on its G-degree
    def _nbr_ok(self, a: _Arrangement, j: int, bound: int) -> bool:
        c = a.c[j]
        if c is None or c == TOP or c >= bound:
            return True
        return c >= 8 and c >= self.cat.reduced_floor + a.small_count(j)

    def _centre_ok(self, a: _Arrangement, bound: int) -> bool:
        return a.reduced or a.d >= bound

    def feasible(self, a: _Arrangement) -> bool:
        d, c, tri = a.d, a.c, a.tri
        on, k = self.on, self.k

        if "reduced" in on and a.reduced:
            smalls = sum(1 for x in c if x is not None and x <= 7)
            if d < self.cat.reduced_floor + smalls:
                return False

        for i in range(d):
            ci = c[i]
            if ci is None:
                continue
            if a.no_double3 and ci == 3 and tri[(i - 1) % d] and tri[i]:
                return False
            mates = a.mates(i)
            # profile consistency for 4-neighbours
            p = a.prof[i]
            if p is not None:
                low = [c[t] for t in mates]
                if p == "p7" and any(x <= 6 for x in low):
                    return False
                if p == "p6" and any(x <= 5 for x in low):
                    return False
                if p != "p5" and any(x <= 5 for x in low):
                    return False
            if ci == 3 and "3-nbrs" in on:
                if not self._centre_ok(a, k + 3):
                    return False
                if any(not self._nbr_ok(a, t, k + 3) for t in mates):
                    return False
            if ci == 4 and "4-sum-a" in on:
                # small neighbours of x_i: the centre, visible mates, or a hidden one from the profile
                small = []
                if d <= k:
                    small.append(("centre", d))
                small += [(t, c[t]) for t in mates if c[t] <= k]
                hidden = _HIDDEN[p]
                if hidden is not None and not any(deg <= hidden for _, deg in small if _ != "centre"):
                    small.append(("hidden", hidden))
                for who, deg in small:
                    bound = 2 * k + 4 - deg
                    if who != "centre" and not self._centre_ok(a, bound):
                        return False
                    if any(t != who and not self._nbr_ok(a, t, bound) for t in mates):
                        return False
            if ci == 4 and "4-sum-b" in on and d <= k + 1 and tri[(i - 1) % d] and tri[i]:
                bound = 2 * k + 5 - d
                if any(not self._nbr_ok(a, t, bound) for t in mates):
                    return False
            if ci == 5 and "5-sum" in on:
                for side, t in (((i - 1) % d, (i - 1) % d), (i, (i + 1) % d)):
                    if not tri[side] or c[t] is None:
                        continue
                    if self._five_pair(d, c[t]):
                        bound = 2 * k + 7 - d - c[t]
                        others = [s for s in mates if s != t]
                        if any(not self._nbr_ok(a, s, bound) for s in others):
                            return False

        if d == 3 and "3-nbrs" in on:
            if any(not self._nbr_ok(a, j, k + 3) for j in range(d)):
                return False
        if d == 4:
            if "4-sum-a" in on:
                for i in range(d):
                    if c[i] is not None and c[i] <= k:
                        bound = 2 * k + 4 - c[i]
                        if any(not self._nbr_ok(a, j, bound) for j in range(d) if j != i):
                            return False
            if "4-sum-b" in on:
                for i in range(d):
                    if c[i] is not None and c[i] <= k + 1 and tri[(i - 1) % d] and tri[i]:
                        bound = 2 * k + 5 - c[i]
                        if any(not self._nbr_ok(a, j, bound) for j in range(d) if j != i):
                            return False
        if d == 5 and "5-sum" in on:
            for i in range(d):
                j = (i + 1) % d
                if tri[i] and c[i] is not None and c[j] is not None and self._five_pair(c[i], c[j]):
                    bound = 2 * k + 7 - c[i] - c[j]
                    if any(not self._nbr_ok(a, t, bound) for t in range(d) if t not in (i, j)):
                        return False
        if not a.reduced and d in (k + 3, k + 4):
            for i in range(d):
                if c[i] != 3 or not tri[(i - 1) % d] or not tri[i]:
                    continue
                others = [c[t] for t in range(d) if t != i and c[t] is not None]
                if d == k + 3 and "L9" in on and any(x < 8 for x in others):
                    return False
                if d == k + 4 and "3-10" in on and 8 <= d <= 10 and self._has_x_star(others):
                    return False
        return True

    def _five_pair(self, a: int, b: int) -> bool:
        k = self.k
        lo, hi = min(a, b), max(a, b)
        return (hi <= k) or (lo <= k - 1 and hi <= 7)

    def _has_x_star(self, degs: list[int]) -> bool:
        small = [x for x in degs if x <= 5]
        for combo in combinations(small, 4):
            if sum(combo) <= self.k + 9 and sum(1 for x in combo if x <= 4) >= 2:
                return True
        return False


def _face_send(rules: DischargeRuleSet, a: _Arrangement, i: int) -> Fraction:
    corner = _Corner(a, i)
    rule = rules.select(corner)
    if rule is None:
        if corner.face_degree == 3:
            raise ConstraintCatalogIncomplete(
                f"a {a.d}-vertex in a ({a.d},{a.c[i]},{a.c[(i + 1) % a.d]}) triangle matches no rule; "
                f"arrangement {a.witness()}"
            )
        return Fraction(0)
    return rule.amount


class _CapCorner:
    """A face seen from its two neighbour labels only; undecidable queries raise _Deferred."""

    def __init__(self, d: int, tri: bool, x: tuple, y: tuple):
        self.d = d
        self.sender_degree = d
        self.face_degree = 3 if tri else 4
        self.face_vertex_degrees = (d, x[0], y[0]) if tri else ()
        self.ends = (x, y)

    def sender_has_neighbor(self, cls: DegreeClass) -> bool:
        if any(c in cls for c, _ in self.ends):
            return True
        raise _Deferred

    def via(self, cls: DegreeClass) -> bool:
        return any(c in cls for c, _ in self.ends)

    def _has(self, label: tuple, cls: DegreeClass) -> bool | None:
        c, p = label
        known = [self.d] + ([_HIDDEN[p]] if _HIDDEN[p] is not None else [])
        if any(x in cls for x in known):
            return True
        floor = {"p6": 6, "p7": 7}.get(p, 3)
        return None if any(x in cls for x in range(floor, TOP + 1)) else False

    def _answers(self, peer: DegreeClass, cls: DegreeClass) -> list:
        if self.face_degree != 3:
            return []
        return [self._has(lab, cls) for lab in self.ends if lab[0] in peer]

    def peer_has_neighbor(self, peer: DegreeClass, cls: DegreeClass) -> bool:
        ans = self._answers(peer, cls)
        if True in ans:
            return True
        if None in ans:
            raise _Deferred
        return False

    def peer_lacks_neighbor(self, peer: DegreeClass, cls: DegreeClass) -> bool:
        ans = self._answers(peer, cls)
        if False in ans:
            return True
        if None in ans:
            raise _Deferred
        return False


def _label_cap(rules: DischargeRuleSet, d: int, tri: bool, x: tuple, y: tuple) -> Fraction:
    """Largest amount any rule could send to the face; conditions count only when decidable."""
    corner = _CapCorner(d, tri, x, y)
    best = Fraction(0)
    for r in rules:
        if d not in r.sender or r.amount <= best:
            continue
        if r.face == "4+" and tri:
            continue
        if r.face == "tri" and (not tri or not pattern_matches(r.pattern, corner.face_vertex_degrees)):
            continue
        try:
            possible = r.matches(corner)
        except _Deferred:
            possible = True
        if possible:
            best = r.amount
    return best


def _labels(d: int) -> list[tuple]:
    return [(c, p) for c in CLASSES for p in (PROFILES if d >= 9 and c == 4 else (None,))]


def _face_caps(rules: DischargeRuleSet, d: int) -> dict:
    """Per (triangle?, class, class): the cap maximised over profiles; per labels too."""
    caps: dict = {}
    labels = _labels(d)
    for tri in (True, False):
        for lx in labels:
            for ly in labels:
                q = _label_cap(rules, d, tri, lx, ly)
                caps[(tri, lx, ly)] = q
                key = (tri, lx[0], ly[0])
                caps[key] = max(caps.get(key, q), q)
    return caps


class _PathBound:
    """Max-plus relaxation: the best send along a run of undecided faces.

    Only pairs of consecutive neighbours are checked for feasibility, so the
    value is an upper bound on what any full arrangement can achieve. For a
    reduced centre the number of neighbours of degree at most 7 is tracked.
    """

    def __init__(self, d: int, reduced: bool, caps: dict, checker: _Checker, floor: int = 3):
        self.d = d
        self.budget = d - checker.cat.reduced_floor if reduced else None
        use_profiles = d >= 9
        pair: dict = {}
        scratch = _Arrangement(d, reduced)
        for x in CLASSES:
            for y in CLASSES:
                best = None
                for t in (True, False):
                    for px in (PROFILES if use_profiles and x == 4 else (None,)):
                        for py in (PROFILES if use_profiles and y == 4 else (None,)):
                            scratch.c[0], scratch.c[1], scratch.tri[0] = x, y, t
                            scratch.prof[0], scratch.prof[1] = px, py
                            if checker.feasible(scratch) and (best is None or caps[(t, x, y)] > best):
                                best = caps[(t, x, y)]
                pair[(x, y)] = best
        self.pair = pair
        smax = 0 if self.budget is None else max(self.budget, 0)
        self.smax = smax
        # table[L][(x, y)] -> list indexed by small interior count, None when impossible
        table = [None, {k: [v] + [None] * smax for k, v in pair.items()}]
        for _ in range(2, d + 1):
            prev = table[-1]
            cur = {}
            for x in CLASSES:
                for y in CLASSES:
                    row = [None] * (smax + 1)
                    for z in CLASSES:
                        step = pair[(z, y)]
                        if z < floor:
                            continue
                        if step is None:
                            continue
                        inc = 1 if (self.budget is not None and z <= 7) else 0
                        left = prev[(x, z)]
                        for s_ in range(smax + 1 - inc):
                            if left[s_] is None:
                                continue
                            val = left[s_] + step
                            if row[s_ + inc] is None or val > row[s_ + inc]:
                                row[s_ + inc] = val
                    cur[(x, y)] = row
            table.append(cur)
        self.table = table

    def best(self, faces: int, x: int, y: int, used_small: int) -> Fraction | None:
        row = self.table[faces][(x, y)]
        limit = self.smax if self.budget is None else self.budget - used_small
        vals = [v for v in row[: limit + 1] if v is not None] if limit >= 0 else []
        return max(vals) if vals else None


class _TripleBound:
    """Max-plus relaxation over windows of three consecutive neighbours.

    A state is a face ``(x, t, y)`` between two neighbour labels (class plus
    4-neighbour profile) and whether it is a triangle. Two faces may follow
    each other when the window ``x, t, y, t', z`` passes the constraint check
    on its own. ``best`` returns the largest total cap over ``L`` further
    faces leading from a known face back around to the first one. Amounts
    are scaled to integers so comparisons stay exact.
    """

    def __init__(
        self,
        d: int,
        template: _Arrangement,
        caps: dict,
        checker: _Checker,
        floor: int = 3,
        tally: tuple[int, ...] = (),
        acceptable=None,
    ):
        import numpy as np

        self.np = np
        self.d = d
        self.labels = _labels(d)
        self.lid = {lab: i for i, lab in enumerate(self.labels)}
        n = len(self.labels)
        self.n = n
        size = 2 * n * n
        self.scale = lcm(*(q.denominator for q in caps.values()))
        value = np.zeros(size, dtype=np.int64)
        for lx in self.labels:
            for t in (True, False):
                for ly in self.labels:
                    value[self.index(lx, t, ly)] = int(caps[(t, lx, ly)] * self.scale)
        scratch = _Arrangement(d, template.reduced)
        scratch.no_double3 = template.no_double3
        self.neg = np.iinfo(np.int64).min // 4
        step = np.full((size, size), self.neg, dtype=np.int64)
        link = np.zeros((size, size), dtype=bool)
        for ly in self.labels:
            for lx in self.labels:
                for t in (True, False):
                    for lz in self.labels:
                        for u in (True, False):
                            scratch.c[:3] = [lx[0], ly[0], lz[0]]
                            scratch.prof[:3] = [lx[1], ly[1], lz[1]]
                            scratch.tri[:2] = [t, u]
                            if checker.feasible(scratch):
                                i, j = self.index(lx, t, ly), self.index(ly, u, lz)
                                link[i, j] = True
                                step[i, j] = value[j]
        self.step = step
        self.link = link
        # faces strictly inside the undecided run may only use classes >= floor
        inner = np.array([lab[0] >= floor for lab in self.labels])
        self.middle = (inner[:, None, None] & np.ones(2, dtype=bool)[None, :, None] & inner[None, None, :]).reshape(-1)
        # optional counts of interior neighbours per class in ``tally`` (capped), filtered by ``acceptable``
        self.tally = tally
        self.acceptable = acceptable
        self.counts = list(product(range(_TALLY_CAP + 1), repeat=len(tally)))
        self.cid = {cnt: i for i, cnt in enumerate(self.counts)}
        bump = np.full(size, -1, dtype=np.int64)  # which tally slot a face's second label fills
        for lx in self.labels:
            for t in (True, False):
                for ly in self.labels:
                    if ly[0] in tally:
                        bump[self.index(lx, t, ly)] = tally.index(ly[0])
        self.bump = bump
        self._ok_masks: dict[tuple, object] = {}
        self._tails: dict[int, list] = {}

    def index(self, lx: tuple, t: bool, ly: tuple) -> int:
        return (self.lid[lx] * 2 + (0 if t else 1)) * self.n + self.lid[ly]

    def _shift(self, cnt: tuple, slot: int) -> int | None:
        if slot < 0:
            return self.cid[cnt]
        if cnt[slot] == 0:
            return None
        prev = list(cnt)
        # a capped slot may have been reached from a capped or an uncapped predecessor
        prev[slot] -= 1
        return self.cid[tuple(prev)]

    def _tail(self, first: int) -> list:
        """tail[L][c, s]: best cap over L faces after face s closing onto ``first``, interior tally c."""
        np = self.np
        tails = self._tails.get(first)
        if tails is None:
            neg = self.neg
            nc = len(self.counts)
            last = np.full((nc, self.step.shape[0]), neg, dtype=np.int64)
            last[self.cid[(0,) * len(self.tally)]] = np.where(self.link[:, first], 0, neg)
            tails = [None]
            cur = last
            for k in range(self.d):
                if k:
                    masked = np.where(self.middle[None, :], cur, neg)
                    # entering face e adds its second label to the tally
                    shifted = np.full_like(masked, neg)
                    for ci, cnt in enumerate(self.counts):
                        for slot in range(-1, len(self.tally)):
                            cols = self.bump == slot
                            if slot < 0:
                                src = ci
                            else:
                                src = self._shift(cnt, slot)
                                if src is None:
                                    continue
                            shifted[ci, cols] = np.maximum(shifted[ci, cols], masked[src, cols])
                            if slot >= 0 and cnt[slot] == _TALLY_CAP:
                                shifted[ci, cols] = np.maximum(shifted[ci, cols], masked[ci, cols])
                    cur = shifted
                cand = self.step[None, :, :] + cur[:, None, :]
                cur = cand.max(axis=2)
                cur[cur < neg] = neg
                tails.append(cur)
            self._tails[first] = tails
        return tails

    def _ok(self, known: tuple):
        mask = self._ok_masks.get(known)
        if mask is None:
            cap = _TALLY_CAP
            mask = self.np.array(
                [
                    self.acceptable is None
                    or self.acceptable(tuple(min(cap, a + b) for a, b in zip(known, cnt)))
                    for cnt in self.counts
                ]
            )
            self._ok_masks[known] = mask
        return mask

    def count(self, classes) -> tuple:
        return tuple(min(_TALLY_CAP, sum(1 for c in classes if c == t)) for t in self.tally)

    def best(self, faces: int, start: int, first: int, known: tuple = ()) -> Fraction | None:
        col = self._tail(first)[faces][:, start]
        vals = col[self._ok(known)]
        top = int(vals.max()) if vals.size else self.neg
        if top <= self.neg // 2:
            return None
        return Fraction(top, self.scale)


def _search(
    d: int,
    reduced: bool,
    rules: DischargeRuleSet,
    cat: ConstraintCatalog,
    no_double3: bool = False,
    anchor3: bool = False,
    floor: int = 3,
    tally: tuple[int, ...] = (),
    acceptable=None,
) -> tuple[Fraction | None, dict | None, int]:
    """Best total send of the centre; returns (total, witness, nodes).

    By rotation ``x_0`` has the smallest class. With ``anchor3`` it is
    moreover a 3-neighbour lying in two triangles with the centre, and the
    other neighbours have class at least ``floor``.
    """
    checker = _Checker(cat)
    a = _Arrangement(d, reduced)
    a.no_double3 = no_double3
    closing = True if anchor3 else None  # anchored x_0 sits in two triangles from the start
    a.tri[d - 1] = closing
    caps = _face_caps(rules, d)
    paths = _PathBound(d, reduced, caps, checker, floor)
    triples = _TripleBound(d, a, caps, checker, floor, tally, acceptable)
    best: list = [None, None]  # best total send, witness
    nodes = 0
    sends: list[Fraction | None] = [None] * d
    use_profiles = d >= 9

    def face_known(i: int) -> bool:
        return a.tri[i] is not None and a.c[i] is not None and a.c[(i + 1) % d] is not None

    def settle(i: int) -> None:
        try:
            sends[i] = _face_send(rules, a, i)
        except _Deferred:
            sends[i] = None

    def bound(i: int) -> Fraction | None:
        """Upper bound on total sends once c_0 .. c_{i-1} are fixed (1 <= i <= d)."""
        total = Fraction(0)
        for f in range(i - 1):
            total += sends[f] if sends[f] is not None else caps[(a.tri[f], a.c[f], a.c[f + 1])]
        used = sum(1 for x in a.c if x is not None and x <= 7)
        rest = paths.best(d - i + 1, a.c[i - 1], a.c[0], used)
        if rest is None:
            return None
        if i >= 2:
            start = triples.index((a.c[i - 2], a.prof[i - 2]), a.tri[i - 2], (a.c[i - 1], a.prof[i - 1]))
            first = triples.index((a.c[0], a.prof[0]), a.tri[0], (a.c[1], a.prof[1]))
            tight = triples.best(d - i + 1, start, first, triples.count(a.c[1:i]))
            if tight is None:
                return None
            rest = min(rest, tight)
        return total + rest

    def leaf():
        for i in range(d):
            if sends[i] is None:
                sends[i] = _face_send(rules, a, i)
        total = sum(sends)
        if best[0] is None or total > best[0]:
            best[0] = total
            best[1] = a.witness()

    def tri_options(i: int):
        if anchor3 and i in (0, d - 1):
            return (True,)
        return (True, False)

    def visit(i: int, cls: int, p: str | None, t: bool | None) -> None:
        a.c[i] = cls
        a.prof[i] = p
        if i > 0:
            a.tri[i - 1] = t

    def clear(i: int) -> None:
        if i > 0:
            sends[i - 1] = None
            a.tri[i - 1] = None
        a.c[i] = None
        a.prof[i] = None

    def place(i: int):
        """Extend by x_i (and the face before it), most promising branch first."""
        nonlocal nodes
        if i == d:
            for t in tri_options(d - 1):
                a.tri[d - 1] = t
                nodes += 1
                if checker.feasible(a):
                    saved = list(sends)
                    settle(d - 1)
                    leaf()
                    sends[:] = saved
                a.tri[d - 1] = closing
            return
        children = []
        for cls in ((3,) if anchor3 and i == 0 else CLASSES):
            if i > 0 and (cls < a.c[0] or cls < floor):
                continue
            for p in (PROFILES if (use_profiles and cls == 4) else (None,)):
                for t in (tri_options(i - 1) if i > 0 else (None,)):
                    visit(i, cls, p, t)
                    nodes += 1
                    if checker.feasible(a):
                        if i > 0 and face_known(i - 1):
                            settle(i - 1)
                        b = bound(i + 1) if i > 0 else paths.best(d, cls, cls, 1 if cls <= 7 else 0)
                        if b is not None:
                            children.append((b, cls, p, t))
                    clear(i)
        children.sort(key=lambda ch: ch[0], reverse=True)
        for b, cls, p, t in children:
            if best[0] is not None and b <= best[0]:
                break
            visit(i, cls, p, t)
            if i > 0 and face_known(i - 1):
                settle(i - 1)
            place(i + 1)
            clear(i)

    place(0)
    return best[0], best[1], nodes


def _vertex_case(d: int, reduced: bool, rules: DischargeRuleSet, cat: ConstraintCatalog) -> VertexCase:
    k = cat.kappa_minus_delta
    split = not reduced and (
        (d == k + 3 and "L9" in cat.enabled) or (d == k + 4 and 8 <= d <= 10 and "3-10" in cat.enabled)
    )
    if split:
        # either no 3-neighbour sits in two triangles, or rotate one to x_0
        if d == k + 3:
            # the anchored 3-neighbour forces all others up to 8
            anchored = _search(d, reduced, rules, cat, anchor3=True, floor=8)
        else:
            # others must avoid four small neighbours; track how many 3s, 4s and 5s the tail adds
            checker = _Checker(cat)
            anchored = _search(
                d,
                reduced,
                rules,
                cat,
                anchor3=True,
                tally=(3, 4, 5),
                acceptable=lambda cnt: not checker._has_x_star([3] * cnt[0] + [4] * cnt[1] + [5] * cnt[2]),
            )
        runs = [_search(d, reduced, rules, cat, no_double3=True), anchored]
    else:
        runs = [_search(d, reduced, rules, cat)]
    found = [r for r in runs if r[0] is not None]
    nodes = sum(r[2] for r in runs)
    if not found:
        return VertexCase(d, reduced, None, None, nodes)
    total, witness, _ = max(found, key=lambda r: r[0])
    return VertexCase(d, reduced, Fraction(2 * d - 6) - total, witness, nodes)


def enumerate_vertex_cases(
    degrees=range(3, 15),
    constraints: ConstraintCatalog | None = None,
    rules: DischargeRuleSet | None = None,
) -> list[VertexCase]:
    """Minimum final charge of a vertex, per degree and reduced/unreduced."""
    cat = constraints or builtin_constraints()
    rules = rules or builtin_rules()
    out = []
    for d in degrees:
        if d < 3:
            raise InvalidParam("vertex degrees in H start at 3")
        for reduced in (False, True):
            if reduced and d < cat.reduced_floor:
                continue
            out.append(_vertex_case(d, reduced, rules, cat))
    return out


def closed_form_charge(d: int) -> Fraction:
    """Lower bound for degrees beyond explicit enumeration: every face gets at most 3/2."""
    return Fraction(2 * d - 6) - Fraction(3, 2) * d


# ---------------------------------------------------------------------------
# faces

# the two off-face neighbours of a 4-vertex, one representative per behaviour:
# none of degree <= 6, one of degree <= 5, one of degree 6
_HIDDEN_PAIRS = ((TOP, TOP), (5, TOP), (6, TOP))


@dataclass
class FaceCase:
    degrees: tuple[int, ...]
    hidden: tuple[tuple[int, ...], ...]  # off-face neighbours of each 4-vertex, () otherwise
    sends: tuple[Fraction, ...]
    rules: tuple[str, ...]

    @property
    def charge(self) -> Fraction:
        return Fraction(len(self.degrees) - 6) + sum(self.sends, Fraction(0))

    def to_dict(self) -> dict:
        return {
            "degrees": [("12+" if c == TOP else c) for c in self.degrees],
            "hidden": [list(h) for h in self.hidden],
            "sends": [str(q) for q in self.sends],
            "rules": list(self.rules),
            "charge": str(self.charge),
        }


class _FaceCorner:
    def __init__(self, degrees: tuple[int, ...], hidden: tuple, i: int):
        k = len(degrees)
        self.degrees = degrees
        self.hidden = hidden
        self.i = i
        self.sender_degree = degrees[i]
        self.face_degree = k
        self.face_vertex_degrees = degrees
        self.mates = ((i - 1) % k, (i + 1) % k)

    def _nbrs(self, j: int) -> list[int]:
        k = len(self.degrees)
        return [self.degrees[(j - 1) % k], self.degrees[(j + 1) % k], *self.hidden[j]]

    def sender_has_neighbor(self, cls: DegreeClass) -> bool:
        return any(x in cls for x in self._nbrs(self.i))

    def via(self, cls: DegreeClass) -> bool:
        return any(self.degrees[j] in cls for j in self.mates)

    def _peers(self, peer: DegreeClass) -> list[int]:
        return [j for j in range(len(self.degrees)) if j != self.i and self.degrees[j] in peer]

    def peer_has_neighbor(self, peer: DegreeClass, cls: DegreeClass) -> bool:
        return any(any(x in cls for x in self._nbrs(j)) for j in self._peers(peer))

    def peer_lacks_neighbor(self, peer: DegreeClass, cls: DegreeClass) -> bool:
        return any(not any(x in cls for x in self._nbrs(j)) for j in self._peers(peer))


def _face_vertex_ok(checker: _Checker, degrees: tuple[int, ...], hidden: tuple, i: int) -> bool:
    """Constraints seen from face vertex i with its two face neighbours (and hidden ones) known."""
    k = len(degrees)
    d = degrees[i]
    known = [degrees[(i - 1) % k], degrees[(i + 1) % k], *hidden[i]]
    for reduced in (False, True) if d >= checker.cat.reduced_floor else (False,):
        a = _Arrangement(d, reduced)
        for j, c in enumerate(known[:d]):
            a.c[j] = c
        a.tri[0] = k == 3
        if checker.feasible(a):
            return True
    return False


def _canonical(seq: tuple) -> bool:
    """True for the lexicographically least rotation/reflection of a cyclic sequence."""
    k = len(seq)
    for r in range(k):
        rot = seq[r:] + seq[:r]
        if rot < seq or rot[::-1] < seq:
            return False
    return True


def enumerate_face_cases(
    face_degree: int,
    constraints: ConstraintCatalog | None = None,
    rules: DischargeRuleSet | None = None,
) -> list[FaceCase]:
    """Every feasible face of the given degree, up to symmetry, with what it receives."""
    if face_degree < 3:
        raise InvalidParam("faces have degree at least 3")
    cat = constraints or builtin_constraints()
    rules = rules or builtin_rules()
    checker = _Checker(cat)
    out = []
    for degrees in product(CLASSES, repeat=face_degree):
        if not _canonical(degrees):
            continue
        fours = [j for j, c in enumerate(degrees) if c == 4]
        for choice in product(_HIDDEN_PAIRS, repeat=len(fours)):
            hidden = [()] * face_degree
            for j, h in zip(fours, choice):
                hidden[j] = h
            hidden = tuple(hidden)
            if not all(_face_vertex_ok(checker, degrees, hidden, i) for i in range(face_degree)):
                continue
            sends, fired = [], []
            for i in range(face_degree):
                corner = _FaceCorner(degrees, hidden, i)
                rule = rules.select(corner)
                if rule is None and face_degree == 3:
                    raise ConstraintCatalogIncomplete(f"vertex {i} of triangle {degrees} matches no rule")
                sends.append(rule.amount if rule else Fraction(0))
                fired.append(rule.id if rule else "-")
            out.append(FaceCase(degrees, hidden, tuple(sends), tuple(fired)))
    return out


def triangle_row_totals(constraints: ConstraintCatalog | None = None, rules: DischargeRuleSet | None = None) -> dict:
    """For each triangle rule, the set of totals received by the triangles it fires on."""
    totals: dict[str, set[Fraction]] = {}
    for case in enumerate_face_cases(3, constraints, rules):
        total = sum(case.sends, Fraction(0))
        for rid in case.rules:
            totals.setdefault(rid, set()).add(total)
    return totals
