"""Seeded random planar graphs grown from a triangulation."""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import InvalidParam
from .graph import Graph


def as_fraction(p) -> Fraction:
    """Exact probability from an int, Fraction, decimal string or float literal."""
    if isinstance(p, Fraction):
        return p
    if isinstance(p, float):
        return Fraction(repr(p))
    try:
        return Fraction(p)
    except (TypeError, ValueError):
        raise InvalidParam(f"not a rational probability: {p!r}") from None


def random_planar(n: int, edge_keep_prob=1, seed: int = 0) -> Graph:
    """Random planar graph on ``n`` vertices.

    Grows a triangulation by inserting each new vertex into a uniformly
    chosen face, keeps every edge independently with ``edge_keep_prob``
    and finally drops isolated vertices (ids are then compacted).
    """
    p = as_fraction(edge_keep_prob)
    if n < 3:
        raise InvalidParam(f"n must be at least 3, got {n}")
    if not 0 <= p <= 1:
        raise InvalidParam(f"edge_keep_prob must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    edges = [(0, 1), (1, 2), (0, 2)]
    faces = [(0, 1, 2), (0, 2, 1)]
    for k in range(3, n):
        i = rng.randrange(len(faces))
        a, b, c = faces[i]
        faces[i] = (a, b, k)
        faces.append((b, c, k))
        faces.append((c, a, k))
        edges.extend([(a, k), (b, k), (c, k)])
    kept = [e for e in edges if rng.randrange(p.denominator) < p.numerator]
    used = sorted({v for e in kept for v in e})
    relabel = {v: i for i, v in enumerate(used)}
    return Graph(len(used), [(relabel[u], relabel[v]) for u, v in kept])
