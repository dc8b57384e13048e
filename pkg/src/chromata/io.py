"""Graph interchange: graph6, whitespace edge lists and JSON.

graph6 follows the published nauty layout: a size prefix followed by the
upper triangle of the adjacency matrix read column by column
(``x(0,1) x(0,2) x(1,2) x(0,3) ...``), packed six bits per printable byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import NonSimpleError, ParseError
from .graph import Graph

FORMATS = ("graph6", "edge-list", "json")
_G6_HEADER = ">>graph6<<"


@dataclass(frozen=True)
class GraphSource:
    format: str
    payload: str


# -- graph6 -----------------------------------------------------------------


def _decode_size(data: bytes) -> tuple[int, int]:
    if not data:
        raise ParseError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise ParseError("truncated graph6 size field")
        groups, used = data[2:8], 8
    else:
        if len(data) < 4:
            raise ParseError("truncated graph6 size field")
        groups, used = data[1:4], 4
    n = 0
    for b in groups:
        n = (n << 6) | (b - 63)
    return n, used


def _encode_size(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER) :]
    try:
        data = s.encode("ascii")
    except UnicodeEncodeError:
        raise ParseError("graph6 must be printable ASCII") from None
    if any(not 63 <= b <= 126 for b in data):
        raise ParseError("graph6 byte outside 63..126")
    n, off = _decode_size(data)
    body = data[off:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise ParseError(f"graph6 body has {len(body)} bytes, expected {need} for n={n}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] - 63) >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def to_graph6(g: Graph) -> str:
    n = g.n
    bits = [0] * (n * (n - 1) // 2)
    for u, v in g.edges:
        # column-major upper triangle position of (u, v), u < v
        bits[v * (v - 1) // 2 + u] = 1
    bits.extend([0] * (-len(bits) % 6))
    body = bytes(63 + int("".join(map(str, bits[i : i + 6])), 2) for i in range(0, len(bits), 6))
    return (_encode_size(n) + body).decode("ascii")


# -- edge list ----------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse ``u v`` lines (0-based). ``# n=N`` fixes the vertex count."""
    n_decl = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip().replace(" ", "")
            if body.startswith("n="):
                try:
                    n_decl = int(body[2:])
                except ValueError:
                    raise ParseError(f"line {lineno}: bad vertex-count header {raw!r}") from None
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer vertex in {raw!r}") from None
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: negative vertex id")
        edges.append((u, v))
    n = max((max(e) for e in edges), default=-1) + 1
    if n_decl is not None:
        if n_decl < n:
            raise ParseError(f"header declares n={n_decl} but edges reach vertex {n - 1}")
        n = n_decl
    return Graph(n, edges)


def to_edge_list(g: Graph) -> str:
    lines = [f"# n={g.n}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


# -- JSON ---------------------------------------------------------------------


def graph_to_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def graph_from_dict(doc) -> Graph:
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise ParseError("JSON graph must be an object with 'n' and 'edges'")
    n, edges = doc["n"], doc["edges"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ParseError("'n' must be a non-negative integer")
    if not isinstance(edges, list):
        raise ParseError("'edges' must be a list")
    pairs = []
    for item in edges:
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in item)
        ):
            raise ParseError(f"bad edge entry {item!r}")
        if not all(0 <= x < n for x in item):
            raise ParseError(f"edge {item!r} out of range for n={n}")
        pairs.append((item[0], item[1]))
    return Graph(n, pairs)


def parse_json(text: str) -> Graph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return graph_from_dict(doc)


def to_json(g: Graph) -> str:
    return json.dumps(graph_to_dict(g), separators=(",", ":"))


# -- dispatch -----------------------------------------------------------------

_PARSERS = {"graph6": parse_graph6, "edge-list": parse_edge_list, "json": parse_json}
_WRITERS = {"graph6": to_graph6, "edge-list": to_edge_list, "json": to_json}


def parse_graph(source: GraphSource) -> Graph:
    try:
        parser = _PARSERS[source.format]
    except KeyError:
        raise ParseError(f"unknown format {source.format!r}; expected one of {FORMATS}") from None
    try:
        return parser(source.payload)
    except NonSimpleError:
        raise
    except (ParseError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc)) from None


def serialize_graph(g: Graph, fmt: str) -> GraphSource:
    if fmt not in _WRITERS:
        raise ParseError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    return GraphSource(fmt, _WRITERS[fmt](g))


def sniff_format(path: str | Path | None, text: str) -> str:
    """Guess the format from a file suffix, falling back to the content."""
    if path is not None:
        suffix = Path(path).suffix.lower()
        if suffix in (".g6", ".graph6"):
            return "graph6"
        if suffix == ".json":
            return "json"
        if suffix in (".txt", ".edges", ".el", ".edgelist"):
            return "edge-list"
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return "json"
    if stripped.startswith(_G6_HEADER) or (stripped and " " not in stripped.strip() and "\n" not in stripped.strip()):
        return "graph6"
    return "edge-list"


def read_graph6_lines(text: str) -> list[Graph]:
    return [parse_graph6(line) for line in text.splitlines() if line.strip()]
