"""``chromata`` command line: one JSON document on stdout per invocation.

Exit codes: 0 success, 1 a domain negative (not colorable, verification
failed, a lemma failed, ...), 2 a usage or parse error. Diagnostics go to
stderr. ``CHROMATA_SEED`` overrides ``--seed`` when set.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path

from . import __version__
from .catalog import all_graphs
from .coloring import EdgeColoring
from .discharging import audit, builtin_rules, enumerate_vertex_cases, parse_rules
from .errors import BudgetExceeded, ChromataError, DisconnectedInput, InfeasiblePalette, InvalidParam, ParseError
from .exact import YES, acyclic_colorable, chi_a_exact
from .generate import as_fraction, random_planar
from .graph import Graph, named_graph
from .heuristic import EDGE_ORDERS, SolveConfig, solve
from .io import FORMATS, GraphSource, graph_to_dict, parse_graph, read_graph6_lines, serialize_graph, sniff_format
from .lemmas import FAILS, LEMMA_IDS, check_fact2_all, check_lemma, find_deletion_minimal, parse_kappa_rule
from .planar import NonPlanarWitness, embed_planar
from .verify import chi_a_lower_bound, verify

log = logging.getLogger("chromata")

# errors that mean "the question has a negative answer" rather than "bad input"
_DOMAIN_ERRORS = (InfeasiblePalette, BudgetExceeded, DisconnectedInput)


class UsageError(ChromataError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- input helpers -------------------------------------------------------------


def _read_text(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(args) -> Graph:
    if getattr(args, "graph", None):
        path = Path(args.graph)
        if not path.exists():
            try:
                return named_graph(args.graph)
            except (KeyError, ValueError):
                raise UsageError(f"{args.graph!r} is neither a file nor a known graph name") from None
        args.input = args.graph
    text = _read_text(args.input)
    fmt = args.format or sniff_format(None if args.input in (None, "-") else args.input, text)
    return parse_graph(GraphSource(fmt, text))


def _seed(args) -> int:
    env = os.environ.get("CHROMATA_SEED")
    if env is not None:
        try:
            return int(env, 0)
        except ValueError:
            raise UsageError(f"CHROMATA_SEED must be an integer, got {env!r}") from None
    return args.seed


def _stamp(doc: dict, args, start: float) -> dict:
    if args.timing:
        doc["wall_time"] = round(time.perf_counter() - start, 6)
    return doc


# -- subcommands -----------------------------------------------------------------


def cmd_color(args) -> tuple[int, dict]:
    g = _load_graph(args)
    cfg = SolveConfig(args.kappa, args.restarts, args.moves, _seed(args), args.order)
    out = solve(g, cfg)
    doc = out.to_dict(timing=args.timing)
    doc["max_degree"] = g.max_degree
    if out.solved:
        doc["verify"] = verify(g, out.coloring, out.kappa).to_dict()
    if args.json_out:
        Path(args.json_out).write_text(json.dumps(out.coloring.to_dict() if out.solved else None, sort_keys=True) + "\n")
    return (0 if out.solved else 1), doc


def _load_coloring(args, g: Graph) -> EdgeColoring | list[int]:
    if args.colors is not None:
        try:
            colors = [int(x) for x in args.colors.replace(",", " ").split()]
        except ValueError:
            raise UsageError("--colors takes integers, one per edge in edge-id order") from None
        if len(colors) != g.m:
            raise UsageError(f"--colors lists {len(colors)} colors for {g.m} edges")
        return colors
    if args.coloring is None:
        raise UsageError("verify needs --coloring FILE or --colors LIST")
    try:
        doc = json.loads(_read_text(args.coloring))
    except json.JSONDecodeError as exc:
        raise ParseError(f"coloring is not JSON: {exc}") from None
    from .coloring import coloring_list_from_dict

    kappa, colors = coloring_list_from_dict(g, doc)
    if args.kappa is None:
        args.kappa = kappa
    return colors


def cmd_verify(args) -> tuple[int, dict]:
    g = _load_graph(args)
    colors = _load_coloring(args, g)
    rep = verify(g, colors, args.kappa)
    return (0 if rep.ok else 1), rep.to_dict()


def cmd_exact(args) -> tuple[int, dict]:
    g = _load_graph(args)
    if args.decision is not None:
        dec = acyclic_colorable(g, args.decision, args.budget)
        doc = {
            "kappa": args.decision,
            "status": dec.status,
            "nodes_expanded": dec.nodes_expanded,
            "certificate": dec.certificate.to_dict() if dec.certificate else None,
        }
        return (0 if dec.status == YES else 1), doc
    res = chi_a_exact(g, args.budget)
    doc = res.to_dict()
    doc["max_degree"] = g.max_degree
    return 0, doc


def cmd_audit(args) -> tuple[int, dict]:
    g = _load_graph(args)
    emb = embed_planar(g)
    if isinstance(emb, NonPlanarWitness):
        raise InvalidParam(f"graph is not planar ({emb.kind} subdivision on edges {list(emb.edges)})")
    rules = builtin_rules() if args.rules == "builtin" else parse_rules(_read_text(args.rules))
    rep = audit(emb, rules)
    doc = rep.to_dict()
    doc["face_degrees"] = list(emb.face_degrees)
    code = 0
    if args.cases:
        cases = enumerate_vertex_cases(range(args.min_degree, args.max_degree + 1), rules=rules)
        doc["vertex_cases"] = [c.to_dict() for c in cases]
        low = [c for c in cases if c.min_charge is not None and c.min_charge < 0]
        doc["vertex_cases_nonnegative"] = not low
        code = 1 if low else 0
    return code, doc


def cmd_lemma(args) -> tuple[int, dict]:
    if (args.catalog is None) == (args.gen is None):
        raise UsageError("lemma needs exactly one of --catalog FILE or --gen N")
    ids = LEMMA_IDS if args.lemma == "all" else (args.lemma,)
    if args.lemma != "all" and args.lemma not in LEMMA_IDS:
        from .errors import UnknownLemmaId

        raise UnknownLemmaId(f"unknown lemma {args.lemma!r}; known: {', '.join(LEMMA_IDS)}")
    rule = parse_kappa_rule(args.kappa)
    graphs = read_graph6_lines(_read_text(args.catalog)) if args.catalog else all_graphs(args.gen)
    search = find_deletion_minimal(graphs, rule, args.budget)
    results, failures, fact2_bad, fact2_count = [], 0, 0, 0
    for cert in search:
        verdicts = [check_lemma(i, cert.graph, cert) for i in ids]
        failures += sum(1 for v in verdicts if v.status == FAILS)
        fact2 = check_fact2_all(cert)
        fact2_count += len(fact2)
        fact2_bad += sum(1 for f in fact2 if not f.holds)
        results.append({
            "certificate": cert.to_dict(),
            "verdicts": [v.to_dict() for v in verdicts],
            "fact2": {"checked": len(fact2), "failed": sum(1 for f in fact2 if not f.holds)},
        })
    doc = {
        "kappa_rule": args.kappa,
        "scanned": search.scanned,
        "found": len(search),
        "instances": f"{len(search)} instances",
        "skipped": search.skipped,
        "lemma_failures": failures,
        "fact2_checked": fact2_count,
        "fact2_failures": fact2_bad,
        "results": results,
    }
    return (1 if failures or fact2_bad else 0), doc


def cmd_gen(args) -> tuple[int, dict]:
    g = random_planar(args.n, as_fraction(args.p), _seed(args))
    doc = {
        "seed": _seed(args),
        "edge_keep_prob": str(as_fraction(args.p)),
        "graph": graph_to_dict(g),
        "serialized": serialize_graph(g, args.out_format).payload,
        "format": args.out_format,
    }
    return 0, doc


def cmd_stats(args) -> tuple[int, dict]:
    g = _load_graph(args)
    emb = embed_planar(g)
    planar = not isinstance(emb, NonPlanarWitness)
    doc = {
        "n": g.n,
        "m": g.m,
        "max_degree": g.max_degree,
        "min_degree": g.min_degree if g.n else 0,
        "degree_sequence": sorted(g.degrees, reverse=True),
        "connected": g.is_connected(),
        "biconnected": g.is_biconnected(),
        "planar": planar,
        "face_degrees": sorted(emb.face_degrees) if planar else None,
        "chi_a_lower_bound": chi_a_lower_bound(g),
    }
    return 0, doc


# -- parser ------------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (CHROMATA_SEED wins when set)")
    common.add_argument("--table", action="store_true", help="render the JSON as a plain table")
    common.add_argument("--threads", type=_positive, default=1, help="worker cap; results never depend on it")
    common.add_argument("--timing", action="store_true", help="include wall-clock fields (breaks byte determinism)")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    graph_in = _Parser(add_help=False)
    graph_in.add_argument("input", nargs="?", default="-", help="graph file, or - for stdin")
    graph_in.add_argument("--graph", help="graph file or a name such as tetrahedron, K4, C5")
    graph_in.add_argument("--format", choices=FORMATS, help="input format (guessed when omitted)")

    p = _Parser(prog="chromata", description="Acyclic edge coloring toolkit.")
    p.add_argument("--version", action="version", version=f"chromata {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("color", parents=[common, graph_in], help="heuristic acyclic edge coloring")
    c.add_argument("--kappa", type=int, help="palette size (default: max degree + 6)")
    c.add_argument("--restarts", type=int, default=20)
    c.add_argument("--moves", type=_positive, default=50, help="recovery moves per edge")
    c.add_argument("--order", choices=EDGE_ORDERS, default="smallest_last")
    c.add_argument("--json-out", help="also write the coloring JSON to this file")
    c.set_defaults(func=cmd_color)

    v = sub.add_parser("verify", parents=[common, graph_in], help="check a coloring")
    v.add_argument("--coloring", help="coloring JSON {kappa, colors: [[edge_id, color], ...]}")
    v.add_argument("--colors", help="colors in edge-id order, comma or space separated")
    v.add_argument("--kappa", type=int, help="palette bound to enforce")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("exact", parents=[common, graph_in], help="exact acyclic chromatic index")
    e.add_argument("--budget", type=_positive, help="search node limit")
    e.add_argument("--decision", type=int, metavar="KAPPA", help="only decide colorability with KAPPA colors")
    e.set_defaults(func=cmd_exact)

    a = sub.add_parser("audit", parents=[common, graph_in], help="discharging audit of a planar graph")
    a.add_argument("--rules", default="builtin", help="'builtin' or a rule file")
    a.add_argument("--cases", action="store_true", help="also enumerate vertex cases")
    a.add_argument("--min-degree", type=int, default=3)
    a.add_argument("--max-degree", type=int, default=14)
    a.set_defaults(func=cmd_audit)

    lm = sub.add_parser("lemma", parents=[common], help="hunt minimal graphs and check lemmas on them")
    lm.add_argument("--catalog", help="file of graph6 lines")
    lm.add_argument("--gen", type=_positive, metavar="N", help="all graphs on at most N vertices")
    lm.add_argument("--kappa", default="delta", help="kappa rule such as delta, delta+2 or 5")
    lm.add_argument("--lemma", default="all", help=f"all or one of: {', '.join(LEMMA_IDS)}")
    lm.add_argument("--budget", type=_positive, help="search node limit per graph")
    lm.set_defaults(func=cmd_lemma)

    g = sub.add_parser("gen", parents=[common], help="random planar graph")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--p", default="1", help="edge keep probability, e.g. 0.7 or 7/10")
    g.add_argument("--out-format", choices=FORMATS, default="json")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("stats", parents=[common, graph_in], help="basic graph statistics")
    s.set_defaults(func=cmd_stats)
    return p


def _render_table(doc: dict) -> str:
    rows = []
    for key in sorted(doc):
        val = doc[key]
        text = val if isinstance(val, str) else json.dumps(val, sort_keys=True)
        if len(text) > 70:
            text = text[:67] + "..."
        rows.append((key, text))
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {t}" for k, t in rows)


def _error_doc(exc: Exception) -> dict:
    kind = exc.kind if isinstance(exc, ChromataError) else type(exc).__name__
    return {"error": {"kind": kind, "message": str(exc)}}


def run(argv: list[str] | None = None, out=None) -> int:
    """Parse ``argv``, run the subcommand, write one JSON document to ``out``."""
    out = out or sys.stdout
    start = time.perf_counter()
    table = False
    try:
        args = build_parser().parse_args(argv)
        table = args.table
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
        code, doc = args.func(args)
        doc = _stamp(doc, args, start)
    except _DOMAIN_ERRORS as exc:
        code, doc = 1, _error_doc(exc)
    except (UsageError, ChromataError) as exc:
        code, doc = 2, _error_doc(exc)
    except SystemExit as exc:  # --help and --version
        return int(exc.code or 0)
    out.write((_render_table(doc) if table else json.dumps(doc, sort_keys=True)) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
