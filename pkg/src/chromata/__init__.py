"""Acyclic edge coloring of graphs: solvers, a verifier and a discharging auditor."""

from __future__ import annotations

__version__ = "0.1.0"

from .coloring import DichromaticPath, EdgeColoring
from .exact import acyclic_colorable, chi_a_exact
from .generate import random_planar
from .graph import Graph, named_graph, strip_small_vertices
from .heuristic import SolveConfig, SolveOutcome, solve, solve_minimize
from .io import GraphSource, parse_graph, serialize_graph
from .lemmas import LemmaVerdict, MinimalityCertificate, check_fact2, check_lemma, find_deletion_minimal
from .planar import NonPlanarWitness, PlaneEmbedding, embed_planar, faces
from .verify import VerifyReport, chi_a_lower_bound, verify

__all__ = [
    "DichromaticPath",
    "EdgeColoring",
    "Graph",
    "GraphSource",
    "LemmaVerdict",
    "MinimalityCertificate",
    "NonPlanarWitness",
    "PlaneEmbedding",
    "SolveConfig",
    "SolveOutcome",
    "VerifyReport",
    "acyclic_colorable",
    "check_fact2",
    "check_lemma",
    "chi_a_exact",
    "chi_a_lower_bound",
    "embed_planar",
    "faces",
    "find_deletion_minimal",
    "named_graph",
    "parse_graph",
    "random_planar",
    "serialize_graph",
    "solve",
    "solve_minimize",
    "strip_small_vertices",
    "verify",
]
