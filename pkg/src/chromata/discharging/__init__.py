"""Exact-rational discharging: rules, charges, closed-form identities, vertex cases."""

from .audit import AuditReport, ChargeState, Transfer, apply_rules, audit, initial_charges
from .cases import (
    ConstraintCatalog,
    FaceCase,
    VertexCase,
    builtin_constraints,
    closed_form_charge,
    enumerate_face_cases,
    enumerate_vertex_cases,
    triangle_row_totals,
)
from .identities import IDENTITIES, evaluate, verify_identities
from .rules import BUILTIN_RULES_TEXT, DegreeClass, DischargeRule, DischargeRuleSet, Rational, builtin_rules, parse_rules

__all__ = [
    "AuditReport",
    "BUILTIN_RULES_TEXT",
    "ChargeState",
    "ConstraintCatalog",
    "DegreeClass",
    "DischargeRule",
    "DischargeRuleSet",
    "FaceCase",
    "IDENTITIES",
    "Rational",
    "Transfer",
    "VertexCase",
    "apply_rules",
    "audit",
    "builtin_constraints",
    "builtin_rules",
    "closed_form_charge",
    "enumerate_face_cases",
    "enumerate_vertex_cases",
    "evaluate",
    "initial_charges",
    "parse_rules",
    "triangle_row_totals",
    "verify_identities",
]
