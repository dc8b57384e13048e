"""Closed-form charge computations replayed in exact rational arithmetic.

Each identity is written as plain ASCII arithmetic (``-3 + 17/28 + 8/7 + 5/4 = 0``)
and evaluated by a tiny AST walker over :class:`fractions.Fraction`, so
``1/3`` is exactly one third and there is no tolerance anywhere.
"""

from __future__ import annotations

import ast
import operator
from dataclasses import dataclass
from fractions import Fraction

_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}
_RELATIONS = {"=": operator.eq, ">=": operator.ge, ">": operator.gt}


def evaluate(expr: str) -> Fraction:
    """Evaluate ``+ - * /`` and parentheses over integers exactly."""

    def walk(node: ast.AST) -> Fraction:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return Fraction(node.value)
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](walk(node.left), walk(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = walk(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        raise ValueError(f"unsupported syntax in {expr!r}")

    return walk(ast.parse(expr.strip(), mode="eval"))


@dataclass(frozen=True)
class IdentityCheck:
    id: str
    text: str
    lhs: Fraction
    relation: str
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return _RELATIONS[self.relation](self.lhs, self.rhs)

    def to_dict(self) -> dict:
        return {"id": self.id, "identity": self.text, "lhs": str(self.lhs), "rhs": str(self.rhs), "pass": self.ok}


def check(identity_id: str, text: str) -> IdentityCheck:
    for rel in (">=", ">", "="):
        if rel in text:
            lhs, rhs = text.split(rel, 1)
            return IdentityCheck(identity_id, text, evaluate(lhs), rel, evaluate(rhs))
    raise ValueError(f"no relation in {text!r}")


def _identities() -> list[tuple[str, str]]:
    rows = [
        # triangles: every row brings the face from -3 to exactly 0
        ("face.3-9-9", "-3 + 2*(3/2) = 0"),
        ("face.4-4-10", "-3 + 2*(4/5) + 7/5 = 0"),
        ("face.4-5-11", "-3 + 4/5 + 17/20 + 27/20 = 0"),
        ("face.4-5-not11", "-3 + 2*(4/5) + 7/5 = 0"),
        ("face.4-6-10", "-3 + 2/3 + 1 + 4/3 = 0"),
        ("face.4-78-79", "-3 + 1/2 + 2*(5/4) = 0"),
        ("face.4-78-10", "-3 + 1/2 + 7/6 + 4/3 = 0"),
        ("face.4-9-9.low5", "-3 + 1/5 + 2*(7/5) = 0"),
        ("face.4-9-9.six", "-3 + 1/3 + 2*(4/3) = 0"),
        ("face.4-9-9.high", "-3 + 1/2 + 2*(5/4) = 0"),
        ("face.5-5-57", "-3 + 3*1 = 0"),
        ("face.5-5-8", "-3 + 2*(7/8) + 5/4 = 0"),
        ("face.5-6-6", "-3 + 3*1 = 0"),
        ("face.5-6-7", "-3 + 5/6 + 1 + 7/6 = 0"),
        ("face.5-6-8", "-3 + 3/4 + 1 + 5/4 = 0"),
        ("face.5-7-7", "-3 + 2/3 + 2*(7/6) = 0"),
        ("face.5-7-8", "-3 + 17/28 + 8/7 + 5/4 = 0"),
        ("face.5-8-8", "-3 + 1/2 + 2*(5/4) = 0"),
        ("face.6-6-6", "-3 + 3*1 = 0"),
        # larger faces
        ("face4.min5", "-2 + 4*(1/2) = 0"),
        ("face4.two9", "-2 + 2*1 = 0"),
        ("face5.has9", "-1 + 1 = 0"),
        ("face5.two5", "-1 + 2*(1/2) = 0"),
        ("face6", "6 - 6 >= 0"),
        # vertices
        ("v3", "2*3 - 6 = 0"),
        ("v4.low5", "2 - 2*(4/5) - 2*(1/5) = 0"),
        ("v4.six", "2 - 2*(2/3) - 2*(1/3) = 0"),
        ("v4.high", "2 - 4*(1/2) = 0"),
        ("v5.at-most-4/5", "4 - 5*(4/5) = 0"),
        ("v5.555", "4 - 1 - 2*(7/8) - 2*(1/2) > 0"),
        ("v5.556", "4 - 1 - 7/8 - 3/4 - 2*(1/2) > 0"),
        ("v5.557", "4 - 2*1 - 3*(2/3) = 0"),
        ("v5.566", "4 - 1 - 2*(5/6) - 2*(2/3) = 0"),
        ("v5.one-half", "4 - 4*(7/8) - 1/2 = 0"),
        ("v5.58.77", "4 - 2*(7/8) - 2*(17/28) - 2/3 > 0"),
        ("v5.58.67", "4 - 2*(7/8) - 3/4 - 5/6 - 17/28 > 0"),
        ("v5.567.v4", "4 - 5/6 - 3/4 - 17/28 - 2*(17/20) > 0"),
        ("v5.567.v6", "4 - 2/3 - 4*(5/6) = 0"),
        ("v5.4-11", "4 - 2*(17/28) - 2/3 - 2*(17/20) > 0"),
        ("v6", "6 - 6*1 = 0"),
        ("v7.one-half", "8 - 6*(5/4) - 1/2 = 0"),
        ("v7.all-tri", "8 - 6*(7/6) - 1 = 0"),
        ("v8", "10 - 8*(5/4) = 0"),
        ("v9.reduced", "12 - 7*1 - 2*(3/2) > 0"),
        ("v9.L9", "12 - 7*1 - 2*(3/2) > 0"),
        ("v9.tau4", "12 - 5*(3/2) - 4*1 > 0"),
        ("v10.reduced", "14 - 4*(3/2) - 6*1 > 0"),
        ("v10.two4faces", "14 - 8*(3/2) - 2*1 = 0"),
        ("v10.s56.nos4", "14 - 6*(3/2) - 4*(5/4) = 0"),
        ("v10.s56.one4face", "14 - 6*(3/2) - 1 - 3*(4/3) = 0"),
        ("v10.s6", "14 - 6*(3/2) - 2*(4/3) - 2*1 > 0"),
        ("v10.s7", "14 - 8*(3/2) - 2*1 = 0"),
        ("v11.reduced", "16 - 6*(3/2) - 5*1 > 0"),
        ("v11.sends1", "16 - 10*(3/2) - 1 = 0"),
        ("v11.three3", "16 - 6*(3/2) - 5*(7/5) = 0"),
        ("v11.5-5-11", "16 - 8*(3/2) - 3*(5/4) > 0"),
        ("v11.4-5-11", "16 - 8*(3/2) - 5/4 - 27/20 - 7/5 = 0"),
    ]
    for tau in range(4):
        rows.append((f"v9.tau{tau}", f"12 - {tau} - 2*{tau}*(3/2) - (9 - 3*{tau})*(5/4) >= 0"))
    for s in range(5):
        rows.append((f"v10.s{s}.closed", f"14 - {s}*(3/2) - (10 - {s})*(4/3) = 2/3 - {s}/6"))
        rows.append((f"v10.s{s}.sign", f"2/3 - {s}/6 >= 0"))
    for d in range(12, 21):
        rows.append((f"v{d}.closed", f"2*{d} - 6 - {d}*(3/2) = {d}/2 - 6"))
        rows.append((f"v{d}.sign", f"{d}/2 - 6 >= 0"))
    return rows


IDENTITIES: tuple[tuple[str, str], ...] = tuple(_identities())


def verify_identities() -> list[IdentityCheck]:
    return [check(i, text) for i, text in IDENTITIES]
