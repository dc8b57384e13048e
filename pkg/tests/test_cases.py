from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

import chromata.discharging.cases as cases
from chromata.discharging import (
    builtin_constraints,
    builtin_rules,
    closed_form_charge,
    enumerate_face_cases,
    enumerate_vertex_cases,
    triangle_row_totals,
)
from chromata.errors import InvalidParam


def brute_min_charge(d: int, catalog) -> Fraction:
    """Every neighbour-class and face-type assignment, no pruning or relaxation."""
    rules = builtin_rules()
    checker = cases._Checker(catalog)
    best = None
    for cs in itertools.product(cases.CLASSES, repeat=d):
        for ts in itertools.product((True, False), repeat=d):
            a = cases._Arrangement(d, False)
            a.c, a.tri = list(cs), list(ts)
            if not checker.feasible(a):
                continue
            total = sum(cases._face_send(rules, a, i) for i in range(d))
            if best is None or total > best:
                best = total
    return Fraction(2 * d - 6) - best


def _min(case_list, d, reduced=False):
    (case,) = [c for c in case_list if c.degree == d and c.reduced == reduced]
    return case.min_charge


def test_worked_vertex_examples():
    found = enumerate_vertex_cases([3, 8, 12])
    assert _min(found, 3) == 0
    assert _min(found, 8) == 0
    assert _min(found, 12) == 0
    assert closed_form_charge(12) == 0 and closed_form_charge(20) == 4


@pytest.mark.parametrize("d", [3, 4])
def test_search_matches_brute_force(d):
    cat = builtin_constraints()
    assert _min(enumerate_vertex_cases([d], cat), d) == brute_min_charge(d, cat)


def test_weakened_catalog_goes_negative_and_search_agrees():
    cat = builtin_constraints().without("4-sum-a")
    brute = brute_min_charge(4, cat)
    assert brute == Fraction(-6, 5)
    assert _min(enumerate_vertex_cases([4], cat), 4) == brute


def test_witness_is_a_feasible_arrangement():
    for case in enumerate_vertex_cases([5, 7]):
        w = case.witness
        assert len(w["neighbors"]) == case.degree == len(w["triangles"])


def test_triangles_always_receive_exactly_three():
    totals = triangle_row_totals()
    assert totals and all(t == {3} for t in totals.values())


def test_larger_faces_end_nonnegative():
    for k in (4, 5):
        for face in enumerate_face_cases(k):
            assert face.charge >= 0, face.to_dict()


def test_bad_degrees():
    with pytest.raises(InvalidParam):
        enumerate_vertex_cases([2])
    with pytest.raises(InvalidParam):
        builtin_constraints().without("nope").__class__(enabled=frozenset({"nope"}))
