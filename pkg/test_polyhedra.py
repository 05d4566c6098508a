"""
Tests for Fourier-Motzkin elimination and the implication check
"""
from fractions import Fraction

import pytest

from app.exceptions import TooManyVariables
from app.polyhedra import (
    Constraint,
    ambient_constraints,
    fourier_motzkin,
    implies,
    normalize_row,
)
from app.quiver_core import parse_type_tag

F = Fraction


def row(coeffs, const, strict=False):
    return Constraint(tuple(F(c) for c in coeffs), F(const), strict)


def test_open_simplex_product_is_nonempty():
    w = parse_type_tag("E8")
    rows = ambient_constraints(w)
    point = fourier_motzkin(rows, len(w.variables()), max_variables=10)
    assert point is not None
    assert all(r.holds(point) for r in rows)


def test_open_interval_pinned_to_a_point_is_empty():
    rows = [row([1], 0, strict=True), row([-1], 0)]
    assert fourier_motzkin(rows, 1, max_variables=10) is None


def test_closed_interval_pinned_to_a_point_is_feasible():
    rows = [row([1], -1), row([-1], 1)]
    assert fourier_motzkin(rows, 1, max_variables=10) == (1,)


def test_feasible_point_in_the_plane():
    # x, y > 0, x + y < 1, x >= 2y
    rows = [
        row([1, 0], 0, strict=True),
        row([0, 1], 0, strict=True),
        row([-1, -1], 1, strict=True),
        row([1, -2], 0),
    ]
    point = fourier_motzkin(rows, 2, max_variables=10)
    assert all(r.holds(point) for r in rows)


def test_normalize_row():
    normalized = normalize_row(row(["1/2", "3/2"], "1/4"))
    assert normalized.coeffs == (1, 3)
    assert normalized.const == F(1, 2)


class TestImplication:
    simplex = [row([1], 0, strict=True), row([-1], 1, strict=True)]

    def test_implied_on_the_closure(self):
        assert implies(self.simplex, row([-1], 1)).implied

    def test_rejected_with_witness(self):
        candidate = row([1], F(-1, 2))
        outcome = implies(self.simplex, candidate)
        assert not outcome.implied
        x = outcome.witness
        assert 0 < x[0] < F(1, 2)
        assert candidate.value(x) < 0

    def test_two_variables(self):
        system = [
            row([1, 0], 0, strict=True),
            row([0, 1], 0, strict=True),
            row([-1, -1], 1, strict=True),
            row([1, -1], 0),
        ]
        assert implies(system, row([1, 0], 0)).implied
        outcome = implies(system, row([-1, 1], F(-1, 10)))
        assert not outcome.implied
        assert outcome.witness is not None
        assert all(r.holds(outcome.witness) for r in system)

    def test_empty_system_implies_everything(self):
        system = [row([1], 0, strict=True), row([-1], 0)]
        outcome = implies(system, row([1], -5))
        assert outcome.implied
        assert outcome.witness is None

    def test_strict_boundary_is_not_reached(self):
        # on 0 < x < 1 the bound x < 1 holds, x <= 1 - 1/100 does not
        assert implies(self.simplex, row([-1], 1, strict=True)).implied
        assert not implies(self.simplex, row([-1], F(99, 100))).implied


def test_elimination_limit():
    rows = [row([1] * 3, 0)]
    with pytest.raises(TooManyVariables):
        fourier_motzkin(rows, 3, max_variables=2)


def test_implication_respects_the_limit():
    system = [row([1, 1, 1], 0)]
    with pytest.raises(TooManyVariables):
        implies(system, row([1, 0, 0], 0), max_variables=2)
