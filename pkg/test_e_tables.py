"""
Tests pinning the E6, E7 and E8 windows to their known dimension vectors and
class identities, and the charges that follow from them
"""
from fractions import Fraction

import pytest

from app.charge import TSD, central_charge
from app.quiver_core import KClass, window_class

# (label, shift k for tau^k, dimension vector)
DIMENSIONS = {
    "E6": [
        ("X0", 0, (1, 0, 0, 0, 0, 0, 0)),
        ("X0", -1, (2, 1, 1, 1, 0, 0, 0)),
        ("X1", 0, (1, 1, 0, 0, 0, 0, 0)),
        ("X2", 0, (1, 0, 1, 0, 0, 0, 0)),
        ("X3", 0, (1, 0, 0, 1, 0, 0, 0)),
        ("X4", 0, (1, 1, 0, 0, 1, 0, 0)),
        ("X5", 0, (1, 0, 1, 0, 0, 1, 0)),
        ("X6", 0, (1, 0, 0, 1, 0, 0, 1)),
        ("X4", 1, (0, 0, 0, 0, -1, 0, 0)),
        ("X5", 1, (0, 0, 0, 0, 0, -1, 0)),
        ("X6", 1, (0, 0, 0, 0, 0, 0, -1)),
    ],
    "E7": [
        ("X0", 0, (1, 0, 0, 0, 0, 0, 0, 0)),
        ("X0", -1, (2, 1, 1, 1, 0, 0, 0, 0)),
        ("X1", 0, (1, 1, 0, 0, 0, 0, 0, 0)),
        ("X2", 0, (1, 0, 1, 0, 0, 0, 0, 0)),
        ("X3", 0, (1, 0, 0, 1, 0, 0, 0, 0)),
        ("X4", 0, (1, 0, 1, 0, 1, 0, 0, 0)),
        ("X5", 0, (1, 0, 0, 1, 0, 1, 0, 0)),
        ("X6", 0, (1, 0, 1, 0, 1, 0, 1, 0)),
        ("X7", 0, (1, 0, 0, 1, 0, 1, 0, 1)),
        ("X4", 1, (0, 0, 0, 0, -1, 0, -1, 0)),
        ("X5", 1, (0, 0, 0, 0, 0, -1, 0, -1)),
        ("X6", 1, (0, 0, 0, 0, 0, 0, -1, 0)),
        ("X7", 1, (0, 0, 0, 0, 0, 0, 0, -1)),
    ],
    "E8": [
        ("X0", 0, (1, 0, 0, 0, 0, 0, 0, 0, 0)),
        ("X0", -1, (2, 1, 1, 1, 0, 0, 0, 0, 0)),
        ("X1", 0, (1, 1, 0, 0, 0, 0, 0, 0, 0)),
        ("X2", 0, (1, 0, 1, 0, 0, 0, 0, 0, 0)),
        ("X3", 0, (1, 0, 0, 1, 0, 0, 0, 0, 0)),
        ("X4", 0, (1, 0, 1, 0, 1, 0, 0, 0, 0)),
        ("X5", 0, (1, 0, 0, 1, 0, 1, 0, 0, 0)),
        ("X6", 0, (1, 0, 0, 1, 0, 1, 1, 0, 0)),
        ("X7", 0, (1, 0, 0, 1, 0, 1, 1, 1, 0)),
        ("X8", 0, (1, 0, 0, 1, 0, 1, 1, 1, 1)),
        ("X4", 1, (0, 0, 0, 0, -1, 0, 0, 0, 0)),
        ("X5", 1, (0, 0, 0, 0, 0, -1, -1, -1, -1)),
        ("X6", 1, (0, 0, 0, 0, 0, 0, -1, -1, -1)),
        ("X7", 1, (0, 0, 0, 0, 0, 0, 0, -1, -1)),
        ("X8", 1, (0, 0, 0, 0, 0, 0, 0, 0, -1)),
    ],
}

# The reference class [X0] followed by these simples spans each lattice
BASIS = {
    "E6": [(1, 1), (1, 2), (2, 1), (2, 3), (3, 1), (3, 3)],
    "E7": [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3)],
    "E8": [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3), (3, 4)],
}

SIMPLE_DIMENSIONS = {
    "E6": [
        (1, 1, 1, 1, 0, 0, 0),
        (2, 1, 1, 1, 1, 1, 1),
        (1, 1, 1, 0, 0, 1, 0),
        (1, 0, 1, 1, 0, 0, 1),
        (1, 1, 0, 1, 0, 0, 1),
        (1, 0, 1, 1, 0, 1, 0),
    ],
}

# (label, k, multiplier m, coefficients of m [tau^k X] over BASIS)
IDENTITIES = {
    "E6": [
        ("X0", 0, 1, (1, 0, 0, 0, 0, 0, 0)),
        ("X0", -1, 1, (1, 1, 0, 0, 0, 0, 0)),
        ("X1", 0, 3, (2, 1, 0, 1, -1, 1, -1)),
        ("X2", 0, 3, (2, 1, 0, 1, 2, -2, -1)),
        ("X3", 0, 3, (2, 1, 0, -2, -1, 1, 2)),
        ("X4", 0, 3, (1, 2, 3, -1, -2, -1, -2)),
        ("X5", 0, 3, (1, -1, 0, 2, 1, -1, 1)),
        ("X6", 0, 3, (1, -1, 0, -1, 1, 2, 1)),
        ("X4", 1, 3, (1, -1, -3, 2, 1, 2, 1)),
        ("X5", 1, 3, (1, 2, 0, -1, 1, -1, -2)),
        ("X6", 1, 3, (1, 2, 0, -1, -2, -1, 1)),
    ],
    "E7": [
        ("X0", 0, 1, (1, 0, 0, 0, 0, 0, 0, 0)),
        ("X0", -1, 1, (1, 0, 0, 0, 1, 0, 0, 0)),
        ("X1", 0, 2, (1, -1, -1, 1, 1, 1, 0, 1)),
        ("X2", 0, 4, (3, 3, 1, -1, 1, -1, -2, -3)),
        ("X3", 0, 4, (3, -1, 1, -1, 1, -1, 2, 1)),
        ("X4", 0, 2, (1, 1, 1, -1, -1, 1, 0, -1)),
        ("X5", 0, 2, (1, 1, 1, -1, -1, -1, 0, 1)),
        ("X6", 0, 4, (1, 1, -1, 1, -1, 1, 2, -1)),
        ("X7", 0, 4, (1, 1, 3, 1, -1, -3, -2, -1)),
        ("X4", 1, 2, (1, 1, 1, -1, 1, -1, -2, -1)),
        ("X5", 1, 2, (1, -1, -1, -1, 1, 1, 2, 1)),
        ("X6", 1, 4, (1, 1, 3, -3, -1, 1, -2, -1)),
        ("X7", 1, 4, (1, 1, -1, -3, -1, 1, 2, 3)),
    ],
    "E8": [
        ("X0", 0, 1, (1, 0, 0, 0, 0, 0, 0, 0, 0)),
        ("X0", -1, 1, (1, 1, 1, 0, 0, -1, -1, -1, -1)),
        ("X1", 0, 2, (1, 0, 1, 0, 0, -1, 0, -1, 0)),
        ("X2", 0, 3, (2, 1, 1, 1, -1, -1, -2, 0, -1)),
        ("X3", 0, 6, (5, 4, 1, -2, 2, -1, -2, -3, -4)),
        ("X4", 0, 3, (1, -1, -1, 2, 1, 1, -1, 0, 1)),
        ("X5", 0, 3, (2, 1, 1, -2, -1, 2, 1, 0, -1)),
        ("X6", 0, 2, (1, 0, -1, 0, 0, 1, 2, 1, 0)),
        ("X7", 0, 3, (1, -1, -1, -1, 1, 1, 2, 3, 1)),
        ("X8", 0, 6, (1, 2, -1, -4, -2, 1, 2, 3, 4)),
        ("X4", 1, 3, (1, 2, 2, -1, -2, -2, -1, 0, -2)),
        ("X5", 1, 3, (2, 1, 1, 1, 2, -1, -2, -3, -4)),
        ("X6", 1, 2, (1, 0, 1, 0, 0, 1, 0, -1, -2)),
        ("X7", 1, 3, (1, -1, -1, 2, 1, 1, 2, 0, -2)),
        ("X8", 1, 6, (1, -4, -1, 2, 4, 1, 2, 3, -2)),
    ],
}


def _rows(table):
    return [(tag,) + row for tag, rows in table.items() for row in rows]


def _basis(cox, tag):
    return [cox.section_classes["X0"]] + [cox.simples[ij] for ij in BASIS[tag]]


def _combination(classes, coeffs):
    total = KClass.of([0] * len(classes[0]))
    for c, v in zip(coeffs, classes):
        total = total + c * v
    return total


def _datum(w):
    """A non-uniform datum: parts of branch i proportional to i + 2j"""
    mu = []
    for i, wi in enumerate(w.weights, start=1):
        raw = [i + 2 * j for j in range(1, wi + 1)]
        mu.append([Fraction(x, sum(raw)) for x in raw])
    return TSD.create(w, mu, Fraction(-3, 4), Fraction(5, 2))


@pytest.mark.parametrize("tag, label, k, dims", _rows(DIMENSIONS))
def test_dimension_vector(cox, tag, label, k, dims):
    assert window_class(cox(tag), label, k).coords == dims


@pytest.mark.parametrize("tag", sorted(SIMPLE_DIMENSIONS))
def test_simple_dimension_vectors(cox, tag):
    c = cox(tag)
    assert [c.simples[ij].coords for ij in BASIS[tag]] == SIMPLE_DIMENSIONS[tag]


@pytest.mark.parametrize("tag, label, k, m, coeffs", _rows(IDENTITIES))
def test_class_identity(cox, tag, label, k, m, coeffs):
    c = cox(tag)
    assert m * window_class(c, label, k) == _combination(_basis(c, tag), coeffs)


@pytest.mark.parametrize("tag, label, k, m, coeffs", _rows(IDENTITIES))
def test_charge_identity(cox, tag, label, k, m, coeffs):
    c = cox(tag)
    tsd = _datum(c.weights)
    charge = central_charge(tsd, window_class(c, label, k), c)
    # Z(X0) = z and Z(S_i^j) = -mu_i^j
    expected_s = -sum((a * tsd.mu_of(i, j) for a, (i, j) in zip(coeffs[1:], BASIS[tag])), Fraction(0))
    assert m * charge.r == coeffs[0]
    assert m * charge.s == expected_s
