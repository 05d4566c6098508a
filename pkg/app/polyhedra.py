"""
Exact implication checks between systems of affine inequalities.

A constraint ``g . x + h >= 0`` (or ``> 0``) is a ``Constraint``. A system
implies a candidate over the open product of partition simplices iff the
system together with the negated candidate is empty, which Fourier-Motzkin
elimination decides with strict/non-strict bookkeeping. A candidate that is
not implied comes with a rational witness from back-substitution.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from app.exceptions import TooManyVariables
from app.quiver_core import WeightData
from app.rationals import dot, primitive_integer_vector

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]


class Constraint(NamedTuple):
    coeffs: Vector
    const: Fraction
    strict: bool = False

    def value(self, x: Sequence[Fraction]) -> Fraction:
        return dot(self.coeffs, x) + self.const

    def holds(self, x: Sequence[Fraction]) -> bool:
        v = self.value(x)
        return v > 0 if self.strict else v >= 0


def ambient_constraints(w: WeightData) -> List[Constraint]:
    """mu_i^j > 0 for every part, with the last part of each branch written as 1 - sum"""
    variables = w.variables()
    n = len(variables)
    rows = []
    for k in range(n):
        coeffs = [Fraction(0)] * n
        coeffs[k] = Fraction(1)
        rows.append(Constraint(tuple(coeffs), Fraction(0), True))
    for i, wi in enumerate(w.weights, start=1):
        if wi == 1:
            continue
        coeffs = tuple(Fraction(-1) if var[0] == i else Fraction(0) for var in variables)
        rows.append(Constraint(coeffs, Fraction(1), True))
    return rows


@dataclass
class Implication:
    """Outcome of 'system implies candidate' over the open simplex product"""

    implied: bool
    witness: Optional[Vector] = None


def normalize_row(row: Constraint) -> Constraint:
    """Scale so the coefficients are coprime integers; the constant follows"""
    if all(c == 0 for c in row.coeffs):
        return row
    ints = primitive_integer_vector(row.coeffs)
    pivot = next(k for k, c in enumerate(row.coeffs) if c != 0)
    factor = Fraction(ints[pivot]) / row.coeffs[pivot]
    return Constraint(tuple(Fraction(c) for c in ints), row.const * factor, row.strict)


def _prune(rows: Sequence[Constraint]) -> Tuple[List[Constraint], bool]:
    """
    Keep the tightest row per direction; check constant rows.

    Returns the pruned rows and False when a constant row is violated.
    """
    best: Dict[Vector, Constraint] = {}
    for row in rows:
        if all(c == 0 for c in row.coeffs):
            if row.const < 0 or (row.strict and row.const == 0):
                return [], False
            continue
        row = normalize_row(row)
        key = row.coeffs
        kept = best.get(key)
        if kept is None or row.const < kept.const or (row.const == kept.const and row.strict and not kept.strict):
            best[key] = row
    return list(best.values()), True


def _eliminate(rows: Sequence[Constraint], k: int) -> List[Constraint]:
    pos = [r for r in rows if r.coeffs[k] > 0]
    neg = [r for r in rows if r.coeffs[k] < 0]
    out = [r for r in rows if r.coeffs[k] == 0]
    for p in pos:
        for q in neg:
            a, b = p.coeffs[k], -q.coeffs[k]
            coeffs = tuple(x / a + y / b for x, y in zip(p.coeffs, q.coeffs))
            out.append(Constraint(coeffs, p.const / a + q.const / b, p.strict or q.strict))
    return out


def fourier_motzkin(constraints: Sequence[Constraint], n: int, max_variables: int) -> Optional[Vector]:
    """
    Feasibility of a mixed strict/non-strict system by elimination.

    Returns a point satisfying every row, or None when the system is empty.

    Raises:
        TooManyVariables: n exceeds max_variables
    """
    if n > max_variables:
        raise TooManyVariables(f"{n} variables exceed the elimination limit of {max_variables}")
    rows, ok = _prune(constraints)
    if not ok:
        return None
    stages = []
    for k in range(n):
        stages.append(rows)
        rows, ok = _prune(_eliminate(rows, k))
        logger.debug(f"FM eliminated x{k}: {len(rows)} rows remain")
        if not ok:
            return None

    x = [Fraction(0)] * n
    for k in reversed(range(n)):
        lo = hi = None
        lo_strict = hi_strict = False
        for row in stages[k]:
            a = row.coeffs[k]
            if a == 0:
                continue
            rest = row.const + sum((row.coeffs[t] * x[t] for t in range(k + 1, n)), Fraction(0))
            bound = -rest / a
            if a > 0:
                if lo is None or bound > lo or (bound == lo and row.strict):
                    lo, lo_strict = bound, row.strict
            else:
                if hi is None or bound < hi or (bound == hi and row.strict):
                    hi, hi_strict = bound, row.strict
        if lo is not None and hi is not None:
            x[k] = lo if lo == hi else (lo + hi) / 2
        elif lo is not None:
            x[k] = lo + 1
        elif hi is not None:
            x[k] = hi - 1
    point = tuple(x)
    if not all(row.holds(point) for row in constraints):
        raise ArithmeticError("Fourier-Motzkin back-substitution produced an infeasible point")
    return point


def implies(system: Sequence[Constraint], candidate: Constraint, max_variables: int = 10) -> Implication:
    """
    Decide candidate >= 0 (> 0 when strict) on {system}.

    The candidate is implied iff {system, not candidate} is empty; otherwise
    the returned witness satisfies every system row and violates the candidate.

    Raises:
        TooManyVariables: more variables than max_variables
    """
    n = len(candidate.coeffs)
    negated = Constraint(tuple(-c for c in candidate.coeffs), -candidate.const, not candidate.strict)
    point = fourier_motzkin(list(system) + [negated], n, max_variables)
    if point is None:
        return Implication(implied=True)
    return Implication(implied=False, witness=point)
