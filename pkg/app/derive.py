"""
Inequality systems of the total semi-stability region.

The derived system comes from phase monotonicity along every arrow of one
tau-period of the vector-bundle mesh; the listed system is the closed-form
list per Euclidean type. ``polytope_equivalent`` decides whether two systems
cut out the same region of the open partition simplices.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from app.charge import symbolic_charge_at
from app.config import settings
from app.exceptions import IndexOutOfRange, NonPositiveRank
from app.forms import (
    Inequality,
    LinearForm,
    SymbolicCharge,
    Variable,
    dedup,
    is_trivial,
    mu_variable,
)
from app.polyhedra import Constraint, ambient_constraints, implies, normalize_row
from app.quiver_core import CoxeterData, StarQuiver, WeightData, coxeter_for, section_quiver

logger = logging.getLogger(__name__)

READINGS = ("coupled", "independent")
FROZEN_READING = "coupled"


def symbolic_charge(cox: CoxeterData, section: StarQuiver, vertex: str, k: int) -> SymbolicCharge:
    """Charge of tau^k X_vertex as r z + s(mu)"""
    if vertex not in section.vertices:
        raise IndexOutOfRange(f"{vertex!r} is not a vertex of the section of {cox.weights}")
    return symbolic_charge_at(cox, vertex, k)


def arrow_inequality(
    x: SymbolicCharge,
    y: SymbolicCharge,
    provenance: str = "",
    indices: Sequence = (),
) -> Inequality:
    """
    phase(X) <= phase(Y) for Im z > 0, i.e. s_x r_y - s_y r_x >= 0.

    Raises:
        NonPositiveRank: r_x or r_y is not positive
    """
    if x.r <= 0 or y.r <= 0:
        raise NonPositiveRank(f"Rank coefficients {x.r}, {y.r} must be positive ({provenance})")
    lhs = y.s * x.r
    rhs = x.s * y.r
    return Inequality.between(lhs, rhs, provenance, indices)


def derive_region(w: WeightData, periods: int = 1) -> List[Inequality]:
    """
    Arrow inequalities over the mesh window k in [0, periods * p), without
    the ones implied by positivity of the parts, deduplicated.
    """
    cox = coxeter_for(w)
    section = section_quiver(w)
    raw = []
    for k in range(periods * cox.period):
        for u, v in section.arrows:
            raw.append(arrow_inequality(
                symbolic_charge(cox, section, u, k),
                symbolic_charge(cox, section, v, k),
                f"{u}->{v}@{k}",
                (("arrow", f"{u}->{v}"), ("k", k)),
            ))
            raw.append(arrow_inequality(
                symbolic_charge(cox, section, v, k + 1),
                symbolic_charge(cox, section, u, k),
                f"tau {v}->{u}@{k}",
                (("arrow", f"tau {v}->{u}"), ("k", k)),
            ))
    kept = dedup(ineq for ineq in raw if not is_trivial(ineq.form))
    logger.info(f"Derived {len(kept)} inequalities for {w} from {len(raw)} mesh arrows")
    return kept


# ---------------------------------------------------------------------------
# Listed systems
# ---------------------------------------------------------------------------

def _sign(s: int) -> str:
    return "+" if s > 0 else "-"


class _Lines:
    """Builder for the instances of one listed system"""

    def __init__(self, w: WeightData, reading: str):
        if reading not in READINGS:
            raise ValueError(f"Unknown reading {reading!r}; choose one of {READINGS}")
        self.w = w
        self.reading = reading
        self.out: List[Inequality] = []

    def a(self, i: int) -> LinearForm:
        return mu_variable(self.w, 1, i)

    def b(self, j: int) -> LinearForm:
        return mu_variable(self.w, 2, j)

    def c(self, k: int) -> LinearForm:
        return mu_variable(self.w, 3, k)

    def signs(self, groups: str) -> Iterable[Tuple[Dict[str, int], str]]:
        """Sign assignments for the +- groups of a line, with their id suffix"""
        if self.reading == "coupled":
            for s in (1, -1):
                yield {g: s for g in groups}, _sign(s)
        else:
            for choice in product((1, -1), repeat=len(groups)):
                yield dict(zip(groups, choice)), "".join(f"{g}{_sign(s)}" for g, s in zip(groups, choice))

    def add(self, line: str, lhs: LinearForm, rhs: LinearForm, **indices) -> None:
        suffix = "".join(f".{name}={value}" for name, value in indices.items())
        ident = f"{self.w.tag}.{line}{suffix}"
        self.out.append(Inequality.between(
            lhs, rhs, ident, (("line", line),) + tuple(indices.items())
        ))


def _listed_d(lines: _Lines) -> None:
    a, b, c = lines.a, lines.b, lines.c
    reps = {
        "L1": (a(1) - b(2), a(2) - b(1)),
        "L2": (a(1) - b(1), a(2) - b(2)),
    }
    for j in range(1, lines.w.weights[2] + 1):
        for line, forms in reps.items():
            for rep, x in enumerate(forms, start=1):
                for s in (1, -1):
                    lines.add(line, x * s, c(j), j=j, rep=rep, sign=_sign(s))


def _listed_e6(lines: _Lines) -> None:
    a, b, c = lines.a, lines.b, lines.c
    for i, j, k in product(range(1, 3), range(1, 4), range(1, 4)):
        lines.add("L1", a(i), b(j) + c(k), i=i, j=j, k=k)
    for i, j, k in product(range(1, 3), range(1, 4), range(1, 4)):
        x = (b(j + 1) - b(j)) + (c(k + 1) - c(k))
        for s in (1, -1):
            lines.add("L2", x * s, a(i), i=i, j=j, k=k, sign=_sign(s))


def _listed_e7(lines: _Lines) -> None:
    a, b, c = lines.a, lines.b, lines.c
    I, J, K = range(1, 3), range(1, 4), range(1, 5)
    for i, j, k in product(I, J, K):
        lines.add("L1", a(i), b(j) + c(k), i=i, j=j, k=k)
    for j, k in product(J, K):
        lines.add("L2", b(j), c(k - 1) + c(k + 1), j=j, k=k)
    for i, j, k in product(I, J, K):
        for sg, tag in lines.signs("bc"):
            sb, sc = sg["b"], sg["c"]
            lines.add("L3", a(i) + (b(j) - b(j + sb)), c(k) * 2 + c(k + sc), i=i, j=j, k=k, sign=tag)
    for i, j, k in product(I, J, K):
        for sg, tag in lines.signs("bc"):
            sb, sc = sg["b"], sg["c"]
            lines.add(
                "L4",
                a(i) - a(i + 1) + (b(j) - b(j + sb)),
                c(k) * 2 + c(k + sc) - c(k - sc),
                i=i, j=j, k=k, sign=tag,
            )


def _listed_e8(lines: _Lines) -> None:
    a, b, c = lines.a, lines.b, lines.c
    I, J, K = range(1, 3), range(1, 4), range(1, 6)
    for j, k in product(J, K):
        lines.add("L1", b(j), c(k - 1) + c(k + 1), j=j, k=k)
    for i, k in product(I, K):
        lines.add("L2", c(k - 1) + c(k + 1), a(i), i=i, k=k)
    for i, j, k in product(I, J, K):
        lines.add("L3", a(i), b(j) + c(k), i=i, j=j, k=k)
    for i, j, k in product(I, J, K):
        for sg, tag in lines.signs("bc"):
            sb, sc = sg["b"], sg["c"]
            lines.add("L4", a(i) + (b(j) - b(j + sb)), c(k) * 2 + c(k + sc), i=i, j=j, k=k, sign=tag)
    for j, k in product(J, K):
        for sg, tag in lines.signs("bc"):
            sb, sc = sg["b"], sg["c"]
            lines.add("L5", b(j) - b(j + sb), c(k + 1) + c(k - 1) - c(k + 2 * sc), j=j, k=k, sign=tag)
    for i, j, k in product(I, J, K):
        for sg, tag in lines.signs("bc"):
            sb, sc = sg["b"], sg["c"]
            lines.add(
                "L6",
                a(i) * 2 + (b(j) - b(j + 2 * sb)),
                c(k - sc) + c(k) * 2 + c(k + sc) * 3,
                i=i, j=j, k=k, sign=tag,
            )
    for i, j, k in product(I, J, K):
        for sg, tag in lines.signs("bc"):
            sb, sc = sg["b"], sg["c"]
            lines.add(
                "L7",
                c(k - sc) + c(k) * 2 + c(k + sc) * 3 - c(k + 2 * sc),
                a(i) * 3 + (b(j) - b(j - sb)) * 2,
                i=i, j=j, k=k, sign=tag,
            )
    for i, j, k in product(I, J, K):
        for sg, tag in lines.signs("abc"):
            sa, sb, sc = sg["a"], sg["b"], sg["c"]
            lines.add(
                "L8",
                (a(i) - a(i + sa)) + (b(j) - b(j + sb) * 2),
                c(k - 2 * sc) * 2 + c(k - sc) - c(k + sc) - c(k + 2 * sc) * 2,
                i=i, j=j, k=k, sign=tag,
            )


_LISTED: Dict[str, Callable[[_Lines], None]] = {
    "D": _listed_d,
    "E6": _listed_e6,
    "E7": _listed_e7,
    "E8": _listed_e8,
}


def listed_instances(w: WeightData, reading: str = FROZEN_READING) -> List[Inequality]:
    """Every instance of the listed system over its cyclic index ranges, before dedup"""
    lines = _Lines(w, reading)
    if w.family == "A":
        return []
    builder = _LISTED["D"] if w.family == "D" else _LISTED[w.tag]
    builder(lines)
    return lines.out


def listed_region(w: WeightData, reading: str = FROZEN_READING) -> List[Inequality]:
    return dedup(listed_instances(w, reading))


# ---------------------------------------------------------------------------
# Equivalence
# ---------------------------------------------------------------------------

def to_constraint(ineq: Inequality, variables: Sequence[Variable]) -> Constraint:
    return Constraint(ineq.form.vector(variables), ineq.form.constant, ineq.strict)


@dataclass
class ContainmentResult:
    """Whether every inequality of one system is implied by another"""

    contained: bool
    not_implied: List[str] = field(default_factory=list)
    witness: Optional[Dict[Variable, Fraction]] = None
    checked: int = 0
    prefiltered: int = 0


@dataclass
class EquivalenceResult:
    equivalent: bool
    a_in_b: ContainmentResult
    b_in_a: ContainmentResult

    @property
    def witness(self) -> Optional[Dict[Variable, Fraction]]:
        if not self.a_in_b.contained:
            return self.a_in_b.witness
        return self.b_in_a.witness


def _syntactically_implied(candidate: Constraint, index: Dict[Tuple[Fraction, ...], Fraction]) -> bool:
    row = normalize_row(candidate)
    best = index.get(row.coeffs)
    return best is not None and best <= row.const


def implied_by(
    candidates: Sequence[Inequality],
    system: Sequence[Inequality],
    w: WeightData,
    exhaustive: bool = False,
) -> ContainmentResult:
    """
    Check that every candidate holds on {system, mu > 0}.

    Args:
        candidates: non-strict inequalities to test
        system: the assumed inequalities
        w: weight data fixing the variables
        exhaustive: keep going after the first candidate that is not implied

    Returns:
        ContainmentResult listing the ids of candidates that are not implied,
        with a rational witness for the first of them
    """
    variables = w.variables()
    rows = ambient_constraints(w) + [to_constraint(s, variables) for s in system]
    index: Dict[Tuple[Fraction, ...], Fraction] = {}
    for row in rows:
        if any(row.coeffs):
            norm = normalize_row(row)
            if norm.coeffs not in index or norm.const < index[norm.coeffs]:
                index[norm.coeffs] = norm.const

    result = ContainmentResult(contained=True)
    for cand in candidates:
        if is_trivial(cand.form):
            result.prefiltered += 1
            continue
        row = to_constraint(cand, variables)
        if _syntactically_implied(row, index):
            result.prefiltered += 1
            continue
        result.checked += 1
        outcome = implies(rows, row, settings.fm_max_variables)
        logger.debug(f"{cand.provenance}: implied={outcome.implied}")
        if not outcome.implied:
            result.contained = False
            result.not_implied.append(cand.provenance)
            if result.witness is None:
                result.witness = dict(zip(variables, outcome.witness))
            if not exhaustive:
                break
    return result


def polytope_equivalent(
    a: Sequence[Inequality],
    b: Sequence[Inequality],
    w: WeightData,
) -> EquivalenceResult:
    """True iff both systems cut out the same subset of the open partition simplices"""
    a_in_b = implied_by(a, b, w)
    b_in_a = implied_by(b, a, w)
    verdict = a_in_b.contained and b_in_a.contained
    logger.info(
        f"Equivalence for {w}: {verdict} "
        f"[{a_in_b.checked + b_in_a.checked} eliminations, {a_in_b.prefiltered + b_in_a.prefiltered} prefiltered]"
    )
    return EquivalenceResult(equivalent=verdict, a_in_b=a_in_b, b_in_a=b_in_a)


def redundancy_report(system: Sequence[Inequality], w: WeightData) -> List[str]:
    """Ids of inequalities implied by the rest of the system"""
    redundant = []
    for k, ineq in enumerate(system):
        rest = list(system[:k]) + list(system[k + 1:])
        if implied_by([ineq], rest, w).contained:
            redundant.append(ineq.provenance)
    return redundant


def readings_report(
    w: WeightData,
    derived: Optional[Sequence[Inequality]] = None,
    skip: Sequence[str] = (),
) -> Dict[str, bool]:
    """Which +- readings of the listed system are equivalent to the derived one"""
    derived = derived if derived is not None else derive_region(w)
    readings = READINGS if w.tag in ("E7", "E8") else (FROZEN_READING,)
    return {
        reading: polytope_equivalent(derived, listed_region(w, reading), w).equivalent
        for reading in readings
        if reading not in skip
    }
