"""
Closed-form membership, the contraction flow and heart classification.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from app.charge import TSD, degenerate_message, is_nondegenerate, last_negative_shifts
from app.derive import listed_region
from app.exceptions import (
    Degenerate,
    InvalidDatum,
    NotNonConcentrated,
    SectionPropertyError,
    WeightMismatch,
)
from app.forms import Inequality
from app.quiver_core import (
    CoxeterData,
    Label,
    StarQuiver,
    WeightData,
    coxeter_for,
    section_quiver,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Violation:
    id: str
    indices: Tuple[Tuple[str, object], ...]
    lhs: Fraction
    rhs: Fraction


@dataclass
class MembershipReport:
    member: bool
    nondegenerate: bool
    violations: List[Violation] = field(default_factory=list)
    checked: int = 0
    source: str = "listed"


@lru_cache(maxsize=None)
def listed_system(w: WeightData) -> Tuple[Inequality, ...]:
    return tuple(listed_region(w))


def check_membership(
    tsd: TSD,
    cox: Optional[CoxeterData] = None,
    section: Optional[StarQuiver] = None,
) -> MembershipReport:
    """
    Evaluate the listed system of the datum's type.

    Type A has no inequalities: membership is non-degeneracy.
    """
    nondegenerate = is_nondegenerate(tsd, cox, section)
    point = tsd.point
    system = listed_system(tsd.weights)
    violations = []
    for ineq in system:
        lhs, rhs = ineq.sides(point)
        if lhs > rhs:
            violations.append(Violation(ineq.provenance, ineq.indices, lhs, rhs))
    return MembershipReport(
        member=nondegenerate and not violations,
        nondegenerate=nondegenerate,
        violations=violations,
        checked=len(system),
    )


def contraction_flow(tsd0: TSD, tsd1: TSD, t) -> TSD:
    """
    mu(t) = t mu1 + (1 - t) mu0 and z(t) = t z1 + (1 - t) z0.

    Raises:
        WeightMismatch: the data have different weights
        NotNonConcentrated: Im z0 = 0
        InvalidDatum: t outside [0, 1]
    """
    t = Fraction(t)
    if tsd0.weights != tsd1.weights:
        raise WeightMismatch(f"Cannot interpolate {tsd0.weights} and {tsd1.weights}")
    if tsd0.z_im <= 0:
        raise NotNonConcentrated("The flow base point needs Im z0 > 0")
    if not 0 <= t <= 1:
        raise InvalidDatum(f"Flow parameter {t} outside [0, 1]")
    mu = [
        [t * b + (1 - t) * a for a, b in zip(p0, p1)]
        for p0, p1 in zip(tsd0.mu, tsd1.mu)
    ]
    return TSD.create(
        tsd0.weights,
        mu,
        t * tsd1.z_re + (1 - t) * tsd0.z_re,
        t * tsd1.z_im + (1 - t) * tsd0.z_im,
    )


class HeartKind(str, Enum):
    NON_CONCENTRATED = "NonConcentrated"
    CONCENTRATED = "Concentrated"


@dataclass
class HeartClass:
    kind: HeartKind
    cut: Optional[Dict[Label, int]] = None
    quiver: Optional[StarQuiver] = None

    def underlying_edges(self) -> Counter:
        """Edges of the cut quiver with the shift suffixes removed"""
        if self.quiver is None:
            return Counter()
        return Counter(
            frozenset((u.split("@")[0], v.split("@")[0])) for u, v in self.quiver.arrows
        )


def classify_heart(
    tsd: TSD,
    cox: Optional[CoxeterData] = None,
    section: Optional[StarQuiver] = None,
) -> HeartClass:
    """
    Non-concentrated when Im z > 0. Otherwise cut every tau-orbit after its last
    negative charge and return the quiver spanned by the cut.

    Raises:
        Degenerate: some bundle has zero charge
        InvalidDatum: the datum is not a member
        SectionPropertyError: a member produced a cut that is not a section
    """
    if tsd.z_im > 0:
        return HeartClass(kind=HeartKind.NON_CONCENTRATED)
    cox = cox or coxeter_for(tsd.weights)
    section = section or section_quiver(tsd.weights)
    if not is_nondegenerate(tsd, cox, section):
        raise Degenerate(degenerate_message(tsd, cox, section))
    report = check_membership(tsd, cox, section)
    if not report.member:
        raise InvalidDatum(
            f"Heart classification needs a member datum; {len(report.violations)} inequalities fail"
        )

    p = cox.period
    cut: Dict[Label, int] = {}
    for label in section.vertices:
        lasts = last_negative_shifts(tsd, cox, label)
        if max(lasts) >= min(k + p for k in lasts):
            raise SectionPropertyError(f"Charges on the orbit of {label} are not monotone: {lasts}")
        cut[label] = max(lasts)

    arrows = []
    for u, v in section.arrows:
        d = cut[v] - cut[u]
        if d == 0:
            arrows.append((f"{u}@{cut[u]}", f"{v}@{cut[v]}"))
        elif d == 1:
            arrows.append((f"{v}@{cut[v]}", f"{u}@{cut[u]}"))
        else:
            raise SectionPropertyError(f"Cut shifts {cut[u]} at {u} and {cut[v]} at {v} are not adjacent")
    vertices = tuple(f"{label}@{cut[label]}" for label in section.vertices)
    quiver = StarQuiver(
        vertices=vertices,
        arrows=tuple(arrows),
        source=f"{section.source}@{cut[section.source]}",
    )
    logger.info(f"Concentrated heart for {tsd.weights}: cut {cut}")
    return HeartClass(kind=HeartKind.CONCENTRATED, cut=cut, quiver=quiver)
