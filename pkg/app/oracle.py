"""
Direct check of phase monotonicity along the arrows of the vector-bundle mesh.

This is the ground truth the closed-form systems in ``app.region`` are
compared against.
"""
import logging
from typing import Dict, List, Optional, Tuple

from app.charge import (
    TSD,
    PhaseOrd,
    charge_at,
    cmp_values,
    degenerate_message,
    is_nondegenerate,
    last_negative_shifts,
    phase_class,
)
from app.exceptions import Degenerate, InvalidDatum
from app.quiver_core import ARWindow, CoxeterData, StarQuiver, WindowVertex, ar_window, coxeter_for, section_quiver
from app.region import MembershipReport, Violation, check_membership

logger = logging.getLogger(__name__)


def oracle_window(tsd: TSD, cox: CoxeterData, section: StarQuiver, periods: int) -> Tuple[int, int]:
    """
    [0, periods p] for Im z > 0. For Im z = 0 the window covers every sign
    change of every orbit with ``periods`` extra periods on each side.
    """
    p = cox.period
    if tsd.z_im > 0:
        return 0, periods * p
    lasts = [k for label in section.vertices for k in last_negative_shifts(tsd, cox, label)]
    return min(lasts) - periods * p, max(lasts) + 1 + periods * p


def window_values(tsd: TSD, cox: CoxeterData, window: ARWindow) -> Dict[WindowVertex, Tuple]:
    return {
        (k, label): charge_at(tsd, cox, label, k).value(tsd.z)
        for k, label in window.vertices
    }


def _arrow_id(source: WindowVertex, target: WindowVertex) -> str:
    (ks, us), (kt, ut) = source, target
    if ks == kt:
        return f"{us}->{ut}@{ks}"
    return f"tau {us}->{ut}@{kt}"


def _sides(x, y) -> Tuple:
    if x[1] == 0 and y[1] == 0:
        return phase_class(x), phase_class(y)
    return x[1] * y[0], x[0] * y[1]


def condition_star(
    tsd: TSD,
    cox: Optional[CoxeterData] = None,
    section: Optional[StarQuiver] = None,
    periods: int = 1,
) -> MembershipReport:
    """
    Evaluate phase(X) <= phase(Y) on every arrow X -> Y of the mesh window.

    Args:
        tsd: the stability datum
        cox: Coxeter data of the type
        section: the section quiver the window is built on
        periods: number of tau-periods in the window

    Returns:
        MembershipReport whose violations are sorted by (shift, arrow id)

    Raises:
        InvalidDatum: periods < 1
        Degenerate: some bundle has zero charge
    """
    if periods < 1:
        raise InvalidDatum(f"periods must be a positive integer, got {periods}")
    cox = cox or coxeter_for(tsd.weights)
    section = section or section_quiver(tsd.weights)
    if not is_nondegenerate(tsd, cox, section):
        raise Degenerate(degenerate_message(tsd, cox, section))

    k_min, k_max = oracle_window(tsd, cox, section, periods)
    window = ar_window(cox, section, k_min, k_max)
    values = window_values(tsd, cox, window)
    violations = []
    for source, target in window.arrows:
        x, y = values[source], values[target]
        if cmp_values(x, y) is PhaseOrd.GT:
            lhs, rhs = _sides(x, y)
            ident = _arrow_id(source, target)
            violations.append((min(source[0], target[0]), ident, Violation(ident, (("arrow", ident),), lhs, rhs)))
    violations.sort(key=lambda item: (item[0], item[1]))
    logger.debug(
        f"Oracle on {tsd.weights} window [{k_min}, {k_max}]: "
        f"{len(window.arrows)} arrows, {len(violations)} violations"
    )
    return MembershipReport(
        member=not violations,
        nondegenerate=True,
        violations=[v for _, _, v in violations],
        checked=len(window.arrows),
        source="oracle",
    )


def cross_check(tsd: TSD, periods: int = 1) -> bool:
    """Closed-form membership and the mesh check agree"""
    cox = coxeter_for(tsd.weights)
    section = section_quiver(tsd.weights)
    closed = check_membership(tsd, cox, section).member
    direct = condition_star(tsd, cox, section, periods).member
    if closed != direct:
        logger.warning(f"Verdicts differ for {tsd}: closed form {closed}, oracle {direct}")
    return closed == direct


def path_violations(
    tsd: TSD,
    cox: Optional[CoxeterData] = None,
    section: Optional[StarQuiver] = None,
    periods: int = 1,
) -> List[Tuple[WindowVertex, WindowVertex, WindowVertex]]:
    """Paths X -> Y -> W of the window with phase(X) > phase(W)"""
    cox = cox or coxeter_for(tsd.weights)
    section = section or section_quiver(tsd.weights)
    k_min, k_max = oracle_window(tsd, cox, section, periods)
    window = ar_window(cox, section, k_min, k_max)
    values = window_values(tsd, cox, window)
    successors: Dict[WindowVertex, List[WindowVertex]] = {}
    for a, b in window.arrows:
        successors.setdefault(a, []).append(b)
    out = []
    for x, y in window.arrows:
        for w in successors.get(y, ()):
            if cmp_values(values[x], values[w]) is PhaseOrd.GT:
                out.append((x, y, w))
    return out
