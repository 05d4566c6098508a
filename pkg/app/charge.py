"""
Stability data, exact central charges, phase comparison and non-degeneracy.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import ceil
from typing import Dict, List, Optional, Sequence, Tuple

from app.exceptions import DimensionMismatch, InvalidDatum, ZeroCharge
from app.forms import LinearForm, Point, SymbolicCharge
from app.quiver_core import (
    CoxeterData,
    KClass,
    Label,
    StarQuiver,
    WeightData,
    coxeter_for,
    section_quiver,
    window_class,
)
from app.rationals import format_rational

logger = logging.getLogger(__name__)

Complex = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class TSD:
    """
    A totally semi-stable datum: one partition of 1 per branch and z = Z(reference).

    ``mu[i-1][j-1]`` is mu_i^j; z is (re, im) with im >= 0 and z != 0.
    """

    weights: WeightData
    mu: Tuple[Tuple[Fraction, ...], ...]
    z_re: Fraction
    z_im: Fraction

    def __post_init__(self):
        if len(self.mu) != self.weights.l:
            raise InvalidDatum(
                f"Expected {self.weights.l} partitions for {self.weights}, got {len(self.mu)}"
            )
        for i, (wi, parts) in enumerate(zip(self.weights.weights, self.mu), start=1):
            if len(parts) != wi:
                raise InvalidDatum(f"Branch {i} needs {wi} parts, got {len(parts)}")
            for j, part in enumerate(parts, start=1):
                if part <= 0:
                    raise InvalidDatum(f"Part mu_{i}^{j} = {format_rational(part)} is not positive")
            total = sum(parts, Fraction(0))
            if total != 1:
                raise InvalidDatum(f"Branch {i} sums to {format_rational(total)}, expected 1")
        if self.z_im < 0:
            raise InvalidDatum(f"Im z = {format_rational(self.z_im)} is negative")
        if self.z_re == 0 and self.z_im == 0:
            raise InvalidDatum("z must be nonzero")

    @classmethod
    def create(cls, weights: WeightData, mu: Sequence[Sequence], z_re, z_im) -> "TSD":
        return cls(
            weights=weights,
            mu=tuple(tuple(Fraction(x) for x in parts) for parts in mu),
            z_re=Fraction(z_re),
            z_im=Fraction(z_im),
        )

    @classmethod
    def uniform(cls, weights: WeightData, z_re=0, z_im=1) -> "TSD":
        """mu_i^j = 1/w_i"""
        return cls.create(
            weights,
            [[Fraction(1, wi)] * wi for wi in weights.weights],
            z_re,
            z_im,
        )

    @property
    def z(self) -> Complex:
        return self.z_re, self.z_im

    @property
    def point(self) -> Dict[Tuple[int, int], Fraction]:
        """Values of the free variables (i, j), j < w_i"""
        return {(i, j): self.mu[i - 1][j - 1] for i, j in self.weights.variables()}

    def mu_of(self, i: int, j: int) -> Fraction:
        parts = self.mu[i - 1]
        return parts[(j - 1) % len(parts)]

    @property
    def is_non_concentrated(self) -> bool:
        return self.z_im > 0

    def with_point(self, point: Point) -> "TSD":
        """Same z, partitions rebuilt from free-variable values"""
        mu = []
        for i, wi in enumerate(self.weights.weights, start=1):
            parts = [Fraction(point[(i, j)]) for j in range(1, wi)]
            parts.append(1 - sum(parts, Fraction(0)))
            mu.append(parts)
        return TSD.create(self.weights, mu, self.z_re, self.z_im)


@dataclass(frozen=True)
class SplitCharge:
    """Z = r * z + s"""

    r: Fraction
    s: Fraction

    def value(self, z: Complex) -> Complex:
        re, im = z
        return self.r * re + self.s, self.r * im

    def __add__(self, other: "SplitCharge") -> "SplitCharge":
        return SplitCharge(self.r + other.r, self.s + other.s)

    def __sub__(self, other: "SplitCharge") -> "SplitCharge":
        return SplitCharge(self.r - other.r, self.s - other.s)

    def scale(self, factor) -> "SplitCharge":
        return SplitCharge(self.r * factor, self.s * factor)


class PhaseOrd(str, Enum):
    LT = "Lt"
    EQ = "Eq"
    GT = "Gt"


def central_charge(tsd: TSD, v: KClass, cox: Optional[CoxeterData] = None) -> SplitCharge:
    """
    Exact charge of a class.

    Args:
        tsd: the stability datum
        v: a class in the lattice of tsd.weights
        cox: Coxeter data of the type (looked up when omitted)

    Returns:
        SplitCharge with Z(S_i^j) = -mu_i^j, Z(delta) = -1, Z(reference) = z

    Raises:
        DimensionMismatch: v has the wrong length
    """
    cox = cox or coxeter_for(tsd.weights)
    if len(v) != cox.rank:
        raise DimensionMismatch(f"Class of length {len(v)} for {tsd.weights} (rank {cox.rank})")
    coords = cox.charge_coordinates(v)
    s = -coords[1]
    for c, (i, j) in zip(coords[2:], tsd.weights.variables()):
        s -= c * tsd.mu[i - 1][j - 1]
    return SplitCharge(r=coords[0], s=s)


def phase_class(value: Complex) -> int:
    """Phase of a nonzero real value: 0 on the positive axis, 1 on the negative"""
    return 0 if value[0] > 0 else 1


def cmp_values(x: Complex, y: Complex) -> PhaseOrd:
    """Compare arguments in [0, pi] of two nonzero values in the closed upper half plane"""
    if x == (0, 0) or y == (0, 0):
        raise ZeroCharge(f"Cannot compare phases of zero charge ({x}, {y})")
    if x[1] < 0 or y[1] < 0:
        raise InvalidDatum(f"Charges {x}, {y} leave the closed upper half plane")
    if x[1] == 0 and y[1] == 0:
        px, py = phase_class(x), phase_class(y)
        if px == py:
            return PhaseOrd.EQ
        return PhaseOrd.LT if px < py else PhaseOrd.GT
    cross = x[0] * y[1] - x[1] * y[0]
    if cross > 0:
        return PhaseOrd.LT
    if cross < 0:
        return PhaseOrd.GT
    return PhaseOrd.EQ


def cmp_phase(x: SplitCharge, y: SplitCharge, z: Complex) -> PhaseOrd:
    """
    Exact phase order of two split charges at z.

    Raises:
        ZeroCharge: either charge evaluates to 0
    """
    return cmp_values(x.value(z), y.value(z))


@lru_cache(maxsize=None)
def charge_table(cox: CoxeterData) -> Dict[Tuple[Label, int], SymbolicCharge]:
    """Symbolic charge of tau^rem X for every section vertex X and 0 <= rem <= p"""
    w = cox.weights
    table = {}
    for label in cox.labels:
        for rem in range(cox.period + 1):
            coords = cox.charge_coordinates(window_class(cox, label, rem))
            s = LinearForm.build(
                {var: -c for var, c in zip(w.variables(), coords[2:])},
                -coords[1],
            )
            table[(label, rem)] = SymbolicCharge(r=coords[0], s=s)
    logger.info(f"Charge table for {w}: {len(table)} entries")
    return table


def symbolic_charge_at(cox: CoxeterData, label: Label, k: int) -> SymbolicCharge:
    """Z(tau^k X) = Z(tau^rem X) - q * kappa * r(X) for k = q p + rem"""
    q, rem = divmod(k, cox.period)
    base = charge_table(cox)[(label, rem)]
    if q == 0:
        return base
    return base.shifted(-q * cox.kappa * base.r)


def charge_at(tsd: TSD, cox: CoxeterData, label: Label, k: int) -> SplitCharge:
    r, s = symbolic_charge_at(cox, label, k).at(tsd.point)
    return SplitCharge(r=r, s=s)


def zero_charges(
    tsd: TSD,
    cox: Optional[CoxeterData] = None,
    section: Optional[StarQuiver] = None,
) -> List[Tuple[int, Label]]:
    """
    Every shift k with Z(tau^k X) = 0 for a section vertex X, sorted.

    Empty when Im z > 0. With Im z = 0 the charges along an orbit residue form
    the progression v0 - q * kappa * r, so each residue has at most one zero,
    at q = v0 / (kappa * r) when that is an integer.
    """
    if tsd.z_im > 0:
        return []
    cox = cox or coxeter_for(tsd.weights)
    section = section or section_quiver(tsd.weights)
    point = tsd.point
    hits = []
    for label in section.vertices:
        for rem in range(cox.period):
            r, s = charge_table(cox)[(label, rem)].at(point)
            q = (r * tsd.z_re + s) / (cox.kappa * r)
            if q.denominator == 1:
                hits.append((rem + int(q) * cox.period, label))
    return sorted(hits)


def is_nondegenerate(
    tsd: TSD,
    cox: Optional[CoxeterData] = None,
    section: Optional[StarQuiver] = None,
) -> bool:
    """True iff no tau-shift of a section vertex has zero charge"""
    zeros = zero_charges(tsd, cox, section)
    if zeros:
        k, label = zeros[0]
        logger.debug(f"Zero charge at tau^{k} {label}")
    return not zeros


def degenerate_message(tsd: TSD, cox: Optional[CoxeterData] = None, section: Optional[StarQuiver] = None) -> str:
    zeros = zero_charges(tsd, cox, section)
    k, label = zeros[0]
    return f"Datum gives zero charge to tau^{k} {label} of {tsd.weights} ({len(zeros)} zero charges)"


def last_negative_shifts(tsd: TSD, cox: CoxeterData, label: Label) -> List[int]:
    """
    For Im z = 0: per residue class mod p, the largest k whose charge on the
    orbit of ``label`` is negative (charges grow with k by |kappa| r per period).
    """
    p = cox.period
    step = -cox.kappa
    out = []
    for rem in range(p):
        r, s = charge_table(cox)[(label, rem)].at(tsd.point)
        v0 = r * tsd.z_re + s
        q = ceil(-v0 / (step * r))
        out.append(rem + (q - 1) * p)
    return out
