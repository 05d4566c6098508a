"""
Seeded random stability data: free samples, members and boundary points.
"""
import logging
from fractions import Fraction
from typing import List, Optional

import numpy as np
import sympy

from app.charge import TSD, charge_table, is_nondegenerate
from app.config import settings
from app.exceptions import InvalidDatum
from app.quiver_core import WeightData, coxeter_for, section_quiver
from app.rationals import common_denominator
from app.region import check_membership, listed_system

logger = logging.getLogger(__name__)


def random_composition(rng: np.random.Generator, parts: int, max_part: int) -> List[Fraction]:
    """A random partition of 1 into ``parts`` positive rationals"""
    draws = [int(x) for x in rng.integers(1, max_part + 1, size=parts)]
    total = sum(draws)
    return [Fraction(d, total) for d in draws]


def _random_z(rng: np.random.Generator, z_bound: int):
    re = Fraction(int(rng.integers(-4 * z_bound, 4 * z_bound + 1)), 4)
    return re, Fraction(int(rng.integers(1, 4 * z_bound + 1)), 4)


def _with_real_z(tsd: TSD, rng: np.random.Generator, z_bound: int) -> TSD:
    """
    Im z = 0 and a random Re z with |Re z| <= z_bound off the zero locus.

    Z(tau^k X) vanishes iff Re z / kappa + s / (kappa r) is an integer for one
    of the finitely many offsets s / (kappa r). Writing Re z = kappa n / (L P)
    with L the common denominator of the offsets, P a prime not dividing L and
    P not dividing n keeps every such sum off the integers.
    """
    w = tsd.weights
    cox = coxeter_for(w)
    point = tsd.point
    offsets = []
    for label in section_quiver(w).vertices:
        for rem in range(cox.period):
            r, s = charge_table(cox)[(label, rem)].at(point)
            offsets.append(s / (cox.kappa * r))
    denominator = common_denominator(offsets)
    prime = 2
    while denominator % prime == 0:
        prime = int(sympy.nextprime(prime))
    scale = denominator * prime
    limit = max(1, (z_bound * scale) // abs(cox.kappa))
    n = int(rng.integers(-limit, limit + 1))
    if n % prime == 0:
        n = n - 1 if n > 0 else n + 1
    candidate = TSD(w, tsd.mu, Fraction(cox.kappa * n, scale), Fraction(0))
    if not is_nondegenerate(candidate):
        raise ArithmeticError(f"Re z = {candidate.z_re} hit the zero locus of {w}")
    return candidate


def random_tsd(
    w: WeightData,
    rng: np.random.Generator,
    max_part: Optional[int] = None,
    z_bound: Optional[int] = None,
    real: bool = False,
) -> TSD:
    """
    Draw partitions with parts k / total, 1 <= k <= max_part, and z on the
    grid of quarters with |Re z|, Im z <= z_bound.

    With ``real`` the datum has Im z = 0 and a non-degenerate Re z.
    """
    max_part = max_part or settings.sample_max_part
    z_bound = z_bound or settings.sample_z_bound
    mu = [random_composition(rng, wi, max_part) if wi > 1 else [Fraction(1)] for wi in w.weights]
    re, im = _random_z(rng, z_bound)
    tsd = TSD.create(w, mu, re, im)
    if real:
        tsd = _with_real_z(tsd, rng, z_bound)
    return tsd


def sample_member(w: WeightData, rng: np.random.Generator, real: bool = False) -> TSD:
    """A random member: a free sample pulled toward the uniform datum until it is accepted"""
    tsd = random_tsd(w, rng, real=real)
    uniform = TSD.uniform(w)
    pulls = 0
    while not check_membership(tsd).member:
        mu = [[(a + b) / 2 for a, b in zip(p, q)] for p, q in zip(tsd.mu, uniform.mu)]
        tsd = TSD.create(w, mu, tsd.z_re, tsd.z_im)
        if real and not is_nondegenerate(tsd):
            tsd = _with_real_z(tsd, rng, settings.sample_z_bound)
        pulls += 1
    logger.debug(f"Member of {w} after {pulls} pulls toward the uniform datum")
    return tsd


def sample_boundary(w: WeightData, rng: np.random.Generator, attempts: Optional[int] = None) -> TSD:
    """
    A datum on exactly one listed inequality.

    Walks from the uniform point (strictly inside every listed system) toward a
    random point and stops at the first listed inequality it meets, provided it
    is met alone and before any part reaches 0.

    Raises:
        InvalidDatum: type A (no inequalities) or no boundary point found
    """
    if w.family == "A":
        raise InvalidDatum(f"Type {w} has no listed inequalities to put a datum on")
    attempts = attempts or settings.boundary_attempts
    system = listed_system(w)
    uniform = TSD.uniform(w)
    u = uniform.point
    variables = w.variables()
    for attempt in range(attempts):
        target = random_tsd(w, rng)
        v = target.point

        def at(t: Fraction):
            return {var: u[var] + t * (v[var] - u[var]) for var in variables}

        hits = []
        for ineq in system:
            fu, fv = ineq.evaluate(u), ineq.evaluate(v)
            if fv < fu:
                hits.append((fu / (fu - fv), ineq))
        if not hits:
            continue
        hits.sort(key=lambda item: item[0])
        t_star, first = hits[0]
        if len(hits) > 1 and hits[1][0] == t_star:
            continue
        point = at(t_star)
        parts = list(point.values())
        for i, wi in enumerate(w.weights, start=1):
            if wi > 1:
                parts.append(1 - sum((point[(i, j)] for j in range(1, wi)), Fraction(0)))
        if any(x <= 0 for x in parts):
            continue
        tsd = uniform.with_point(point)
        tsd = TSD(w, tsd.mu, target.z_re, target.z_im)
        logger.debug(f"Boundary sample on {first.provenance} after {attempt + 1} attempts")
        return tsd
    raise InvalidDatum(f"No boundary datum for {w} after {attempts} attempts")


def sample_documents(
    w: WeightData,
    count: int,
    seed: int,
    on_boundary: bool = False,
    real: bool = False,
    members: bool = False,
) -> List[TSD]:
    """
    ``count`` data drawn from one generator seeded with ``seed``.

    Boundary data satisfy every listed inequality, one of them with equality;
    ``members`` draws members of the region, with Im z = 0 when ``real``.
    """
    rng = np.random.default_rng(seed)
    if on_boundary:
        return [sample_boundary(w, rng) for _ in range(count)]
    if members:
        return [sample_member(w, rng, real=real) for _ in range(count)]
    return [random_tsd(w, rng, real=real) for _ in range(count)]
