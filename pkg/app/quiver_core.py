"""
Weight data, quivers and the Grothendieck lattice of a tame weighted
projective line.

Classes live in the dimension-vector basis of the opposite of a section
quiver: the class of a section vertex v is the column of path counts
(entry u = number of paths u -> v in the section). The Coxeter matrix
Phi = -(E^-1) E^T acts as [tau M] = Phi [M].
"""
import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from app.exceptions import (
    DimensionMismatch,
    IndexOutOfRange,
    InvalidDatum,
    NotTame,
    SingularEuler,
    UnknownType,
)

logger = logging.getLogger(__name__)

Label = str
Arrow = Tuple[Label, Label]
WindowVertex = Tuple[int, Label]


# ---------------------------------------------------------------------------
# Weight data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightData:
    """Weights of a tame weighted projective line with their Euclidean type"""

    weights: Tuple[int, ...]
    family: str
    n: int
    rank: int
    given: Tuple[int, ...] = field(default=(), compare=False)

    @property
    def l(self) -> int:
        return len(self.weights)

    @property
    def period(self) -> int:
        return lcm(*self.weights)

    @property
    def euclidean_type(self) -> str:
        if self.family == "A":
            p, q = self.weights
            return f"A({p},{q})"
        return f"{self.family}({self.n})"

    @property
    def tag(self) -> str:
        if self.family == "A":
            p, q = self.weights
            if p < 10 and q < 10:
                return f"A{p}{q}"
            return f"A({p},{q})"
        return f"{self.family}{self.n}"

    def weight(self, i: int) -> int:
        if not 1 <= i <= self.l:
            raise IndexOutOfRange(f"Branch {i} outside 1..{self.l} for {self.euclidean_type}")
        return self.weights[i - 1]

    def variables(self) -> Tuple[Tuple[int, int], ...]:
        """Free mu variables (i, j), j < w_i, after eliminating the last part of each branch."""
        return tuple(
            (i, j)
            for i in range(1, self.l + 1)
            for j in range(1, self.weights[i - 1])
        )

    def __str__(self) -> str:
        return self.euclidean_type


def classify_weights(weights: Sequence[int]) -> WeightData:
    """
    Classify a weight tuple into its Euclidean type.

    Weight-1 entries are dropped. Two or fewer remaining entries give type
    A(p,q) (order kept, padded with 1); three are sorted and give D or E.

    Raises:
        InvalidDatum: a weight is not a positive integer
        NotTame: the tuple is wild or tubular
    """
    given = tuple(weights)
    for w in given:
        if isinstance(w, bool) or not isinstance(w, (int, np.integer)) or w < 1:
            raise InvalidDatum(f"Weights must be positive integers, got {list(given)}")
    core = [int(w) for w in given if w != 1]

    if len(core) > 3:
        raise NotTame(f"Weights {list(given)} have {len(core)} nontrivial branches (at most 3 are tame)")

    if len(core) <= 2:
        core = core + [1] * (2 - len(core))
        p, q = core
        return WeightData(weights=(p, q), family="A", n=p + q - 1, rank=p + q, given=given)

    core = sorted(core)
    if sum(Fraction(1, w) for w in core) <= 1:
        raise NotTame(f"Weights {list(given)} satisfy sum 1/w <= 1 (not tame)")
    rank = 2 + sum(w - 1 for w in core)
    if core[:2] == [2, 2]:
        return WeightData(weights=tuple(core), family="D", n=core[2] + 2, rank=rank, given=given)
    # tame three-branch tuples other than (2,2,n) are (2,3,3), (2,3,4), (2,3,5)
    return WeightData(weights=tuple(core), family="E", n=core[2] + 3, rank=rank, given=given)


_TAG_RE = re.compile(r"^\s*([ADEade])\s*\(?\s*(\d+)\s*(?:,\s*(\d+))?\s*\)?\s*$")


def parse_type_tag(tag: str) -> WeightData:
    """
    Parse a type tag such as "A32", "A(3,2)", "D6" or "E8".

    Raises:
        UnknownType: the tag does not name a tame type
    """
    match = _TAG_RE.match(tag or "")
    if not match:
        raise UnknownType(f"Unknown type tag {tag!r}; expected A{{p}}{{q}}, D{{n}} or E{{6,7,8}}")
    family = match.group(1).upper()
    first, second = match.group(2), match.group(3)
    try:
        if family == "A":
            if second is not None:
                p, q = int(first), int(second)
            elif len(first) == 2:
                p, q = int(first[0]), int(first[1])
            else:
                raise UnknownType(f"Type A tag {tag!r} needs two weights, e.g. A32 or A(3,2)")
            if p < 1 or q < 1:
                raise UnknownType(f"Type A tag {tag!r} has a zero weight")
            return classify_weights((p, q))
        if second is not None:
            raise UnknownType(f"Type {family} tag {tag!r} takes a single index")
        n = int(first)
        if family == "D":
            if n < 4:
                raise UnknownType(f"D({n}) is not a Euclidean type (n >= 4)")
            return classify_weights((2, 2, n - 2))
        if n not in (6, 7, 8):
            raise UnknownType(f"E({n}) is not a Euclidean type (n in 6, 7, 8)")
        return classify_weights((2, 3, n - 3))
    except NotTame as exc:
        raise UnknownType(str(exc)) from exc


def shipped_types() -> List[WeightData]:
    """A(p,q) for 6 >= p >= q >= 1, D(4..8), E(6,7,8)."""
    types = [classify_weights((p, q)) for p in range(1, 7) for q in range(1, p + 1)]
    types += [classify_weights((2, 2, n - 2)) for n in range(4, 9)]
    types += [classify_weights((2, 3, n - 3)) for n in (6, 7, 8)]
    return types


# ---------------------------------------------------------------------------
# Quivers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StarQuiver:
    """A finite acyclic quiver; arrows may repeat (multi-arrows)"""

    vertices: Tuple[Label, ...]
    arrows: Tuple[Arrow, ...]
    source: Label
    sink: Optional[Label] = None

    def index(self, label: Label) -> int:
        try:
            return self.vertices.index(label)
        except ValueError:
            raise IndexOutOfRange(f"Vertex {label!r} is not in the quiver") from None

    @property
    def size(self) -> int:
        return len(self.vertices)

    def arrow_matrix(self) -> np.ndarray:
        """A[u][v] = number of arrows u -> v"""
        a = np.zeros((self.size, self.size), dtype=np.int64)
        for u, v in self.arrows:
            a[self.index(u), self.index(v)] += 1
        return a

    def successors(self, label: Label) -> List[Label]:
        return [v for u, v in self.arrows if u == label]

    def predecessors(self, label: Label) -> List[Label]:
        return [u for u, v in self.arrows if v == label]

    def underlying_edges(self) -> Counter:
        """Multiset of unordered edges"""
        return Counter(frozenset((u, v)) for u, v in self.arrows)

    def is_acyclic(self) -> bool:
        a = self.arrow_matrix()
        power = np.eye(self.size, dtype=np.int64)
        for _ in range(self.size):
            power = power @ a
        return not power.any()

    def is_tree(self) -> bool:
        """Connected with |E| = |V| - 1 (multi-arrows count as cycles)"""
        if len(self.arrows) != self.size - 1:
            return False
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            x = stack.pop()
            for u, v in self.arrows:
                for a, b in ((u, v), (v, u)):
                    if a == x and b not in seen:
                        seen.add(b)
                        stack.append(b)
        return len(seen) == self.size


def _chain_label(prefix: str, i: int, j: int) -> Label:
    return f"{prefix}{i}^{j}"


def _star(w: WeightData, prefix: str) -> StarQuiver:
    start, end = f"{prefix}0", f"{prefix}inf"
    vertices = [start]
    arrows = []
    for i, wi in enumerate(w.weights, start=1):
        chain = [_chain_label(prefix, i, j) for j in range(1, wi)]
        vertices.extend(chain)
        path = [start] + chain + [end]
        arrows.extend(zip(path[:-1], path[1:]))
    vertices.append(end)
    return StarQuiver(vertices=tuple(vertices), arrows=tuple(arrows), source=start, sink=end)


@lru_cache(maxsize=None)
def canonical_quiver(w: WeightData) -> StarQuiver:
    """The canonical algebra quiver: l chains V0 -> Vi^1 -> ... -> Vi^(wi-1) -> Vinf"""
    return _star(w, "V")


_E_SECTIONS: Dict[int, Tuple[Tuple[int, int], ...]] = {
    6: ((0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)),
    7: ((0, 1), (0, 2), (0, 3), (2, 4), (4, 6), (3, 5), (5, 7)),
    8: ((0, 1), (0, 2), (0, 3), (2, 4), (3, 5), (5, 6), (6, 7), (7, 8)),
}


@lru_cache(maxsize=None)
def section_quiver(w: WeightData) -> StarQuiver:
    """
    The section of the vector-bundle AR component used as computational slice.

    Type A uses the canonical quiver relabelled by projectives P0, Pi^j, Pinf.
    Type D(n): P0, X0 -> X1 -> ... -> X(n-3) -> P1^1, P2^1.
    Type E(n): X0 with three rays, labels X0..Xn.
    """
    if w.family == "A":
        return _star(w, "P")
    if w.family == "D":
        m = w.n - 3
        chain = [f"X{i}" for i in range(1, m + 1)]
        vertices = ("P0", "X0", *chain, "P1^1", "P2^1")
        arrows = [("P0", "X1"), ("X0", "X1")]
        arrows += list(zip(chain[:-1], chain[1:]))
        arrows += [(chain[-1], "P1^1"), (chain[-1], "P2^1")]
        return StarQuiver(vertices=vertices, arrows=tuple(arrows), source="P0")
    edges = _E_SECTIONS[w.n]
    vertices = tuple(f"X{i}" for i in range(w.n + 1))
    arrows = tuple((f"X{a}", f"X{b}") for a, b in edges)
    return StarQuiver(vertices=vertices, arrows=arrows, source="X0")


# ---------------------------------------------------------------------------
# Grothendieck lattice
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KClass:
    """An integer vector in the dimension-vector basis"""

    coords: Tuple[int, ...]

    @classmethod
    def of(cls, values) -> "KClass":
        return cls(tuple(int(x) for x in values))

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def _check(self, other: "KClass") -> None:
        if len(other.coords) != len(self.coords):
            raise DimensionMismatch(f"Classes of length {len(self.coords)} and {len(other.coords)}")

    def __add__(self, other: "KClass") -> "KClass":
        self._check(other)
        return KClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "KClass") -> "KClass":
        self._check(other)
        return KClass(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "KClass":
        return KClass(tuple(-a for a in self.coords))

    def __rmul__(self, scalar: int) -> "KClass":
        return KClass(tuple(int(scalar) * a for a in self.coords))

    def as_array(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.int64)


# Dimension vectors of the exceptional simples for type E, one row per (i, j);
# the one missing superscript per branch is delta minus the others.
_E_SIMPLES: Dict[int, Dict[Tuple[int, int], Tuple[int, ...]]] = {
    6: {
        (1, 1): (1, 1, 1, 1, 0, 0, 0),
        (1, 2): (2, 1, 1, 1, 1, 1, 1),
        (2, 1): (1, 1, 1, 0, 0, 1, 0),
        (2, 3): (1, 0, 1, 1, 0, 0, 1),
        (3, 1): (1, 1, 0, 1, 0, 0, 1),
        (3, 3): (1, 0, 1, 1, 0, 1, 0),
    },
    7: {
        (1, 1): (2, 1, 2, 1, 1, 1, 1, 0),
        (1, 2): (2, 1, 1, 2, 1, 1, 0, 1),
        (2, 1): (2, 1, 1, 1, 1, 1, 1, 1),
        (2, 2): (1, 1, 1, 1, 0, 0, 0, 0),
        (3, 1): (1, 1, 1, 0, 1, 0, 0, 0),
        (3, 2): (1, 0, 1, 1, 1, 0, 1, 0),
        (3, 3): (1, 1, 0, 1, 0, 1, 0, 0),
    },
    8: {
        (1, 1): (3, 1, 2, 3, 1, 2, 2, 1, 1),
        (1, 2): (3, 2, 2, 2, 1, 2, 1, 1, 0),
        (2, 1): (2, 1, 2, 1, 1, 1, 1, 0, 0),
        (2, 2): (2, 1, 1, 2, 1, 1, 1, 1, 0),
        (3, 1): (1, 0, 1, 1, 1, 1, 0, 0, 0),
        (3, 2): (1, 1, 0, 1, 0, 1, 1, 0, 0),
        (3, 3): (1, 0, 1, 1, 0, 1, 1, 1, 0),
        (3, 4): (2, 1, 1, 1, 1, 1, 1, 1, 1),
    },
}


def charge_basis_labels(w: WeightData) -> Tuple[str, ...]:
    """Order of the charge basis: reference object, delta, then S_i^j for j < w_i"""
    return ("ref", "delta") + tuple(f"S{i}^{j}" for i, j in w.variables())


def _section_charge_rows(w: WeightData, section: StarQuiver) -> np.ndarray:
    """
    Charge coordinates of the section vertices for types A and D.

    Row u holds (c0, c_delta, c_i^j) with Z(X_u) = c0 z - c_delta - sum c_i^j mu_i^j.
    """
    labels = charge_basis_labels(w)
    col = {name: k for k, name in enumerate(labels)}
    rows = np.zeros((section.size, len(labels)), dtype=np.int64)

    def put(vertex: Label, name: str, value: int) -> None:
        rows[section.index(vertex), col[name]] = value

    if w.family == "A":
        put("P0", "ref", 1)
        for i, wi in enumerate(w.weights, start=1):
            for j in range(1, wi):
                put(f"P{i}^{j}", "ref", 1)
                for t in range(1, j + 1):
                    put(f"P{i}^{j}", f"S{i}^{t}", 1)
        put("Pinf", "ref", 1)
        put("Pinf", "delta", 1)
        return rows

    put("P0", "ref", 1)
    put("X0", "ref", 1)
    put("X0", "delta", -1)
    put("X0", "S1^1", 1)
    put("X0", "S2^1", 1)
    for i in range(1, w.n - 2):
        x = f"X{i}"
        put(x, "ref", 2)
        put(x, "delta", -1)
        put(x, "S1^1", 1)
        put(x, "S2^1", 1)
        for t in range(1, i + 1):
            put(x, f"S3^{t}", 1)
    put("P1^1", "ref", 1)
    put("P1^1", "S1^1", 1)
    put("P2^1", "ref", 1)
    put("P2^1", "S2^1", 1)
    return rows


def _to_fraction_matrix(m: sympy.Matrix) -> Tuple[Tuple[Fraction, ...], ...]:
    return tuple(
        tuple(Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in m.row(i))
        for i in range(m.rows)
    )


def _integer_matrix(m: sympy.Matrix, what: str) -> np.ndarray:
    if any(not x.is_integer for x in m):
        raise SingularEuler(f"{what} is not integral")
    return np.array(m.tolist(), dtype=np.int64)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class CoxeterData:
    """Euler form, Coxeter matrix and charge basis of one Euclidean type"""

    weights: WeightData
    labels: Tuple[Label, ...]
    euler: np.ndarray
    cartan: np.ndarray
    phi: np.ndarray
    phi_inv: np.ndarray
    delta: KClass
    basis: np.ndarray
    basis_inv: Tuple[Tuple[Fraction, ...], ...]
    basis_labels: Tuple[str, ...]
    section_classes: Dict[Label, KClass]
    simples: Dict[Tuple[int, int], KClass]
    kappa: int
    phi_powers: Tuple[np.ndarray, ...]

    @property
    def period(self) -> int:
        return self.weights.period

    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def rank_functional(self) -> Tuple[Fraction, ...]:
        return self.basis_inv[0]

    def rank_of(self, v: KClass) -> Fraction:
        self.check(v)
        return sum((c * x for c, x in zip(self.basis_inv[0], v.coords)), Fraction(0))

    def charge_coordinates(self, v: KClass) -> Tuple[Fraction, ...]:
        """Coordinates of v in the charge basis (reference, delta, S_i^j with j < w_i)"""
        self.check(v)
        return tuple(
            sum((c * x for c, x in zip(row, v.coords)), Fraction(0))
            for row in self.basis_inv
        )

    def check(self, v: KClass) -> None:
        if len(v.coords) != self.rank:
            raise DimensionMismatch(
                f"Class of length {len(v.coords)} in a rank {self.rank} lattice ({self.weights})"
            )

    def apply(self, v: KClass, k: int = 1) -> KClass:
        """Phi^k v for any integer k, using Phi^p = I + kappa delta r^T"""
        self.check(v)
        q, rem = divmod(k, self.period)
        out = self.phi_powers[rem] @ v.as_array()
        if q:
            shift = q * self.kappa * self.rank_of(v)
            if shift.denominator != 1:
                raise SingularEuler(f"kappa * r({v.coords}) is not integral")
            out = out + int(shift) * self.delta.as_array()
        return KClass.of(out)


@lru_cache(maxsize=None)
def coxeter_data(section: StarQuiver, w: WeightData) -> CoxeterData:
    """
    Compute the Euler matrix, Coxeter matrix, delta, charge basis and kappa.

    Raises:
        SingularEuler: the section is cyclic or the Euler matrix is not unimodular
    """
    if not section.is_acyclic():
        raise SingularEuler(f"Section quiver of {w} has an oriented cycle")
    n = section.size
    a = section.arrow_matrix()
    paths = np.eye(n, dtype=np.int64)
    power = np.eye(n, dtype=np.int64)
    for _ in range(n):
        power = power @ a
        paths = paths + power

    euler = np.eye(n, dtype=np.int64) - a.T
    det = int(sympy.Matrix(euler.tolist()).det())
    if det not in (1, -1):
        raise SingularEuler(f"Euler matrix of {w} has determinant {det}")
    cartan = paths.T
    phi = -cartan @ (np.eye(n, dtype=np.int64) - a)
    phi_inv = -paths @ euler

    nullspace = (sympy.Matrix(phi.tolist()) - sympy.eye(n)).nullspace()
    if len(nullspace) != 1:
        raise SingularEuler(f"Coxeter matrix of {w} has a {len(nullspace)}-dimensional fixed space")
    vec = nullspace[0]
    den = sympy.ilcm(*[sympy.fraction(x)[1] for x in vec])
    ints = [int(x * den) for x in vec]
    g = sympy.igcd(*ints)
    ints = [x // g for x in ints]
    if sum(ints) < 0:
        ints = [-x for x in ints]
    delta = KClass.of(ints)

    section_classes = {label: KClass.of(paths[:, k]) for k, label in enumerate(section.vertices)}
    basis_labels = charge_basis_labels(w)

    if w.family in ("A", "D"):
        rows = sympy.Matrix(_section_charge_rows(w, section).tolist())
        basis = _integer_matrix(sympy.Matrix(paths.tolist()) * rows.T.inv(), f"Charge basis of {w}")
        simples = {}
        for k, name in enumerate(basis_labels[2:], start=2):
            i, j = (int(x) for x in name[1:].split("^"))
            simples[(i, j)] = KClass.of(basis[:, k])
        if tuple(basis[:, 1]) != delta.coords:
            raise SingularEuler(f"Charge basis delta {tuple(basis[:, 1])} differs from fixed vector {delta.coords}")
    else:
        table = _E_SIMPLES[w.n]
        simples = {key: KClass.of(vec) for key, vec in table.items()}
        if simples[(1, 1)] + simples[(1, 2)] != delta:
            raise SingularEuler(f"Tabulated simples of {w} do not sum to delta {delta.coords}")

    _complete_branches(simples, delta, w)
    if w.family == "E":
        columns = [section_classes["X0"], delta] + [simples[v] for v in w.variables()]
        basis = np.array([c.coords for c in columns], dtype=np.int64).T

    basis_inv = _to_fraction_matrix(sympy.Matrix(basis.tolist()).inv())

    p = w.period
    powers = [np.eye(n, dtype=np.int64)]
    for _ in range(p):
        powers.append(phi @ powers[-1])
    kappa = _kappa(powers[p], delta, basis_inv[0], w)

    logger.info(
        f"Coxeter data for {w}: rank {n}, period {p}, kappa {kappa}, delta {delta.coords}"
    )
    return CoxeterData(
        weights=w,
        labels=section.vertices,
        euler=_frozen(euler),
        cartan=_frozen(cartan),
        phi=_frozen(phi),
        phi_inv=_frozen(phi_inv),
        delta=delta,
        basis=_frozen(basis),
        basis_inv=basis_inv,
        basis_labels=basis_labels,
        section_classes=section_classes,
        simples=simples,
        kappa=kappa,
        phi_powers=tuple(_frozen(m) for m in powers),
    )


def _complete_branches(simples: Dict[Tuple[int, int], KClass], delta: KClass, w: WeightData) -> None:
    """Fill the one missing simple per branch so each branch sums to delta"""
    for i, wi in enumerate(w.weights, start=1):
        missing = [j for j in range(1, wi + 1) if (i, j) not in simples]
        if len(missing) > 1:
            raise SingularEuler(f"Branch {i} of {w} lacks simples {missing}")
        if missing:
            rest = KClass.of([0] * len(delta))
            for j in range(1, wi + 1):
                if (i, j) in simples:
                    rest = rest + simples[(i, j)]
            simples[(i, missing[0])] = delta - rest


def _kappa(phi_p: np.ndarray, delta: KClass, r: Sequence[Fraction], w: WeightData) -> int:
    """The integer kappa with Phi^p = I + kappa delta r^T"""
    n = len(delta.coords)
    diff = phi_p - np.eye(n, dtype=np.int64)
    pivot = next(k for k, x in enumerate(delta.coords) if x != 0)
    kappa: Optional[Fraction] = None
    for j in range(n):
        factor = Fraction(int(diff[pivot, j]), delta.coords[pivot])
        if any(Fraction(int(diff[k, j])) != factor * delta.coords[k] for k in range(n)):
            raise SingularEuler(f"Phi^p - I of {w} has column {j} off the delta line")
        if r[j] == 0:
            if factor != 0:
                raise SingularEuler(f"Phi^p - I of {w} is not proportional to delta r^T")
            continue
        value = factor / r[j]
        if kappa is None:
            kappa = value
        elif value != kappa:
            raise SingularEuler(f"Phi^p - I of {w} has no single kappa ({kappa} vs {value})")
    if kappa is None or kappa == 0 or kappa.denominator != 1:
        raise SingularEuler(f"Invalid kappa {kappa} for {w}")
    return int(kappa)


def coxeter_for(w: WeightData) -> CoxeterData:
    return coxeter_data(section_quiver(w), w)


def exceptional_simple_class(cox: CoxeterData, i: int, j: int) -> KClass:
    """
    Class of the exceptional simple S_i^j (superscript taken mod w_i).

    Raises:
        IndexOutOfRange: i is not a branch
    """
    wi = cox.weights.weight(i)
    jj = (j - 1) % wi + 1
    if wi == 1:
        return cox.delta
    return cox.simples[(i, jj)]


# ---------------------------------------------------------------------------
# AR mesh windows
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ARWindow:
    """Vertices (k, u) = tau^k X_u for k_min <= k <= k_max with their mesh arrows"""

    k_min: int
    k_max: int
    section: StarQuiver
    vertices: Tuple[WindowVertex, ...]
    arrows: Tuple[Tuple[WindowVertex, WindowVertex], ...]
    cox: CoxeterData = field(repr=False, compare=False)

    def class_of(self, k: int, label: Label) -> KClass:
        if not self.k_min <= k <= self.k_max:
            raise IndexOutOfRange(f"Shift {k} outside window [{self.k_min}, {self.k_max}]")
        return window_class(self.cox, label, k)

    def predecessors(self, vertex: WindowVertex) -> List[WindowVertex]:
        return [a for a, b in self.arrows if b == vertex]

    def successors(self, vertex: WindowVertex) -> List[WindowVertex]:
        return [b for a, b in self.arrows if a == vertex]


def window_class(cox: CoxeterData, label: Label, k: int) -> KClass:
    """[tau^k X_label] = Phi^k [X_label]"""
    try:
        base = cox.section_classes[label]
    except KeyError:
        raise IndexOutOfRange(f"{label!r} is not a section vertex of {cox.weights}") from None
    return cox.apply(base, k)


def ar_window(cox: CoxeterData, section: StarQuiver, k_min: int, k_max: int) -> ARWindow:
    """
    Build the mesh window: for each section arrow u -> v and shift k,
    (k,u) -> (k,v) and, when k+1 is in range, (k+1,v) -> (k,u).
    """
    if k_min > k_max:
        raise IndexOutOfRange(f"Empty window [{k_min}, {k_max}]")
    vertices = tuple((k, u) for k in range(k_min, k_max + 1) for u in section.vertices)
    arrows: List[Tuple[WindowVertex, WindowVertex]] = []
    for k in range(k_min, k_max + 1):
        for u, v in section.arrows:
            arrows.append(((k, u), (k, v)))
        if k + 1 <= k_max:
            for u, v in section.arrows:
                arrows.append(((k + 1, v), (k, u)))
    return ARWindow(
        k_min=k_min,
        k_max=k_max,
        section=section,
        vertices=vertices,
        arrows=tuple(arrows),
        cox=cox,
    )
