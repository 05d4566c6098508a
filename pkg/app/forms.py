"""
Affine forms in the mu variables, inequalities and symbolic charges.

Every form is written in the free variables (i, j) with j < w_i; the last
part of each branch is eliminated through mu_i^1 + ... + mu_i^{w_i} = 1.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from app.quiver_core import WeightData
from app.rationals import format_rational, primitive_integer_vector

Variable = Tuple[int, int]
Point = Mapping[Variable, Fraction]

_BRANCH_LETTERS = "abc"


@dataclass(frozen=True)
class LinearForm:
    """sum of coefficient * mu_i^j plus a constant"""

    terms: Tuple[Tuple[Variable, Fraction], ...] = ()
    constant: Fraction = Fraction(0)

    @classmethod
    def build(cls, coefficients: Mapping[Variable, Fraction], constant=0) -> "LinearForm":
        terms = tuple(
            sorted((var, Fraction(c)) for var, c in coefficients.items() if c != 0)
        )
        return cls(terms=terms, constant=Fraction(constant))

    @classmethod
    def const(cls, value) -> "LinearForm":
        return cls(constant=Fraction(value))

    def coefficients(self) -> Dict[Variable, Fraction]:
        return dict(self.terms)

    def coefficient(self, var: Variable) -> Fraction:
        return self.coefficients().get(var, Fraction(0))

    def __add__(self, other: "LinearForm") -> "LinearForm":
        coeffs = self.coefficients()
        for var, c in other.terms:
            coeffs[var] = coeffs.get(var, Fraction(0)) + c
        return LinearForm.build(coeffs, self.constant + other.constant)

    def __neg__(self) -> "LinearForm":
        return self.scale(-1)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + (-other)

    def __mul__(self, scalar) -> "LinearForm":
        return self.scale(scalar)

    __rmul__ = __mul__

    def scale(self, scalar) -> "LinearForm":
        scalar = Fraction(scalar)
        return LinearForm.build({v: c * scalar for v, c in self.terms}, self.constant * scalar)

    def is_constant(self) -> bool:
        return not self.terms

    def is_zero(self) -> bool:
        return not self.terms and self.constant == 0

    def evaluate(self, point: Point) -> Fraction:
        return self.constant + sum((c * point[v] for v, c in self.terms), Fraction(0))

    def vector(self, variables: Sequence[Variable]) -> Tuple[Fraction, ...]:
        coeffs = self.coefficients()
        unknown = set(coeffs) - set(variables)
        if unknown:
            raise KeyError(f"Form mentions variables {sorted(unknown)} outside {list(variables)}")
        return tuple(coeffs.get(v, Fraction(0)) for v in variables)

    def normalized(self) -> "LinearForm":
        """Positive rescaling to coprime integer coefficients and constant"""
        values = [c for _, c in self.terms] + [self.constant]
        if all(v == 0 for v in values):
            return LinearForm()
        ints = primitive_integer_vector(values)
        return LinearForm(
            terms=tuple((var, Fraction(x)) for (var, _), x in zip(self.terms, ints[:-1])),
            constant=Fraction(ints[-1]),
        )

    def pretty(self, weights: Optional[WeightData] = None) -> str:
        parts: List[str] = []
        for var, c in self.terms:
            name = variable_name(var, weights)
            if c == 1:
                token = name
            elif c == -1:
                token = f"-{name}"
            else:
                token = f"{format_rational(c)}*{name}"
            parts.append(token)
        if self.constant != 0 or not parts:
            parts.append(format_rational(self.constant))
        text = parts[0]
        for token in parts[1:]:
            text += f" - {token[1:]}" if token.startswith("-") else f" + {token}"
        return text

    def __str__(self) -> str:
        return self.pretty()


def variable_name(var: Variable, weights: Optional[WeightData] = None) -> str:
    i, j = var
    if weights is None or weights.l <= len(_BRANCH_LETTERS):
        if i <= len(_BRANCH_LETTERS):
            return f"{_BRANCH_LETTERS[i - 1]}{j}"
    return f"mu{i}{j}"


def mu_variable(w: WeightData, i: int, j: int) -> LinearForm:
    """
    The form of mu_i^j with the superscript read cyclically in 1..w_i.

    mu_i^{w_i} becomes 1 minus the other parts; a weight-1 branch is the constant 1.
    """
    wi = w.weight(i)
    jj = (j - 1) % wi + 1
    if wi == 1:
        return LinearForm.const(1)
    if jj < wi:
        return LinearForm.build({(i, jj): 1})
    return LinearForm.build({(i, t): -1 for t in range(1, wi)}, 1)


def is_trivial(form: LinearForm) -> bool:
    """
    True when form >= 0 holds on the whole closed product of partition simplices,
    i.e. the inequality only restates positivity of the parts.
    """
    worst = form.constant
    branches: Dict[int, Fraction] = {}
    for (i, _), c in form.terms:
        branches[i] = min(branches.get(i, Fraction(0)), c)
    return worst + sum(branches.values(), Fraction(0)) >= 0


@dataclass(frozen=True)
class Inequality:
    """form >= 0 (or > 0 when strict) with where it came from"""

    form: LinearForm
    provenance: str
    strict: bool = False
    indices: Tuple[Tuple[str, object], ...] = ()
    lhs: Optional[LinearForm] = field(default=None, compare=False)
    rhs: Optional[LinearForm] = field(default=None, compare=False)

    @classmethod
    def between(cls, lhs: LinearForm, rhs: LinearForm, provenance: str, indices=()) -> "Inequality":
        """lhs <= rhs"""
        return cls(form=rhs - lhs, provenance=provenance, indices=tuple(indices), lhs=lhs, rhs=rhs)

    def key(self) -> Tuple[LinearForm, bool]:
        return self.form.normalized(), self.strict

    def evaluate(self, point: Point) -> Fraction:
        return self.form.evaluate(point)

    def sides(self, point: Point) -> Tuple[Fraction, Fraction]:
        """(lhs, rhs) values; forms without explicit sides read as 0 <= form"""
        if self.lhs is not None and self.rhs is not None:
            return self.lhs.evaluate(point), self.rhs.evaluate(point)
        return Fraction(0), self.form.evaluate(point)

    def holds(self, point: Point) -> bool:
        value = self.form.evaluate(point)
        return value > 0 if self.strict else value >= 0

    def is_tight(self, point: Point) -> bool:
        return self.form.evaluate(point) == 0

    def pretty(self, weights: Optional[WeightData] = None) -> str:
        op = "<" if self.strict else "<="
        if self.lhs is not None and self.rhs is not None:
            return f"{self.lhs.pretty(weights)} {op} {self.rhs.pretty(weights)}"
        op = ">" if self.strict else ">="
        return f"{self.form.normalized().pretty(weights)} {op} 0"


def dedup(inequalities: Iterable[Inequality]) -> List[Inequality]:
    """Keep the first inequality of every (normalized form, strictness) class, in order"""
    seen = set()
    out = []
    for ineq in inequalities:
        k = ineq.key()
        if k in seen:
            continue
        seen.add(k)
        out.append(ineq)
    return out


@dataclass(frozen=True)
class SymbolicCharge:
    """Z = r * z + s(mu)"""

    r: Fraction
    s: LinearForm

    def shifted(self, constant) -> "SymbolicCharge":
        return SymbolicCharge(self.r, self.s + LinearForm.const(constant))

    def at(self, point: Point) -> Tuple[Fraction, Fraction]:
        return self.r, self.s.evaluate(point)

    def scaled_pretty(self, weights: Optional[WeightData] = None) -> str:
        """Cleared of the denominator of r, e.g. '3Z = 2z - a1 - b1 + ...'"""
        den = self.r.denominator
        s = self.s.scale(den)
        r = self.r * den
        lead = "z" if r == 1 else f"{format_rational(r)}z"
        body = s.pretty(weights)
        sign = "-" if body.startswith("-") else "+"
        body = body[1:] if body.startswith("-") else body
        prefix = "Z" if den == 1 else f"{den}Z"
        return f"{prefix} = {lead} {sign} {body}"
