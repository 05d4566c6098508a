"""
Exact rational helpers: wire format "num/den" and small vector utilities.
"""
import re
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, List, Sequence

from app.exceptions import InvalidDatum

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text) -> Fraction:
    """
    Parse a wire rational.

    Args:
        text: "num/den", "n", or an int

    Returns:
        The exact Fraction

    Raises:
        InvalidDatum: floats, empty strings, zero denominators
    """
    if isinstance(text, bool):
        raise InvalidDatum(f"Not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise InvalidDatum(f"Rationals must be strings 'num/den', got {type(text).__name__}")
    match = _RATIONAL_RE.match(text)
    if not match:
        raise InvalidDatum(f"Malformed rational {text!r}, expected 'num/den'")
    num, den = match.group(1), match.group(2)
    if den is not None and int(den) == 0:
        raise InvalidDatum(f"Zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(value) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def common_denominator(values: Iterable[Fraction]) -> int:
    den = 1
    for v in values:
        den = lcm(den, Fraction(v).denominator)
    return den


def primitive_integer_vector(values: Sequence[Fraction]) -> List[int]:
    """Scale by a positive rational so the entries are coprime integers."""
    den = common_denominator(values)
    ints = [int(Fraction(v) * den) for v in values]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return ints
    return [x // g for x in ints]


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))
