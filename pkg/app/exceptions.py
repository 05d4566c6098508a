"""
Error hierarchy for the total semi-stability toolkit.

Every domain error derives from ``ValueError`` so the HTTP layer and the CLI
can treat them uniformly as bad input (400 / exit code 2).
"""


class TotalStabilityError(ValueError):
    """Base class for all domain errors"""


class InvalidDatum(TotalStabilityError):
    """A stability datum or its JSON document violates a constraint"""


class UnknownType(TotalStabilityError):
    """A type tag could not be parsed"""


class NotTame(TotalStabilityError):
    """Weights do not define a tame (Euclidean) weighted projective line"""


class SingularEuler(TotalStabilityError):
    """The Euler matrix of a section quiver is not unimodular"""


class IndexOutOfRange(TotalStabilityError):
    """A branch or tube index lies outside the weight data"""


class DimensionMismatch(TotalStabilityError):
    """A class vector has the wrong length for the lattice"""


class ZeroCharge(TotalStabilityError):
    """A central charge vanished where a phase was required"""


class WeightMismatch(TotalStabilityError):
    """Two data that must share weights do not"""


class NotNonConcentrated(TotalStabilityError):
    """The flow base point has Im z = 0"""


class Degenerate(TotalStabilityError):
    """The datum gives zero charge to some indecomposable bundle"""


class NonPositiveRank(TotalStabilityError):
    """A phase comparison by cross product needs positive rank coefficients"""


class TooManyVariables(TotalStabilityError):
    """Fourier-Motzkin elimination refused an oversized system"""


class SectionPropertyError(RuntimeError):
    """A member datum produced a cut that is not a section (internal error)"""
