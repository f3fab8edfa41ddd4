"""Exception hierarchy for Geodesic Planner."""

from __future__ import annotations


class GeodesicPlannerError(Exception):
    """Base class for all library errors."""


class InvalidInputError(GeodesicPlannerError, ValueError):
    """Input violates a documented precondition."""


class NonTangent(InvalidInputError):
    """Velocity is not tangent at its base point."""


class NonUnit(InvalidInputError):
    """Vector expected to have unit norm does not."""


class OutsideHalfSpace(InvalidInputError):
    """Start point does not lie strictly inside the half-space."""


class ManifoldMismatch(InvalidInputError):
    """Points or data belong to different model manifolds."""


class NotUnitary(InvalidInputError):
    """Isometry datum fails the orthogonality or structure check."""


class IndexOutOfRange(InvalidInputError):
    """Deck or root index outside its admissible range."""


class SingularIndex(InvalidInputError):
    """Half-angle tangent requested at l = p/2."""


class UnsupportedManifold(InvalidInputError):
    """Operation is not available for this model manifold."""


class ManifoldSpecError(InvalidInputError):
    """A manifold spec string such as 'lens7' could not be parsed."""


class UnknownExample(InvalidInputError):
    """Built-in bound example name is not known."""


class EmptyInput(InvalidInputError):
    """A nonempty collection was required."""


class MissingCardinality(InvalidInputError):
    """Cardinality groups are not exactly 1..r with nonempty lists."""


class DegenerateRootData(InvalidInputError):
    """Root data rank disagrees with the generic count."""


class AmbiguousNearCut(GeodesicPlannerError):
    """A pair lies inside the ambiguity band next to a cut stratum.

    The caller should use the exact stratum constructors or widen the
    tolerance instead of trusting a classification.
    """

    def __init__(self, message: str, margin: float):
        super().__init__(message)
        self.margin = margin


class AdjacencyViolation(GeodesicPlannerError):
    """Two tied lens deck indices are not adjacent modulo p."""

    def __init__(self, message: str, indices: tuple[int, ...]):
        super().__init__(message)
        self.indices = indices


class LemmaViolation(GeodesicPlannerError):
    """A boundary point of the fundamental domain has a forbidden zero pattern."""

    def __init__(self, message: str, point: list[float], zero_indices: tuple[int, ...]):
        super().__init__(message)
        self.point = point
        self.zero_indices = zero_indices


class InequalityViolation(GeodesicPlannerError):
    """The half-angle tangent comparison failed for some (p, m)."""

    def __init__(self, message: str, p: int, m: int, margin: float):
        super().__init__(message)
        self.p = p
        self.m = m
        self.margin = margin


class GridTooCoarse(GeodesicPlannerError):
    """The oracle grid produced no landing survivors below the diameter."""


class NoPiece(GeodesicPlannerError):
    """No piece of a decomposition accepted a pair."""

    def __init__(self, message: str, accepted: tuple[int, ...] = ()):
        super().__init__(message)
        self.accepted = accepted
