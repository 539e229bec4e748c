"""Exception hierarchy shared by every module of the package."""


class PlaneMapsError(Exception):
    """Base class for all errors raised by planemaps."""


class DegenerateElimination(PlaneMapsError):
    """Both resultant inputs are constant in the eliminated variable."""


class NumericUnstable(PlaneMapsError):
    """Coefficients cannot be represented faithfully in double precision."""


class DegenerateMap(PlaneMapsError):
    """The map is not dominating (its Jacobian determinant vanishes identically)."""


class RectifyFailed(PlaneMapsError):
    """A polynomial that had to be a coordinate could not be rectified."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotInClass(PlaneMapsError):
    """The branched value set of the map is not isomorphic to a line."""


class ShapeMismatch(PlaneMapsError):
    """A polynomial does not have the expected semi-monomial shape."""


class Lemma1MiddleCoefficients(PlaneMapsError):
    """The univariate factor after rectification is not of the form l*x^d + c."""


class InvalidParams(PlaneMapsError):
    """Normal form parameters violate the constraints of their type."""


class ReplayMismatch(PlaneMapsError):
    """A certificate failed to replay to the claimed identity."""


class ParseError(PlaneMapsError):
    """Malformed polynomial text.

    ``position`` is the 0-based character offset of the offending token and
    ``expected`` the set of token kinds that would have been accepted there.
    """

    def __init__(self, message, position, expected=()):
        super().__init__(f"{message} at offset {position}"
                         + (f" (expected one of: {', '.join(sorted(expected))})" if expected else ""))
        self.position = position
        self.expected = frozenset(expected)
