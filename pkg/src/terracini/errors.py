"""Exception hierarchy shared across the package."""


class TerraciniError(Exception):
    """Base class for every error raised by this package."""


# --- exact arithmetic -------------------------------------------------------

class ZeroPolynomial(TerraciniError):
    """An operation received the zero polynomial where a nonzero one is required."""


class NonUnit(TerraciniError):
    """Attempt to invert a power series with zero constant term."""


class NonRegularPoint(TerraciniError):
    """The implicit-function lift is invalid: the partial derivative vanishes."""


# --- curve construction -----------------------------------------------------

class NonSquarefree(TerraciniError):
    """Hyperelliptic branch polynomial has a repeated root."""


class CommonFactor(TerraciniError):
    """Parametrization coordinates share a nonconstant polynomial factor."""


class BadDegree(TerraciniError):
    """Degree data is inconsistent with the requested curve type."""


class AmbientMismatch(TerraciniError):
    """Ambient dimensions of the pieces of a construction disagree."""


class NotSplit(TerraciniError):
    """The branch polynomial does not split into rational linear factors."""


# --- jets and points --------------------------------------------------------

class PointNotOnCurve(TerraciniError):
    """The point does not satisfy the curve's equations exactly."""


class SingularPoint(TerraciniError):
    """Jet requested at a point where the representation is not smooth."""


class UnsupportedMultiplicity(TerraciniError):
    """Jet order exceeds what this curve representation supports."""


class NoRationalPointFound(TerraciniError):
    """Bounded search produced no rational point on the curve."""


# --- defect calculus --------------------------------------------------------

class NonReducedInput(TerraciniError):
    """A reduced divisor was required but a multiplicity exceeds one."""


class PreconditionNotMet(TerraciniError):
    """A documented degree or membership precondition fails."""


# --- witness constructions --------------------------------------------------

class DegreeMismatch(TerraciniError):
    """Requested witness parameters are incompatible."""


class DegenerateImage(TerraciniError):
    """A constructed parametrization fails nondegeneracy validation."""


class OddDegree(TerraciniError):
    """The total-flex family requires an even degree."""


class NotASquare(TerraciniError):
    """The requested fiber abscissa does not give a rational square value."""


class SingularCurve(TerraciniError):
    """A plane curve required to be smooth has a singular point."""


class EliminationDegenerate(TerraciniError):
    """Resultant elimination stayed degenerate after bounded retries."""


class NotSpaceCurve(TerraciniError):
    """The operation needs a parametric curve in three-dimensional space."""


# --- internal consistency ---------------------------------------------------

class SelfCheckError(TerraciniError):
    """A constructed fixture failed re-verification of its stated facts."""


class InputError(TerraciniError):
    """Malformed input file or command-line data."""
