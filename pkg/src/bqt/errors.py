"""Exception types shared across the package.

Every error that an operation can raise is a named subclass of BqtError so
callers can catch the whole family or a specific condition.
"""


class BqtError(Exception):
    pass


class ZeroDenominator(BqtError):
    """Fraction constructed with a zero denominator."""


class DivisionByZero(BqtError):
    """Field division by the zero scalar."""


class PoleAtPoint(BqtError):
    """Evaluation point annihilates a denominator."""


class ExactDivisionError(BqtError):
    """A division that must be exact left a remainder (internal bug)."""


class IndexOutOfRange(BqtError):
    """Generator index outside the valid range for the rank."""


class RankTooSmall(BqtError):
    """Rank below the padding threshold of the partition."""


class EntryOutOfRange(BqtError):
    """Tableau entry outside 1..size."""


class NotAnEigenvector(BqtError):
    """Operator output is not proportional to the input basis vector."""


class ShapeMismatch(BqtError):
    """Vector shape or rank inconsistent with the requested map."""


class DegreeTooSmall(BqtError):
    """Requested degree below the minimum for the flavor."""


class InconsistentFlavors(BqtError):
    """Vectors of mixed flavor, degree, or rank where one is required."""


class FlavorAtMax(BqtError):
    """Raising operator applied at the top flavor."""


class FlavorAtMin(BqtError):
    """Lowering operator applied at flavor zero."""


class FlavorOutOfRange(BqtError):
    """Operator undefined for this flavor index."""


class NoStabilization(BqtError):
    """Dimensions did not stabilize before the configured rank cap."""


class UnsupportedOperation(BqtError):
    """The realization does not implement this generator."""


class InternalCheckFailed(BqtError):
    """A built-in consistency assertion (closed form, compatibility) failed."""
