"""Exception hierarchy for bvkit.

Every validation failure raises a subclass of :class:`BVKitError` so callers
(and the CLI) can distinguish input errors from budget/verification problems.
"""


class BVKitError(Exception):
    """Base class for all bvkit errors."""


# ---- construction / validation -------------------------------------------

class InvalidInterval(BVKitError):
    """Interval endpoints outside [0,1] or a > b."""


class NonMonotoneBreakpoints(BVKitError):
    """Breakpoints are not strictly increasing."""


class LengthMismatch(BVKitError):
    """piece/point value arrays have the wrong length."""


class NonFiniteValue(BVKitError):
    """A value is NaN or infinite."""


class DomainMismatch(BVKitError):
    """Operands live on different domains, or an op requires domain [0,1]."""


class OutOfDomain(BVKitError):
    """A point or interval lies outside the function's domain."""


class DegenerateInterval(BVKitError):
    """An interval of zero length where a nondegenerate one is required."""


class SchemaError(BVKitError):
    """A JSON document does not match the declared schema."""


class InvalidSequence(BVKitError):
    """Not a valid Waterman sequence (positivity/monotonicity/divergence)."""


class InvalidPhi(BVKitError):
    """Not a valid phi-function (convexity/monotonicity/positivity)."""


# ---- operation preconditions ----------------------------------------------

class IndexZero(BVKitError):
    """Waterman sequence indices start at 1."""


class NegativeArgument(BVKitError):
    """phi evaluated at u < 0."""


class OverlappingIntervals(BVKitError):
    """A nonoverlapping collection was required."""


class NonFiniteScale(BVKitError):
    """Scale factor is NaN or infinite."""


class BadExponent(BVKitError):
    """q < 1 where an L^q exponent is required."""


class BadExponents(BVKitError):
    """(p, q) outside 1 <= p < q."""


class BadShift(BVKitError):
    """Shift h outside (0, b-a) or the range required by the bound."""


class BadEta(BVKitError):
    """eta outside (0, b-a)."""


class BadDelta(BVKitError):
    """delta outside its admissible range."""


class ToleranceNonPositive(BVKitError):
    """tol must be > 0."""


class TooManyIntervals(BVKitError):
    """Master collection too large for exhaustive subsequence search."""


class CannotCertify(BVKitError):
    """Variation only known as a lower bound and the gap cannot be closed."""


class BudgetExceeded(BVKitError):
    """An oracle budget (trace length / partition count) was exceeded."""
