"""Exception hierarchy shared by every module of the package."""


class BidiscError(Exception):
    """Base class for all package errors."""


class ParseError(BidiscError, ValueError):
    """Malformed map DSL or point spec. ``offset`` is a byte offset into the input."""

    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)


class RangeError(BidiscError, ValueError):
    """An interior coordinate lies outside the open unit disc."""


class PoleError(BidiscError, ZeroDivisionError):
    """A denominator vanished (modulus below the pole threshold)."""


class NumericFailure(BidiscError, ArithmeticError):
    """A sampled limit did not stabilise within its schedule."""


class IndeterminateError(BidiscError):
    """Iteration neither settled in the interior nor reached the boundary."""


class InconsistentSlices(BidiscError):
    """Slice probes disagree about the interior/boundary dichotomy."""


class ProductIdentityViolation(BidiscError):
    """Composed dilatation disagrees with the product of the factor dilatations."""


class ContinuationFailure(BidiscError):
    """Newton continuation along a fixed-point curve stalled."""


class AuditFailure(BidiscError):
    """The input map failed the self-map audit."""
