"""Exception hierarchy.  The CLI maps each family to a stable exit code."""


class BelyiError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class InvalidInput(BelyiError, ValueError):
    """Malformed or inconsistent input (non-disjoint sets, bad field spec, ...)."""

    exit_code = 2


class FieldMismatch(InvalidInput):
    pass


class VerificationFailure(BelyiError):
    """A certificate check did not reproduce."""

    exit_code = 1


class ResourceLimit(BelyiError):
    """An enumeration, expansion or retry cap was exceeded."""

    exit_code = 3


class NotInvertible(ArithmeticError):
    """Raised when inverting a zero divisor in a quotient ring.

    ``factor`` is a nontrivial common factor of the representative and the
    modulus, which callers use to split the ring.
    """

    def __init__(self, factor):
        super().__init__("element is not invertible")
        self.factor = factor


class InfiniteValuation(ArithmeticError):
    """The valuation of zero was requested."""
