"""Exception types shared across the package."""


class SteinhausError(ValueError):
    """Base class for all domain errors raised by this package."""


class MismatchedSides(SteinhausError):
    """Pascal-triangle sides differ in length or in their shared apex entry."""


class TooLarge(SteinhausError):
    """Requested enumeration exceeds the configured exhaustive-search bound."""


class EmptyTuple(SteinhausError):
    """An operation that needs at least one entry received an empty tuple."""


class NotPeriodic(SteinhausError):
    """The tuple does not generate an orbit whose vertical period equals its length."""


class PeriodNotDivisibleBy4(SteinhausError):
    """Family search requires the period length to be divisible by 4."""


class UnbalancedPeriod(SteinhausError):
    """Family search requires the p-by-p period of the orbit to be balanced."""


class InvalidSpec(SteinhausError):
    """Scan parameters violate their arithmetic preconditions."""


class WindowTooLarge(SteinhausError):
    """Rendering window exceeds the configured pixel cap."""
