"""Exception types shared across the package."""


class SkewPBWError(Exception):
    """Base class for all errors raised by skewpbw."""


class RingSpecError(SkewPBWError):
    """A ring spec is malformed, too large, or expands to a non-ring."""


class CapExceeded(SkewPBWError):
    """A size or evaluation cap was exceeded.

    Raise the cap explicitly (or shrink the instance) to proceed.
    """


class MapValidationError(SkewPBWError):
    """An endomorphism/derivation family failed validation."""


class NotInvariantError(MapValidationError):
    """An ideal is not invariant under the maps it was used with."""


class PresentationError(SkewPBWError):
    """A PBW presentation is inconsistent or unusable."""


class ParseError(SkewPBWError):
    """An expression or config could not be parsed.

    ``line`` and ``column`` are 1-based.
    """

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class BudgetError(SkewPBWError):
    """A verification budget is unusable (empty search box, bad mode)."""
