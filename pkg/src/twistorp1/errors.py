"""Exception hierarchy shared by all modules.

Exit-code mapping used by the CLI: ParseError -> 2, DomainError -> 3,
PrecisionError -> 4, ResourceError -> 5.
"""


class TwistorError(Exception):
    """Base class for all library errors."""


class DomainError(TwistorError):
    """Input outside the mathematical domain of an operation."""


class ParseError(TwistorError):
    """Malformed textual input (CLI syntax)."""


class PrecisionError(TwistorError):
    """A p-adic computation cannot certify its result at the carried precision.

    Retryable: redo the computation with more digits.
    """


class ResourceError(TwistorError):
    """A configured search or size bound was exceeded."""


class NoLiftError(DomainError):
    """The Hensel criterion fails for the supplied approximate root."""
