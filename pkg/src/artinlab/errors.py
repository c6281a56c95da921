"""Exception taxonomy shared across the package.

The CLI maps these onto its exit codes; library users can catch them
individually.
"""


class ArtinlabError(Exception):
    """Base class for all package errors."""


class ParseError(ArtinlabError):
    """Malformed polynomial or job text; carries the offending position."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class AmbientMismatchError(ArtinlabError):
    """Operands live in different ambient spaces or variable sets."""


class InfiniteDimensionalError(ArtinlabError):
    """The quotient algebra is not finite-dimensional."""


class IncompletePointsError(ArtinlabError):
    """Rational point finding cannot certify completeness.

    Some coordinate multiplication operator has a characteristic
    polynomial that does not split into rational linear factors; the
    offending variable is named in the message.
    """

    def __init__(self, variable, message=None):
        self.variable = variable
        super().__init__(
            message
            or f"point list incomplete: multiplication operator for '{variable}' "
            f"has irrational eigenvalues"
        )


class NonIsolatedSingularityError(ArtinlabError):
    """Local dimension failed to stabilize below the truncation cap."""


class CancelledError(ArtinlabError):
    """A cooperative cancellation token requested a stop."""


class InternalInvariantError(ArtinlabError):
    """An internal consistency check failed; indicates a bug, not bad input."""
