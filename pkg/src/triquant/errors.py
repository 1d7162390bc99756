"""Exception hierarchy for the whole package."""


class TriquantError(Exception):
    """Base class for all errors raised by this package."""


class UnboundVariableError(TriquantError):
    """A polynomial was evaluated without a value for one of its variables."""


class DegreeZeroError(TriquantError):
    """The input polynomial is constant; the lowering needs degree >= 1."""


class NoUnknownsError(TriquantError):
    """The input representation declares no unknowns (delta < 1)."""


class IndexOverflowError(TriquantError):
    """A multi-index exceeds the declared total degree."""


class ParseError(TriquantError):
    """Syntax error in a polynomial expression, annotated with a position."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownVariableError(ParseError):
    """A variable name outside the allowed set was used."""


class NonIntegerExponentError(ParseError):
    """An exponent was not a nonnegative integer literal."""


class SoundnessViolationError(TriquantError):
    """A compiled formula rejected the witness of a genuine solution."""


class NonPositiveGError(TriquantError):
    """An interval condition was evaluated with a non-positive scale g."""


class CapExceededError(TriquantError):
    """The bound polynomial's value exceeds the enumeration cap."""


class TripleContractViolation(TriquantError):
    """An interval triple broke the g > 0 / t - s <= g contract at a point."""


class ArtifactFormatError(TriquantError):
    """A persisted artifact file is malformed or has missing fields."""
