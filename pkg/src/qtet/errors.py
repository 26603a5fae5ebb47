"""Exception types shared across the package."""


class ExactError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ExactError):
    """An argument is outside the mathematical domain of an operation."""


class ParseError(ExactError):
    """Malformed literal text.  Carries the character position of the fault."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class FieldMismatch(ExactError):
    """Two values from different coefficient fields were combined."""


class StructuralError(ExactError):
    """A structural invariant fails (sum not direct, wrong shape, bad basis)."""


class GenerationError(ExactError):
    """A requested example instance cannot exist for the given parameters."""
