"""Exception types shared across the package."""


class PackeditError(Exception):
    """Base class for all package errors."""


class EditMismatch(PackeditError):
    """An edit's tag disagrees with the graph it is applied to."""


class FamilyMismatch(PackeditError):
    """A forbidden-subgraph family was used with the wrong host type."""


class Exceeded(PackeditError):
    """The exact optimum is larger than the requested cap.

    Carries ``cap`` so callers can reason about the boundary.
    """

    def __init__(self, cap, message=None):
        super().__init__(message or f"optimum exceeds cap {cap}")
        self.cap = cap


class SizeCapError(PackeditError):
    """Input is larger than a routine's hard desk-scale cap."""


class MalformedFormula(PackeditError):
    """CNF input violates a construction's precondition."""


class QTooSmall(PackeditError):
    """Clique-construction parameter q is below the minimum of 6."""


class InputFormatError(PackeditError):
    """A text input file could not be parsed."""
