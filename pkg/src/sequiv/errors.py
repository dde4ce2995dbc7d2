"""Exception hierarchy shared by the library and the command line."""


class SequivError(Exception):
    """Base class for every error raised by this package."""


class CapacityError(SequivError):
    """An enumeration would exceed the configured atom cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: {size} atoms exceeds the enumeration cap of {cap}")
        self.size = size
        self.cap = cap


class NegationError(SequivError, ValueError):
    """The operation requires a program without classical negation."""


class ReservedNameError(SequivError, ValueError):
    """An atom name collides with names reserved for internal encodings."""


class UpperBoundError(SequivError, ValueError):
    """A constraint reduct was requested for a constraint with a finite upper bound."""


class ParseError(SequivError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class MethodDisagreement(SequivError):
    """Two decision procedures returned different verdicts (a bug if ever raised)."""
