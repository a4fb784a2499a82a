"""Shared error types for budget guards and input validation."""


class BudgetError(RuntimeError):
    """A construction or search exceeded its configured budget."""


class AlphabetMismatchError(ValueError):
    """Two inputs that must share an alphabet do not."""


class FileFormatError(ValueError):
    """An artifact file does not follow its line-based format."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number
