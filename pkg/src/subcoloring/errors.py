"""Exception hierarchy.

Two families matter to callers: :class:`InputError` (bad user input, CLI exit
code 1) and :class:`InvariantViolation` (an algorithm or representation broke a
structural guarantee, CLI exit code 2).
"""

from __future__ import annotations


class SubcoloringError(Exception):
    pass


class InputError(SubcoloringError, ValueError):
    pass


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class KindMismatchError(InputError):
    pass


class DuplicateIdError(InputError):
    pass


class SizeGuardError(InputError):
    """The exact solver was asked to search an instance above its size limit."""


class InvariantViolation(SubcoloringError, AssertionError):
    pass


class SearchBudgetExceeded(InvariantViolation):
    """Backtracking exceeded its node budget; the answer is unknown."""


class EmbeddingError(InvariantViolation):
    pass
