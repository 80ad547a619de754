"""
Error types shared by every computation in the toolkit
"""
from typing import Optional


class InvalidInputError(ValueError):
    """Input violates the preconditions of an operation."""


class UnsupportedInstanceError(ValueError):
    """Input is well formed but outside what the operation can decide."""


class UndecidedError(RuntimeError):
    """Exact computation stopped at a configured resource limit."""

    def __init__(self, message: str, limit: Optional[str] = None):
        super().__init__(message)
        self.limit = limit or message
