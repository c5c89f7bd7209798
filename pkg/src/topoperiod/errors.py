"""Exception hierarchy shared across the package.

Parameter problems raise plain ``ValueError`` (CLI exit code 2); problems
with input data raise ``DataError`` subclasses or ``FileNotFoundError``
(CLI exit code 3).
"""
from __future__ import annotations

__all__ = ["DataError", "CsvParseError", "SeriesTooShortError"]


class DataError(Exception):
    """Input data cannot be used (malformed, empty, or too short)."""


class CsvParseError(DataError):
    """A CSV cell failed to parse; carries the 1-based file row."""

    def __init__(self, path: str, row: int, message: str) -> None:
        super().__init__(f"{path}: row {row}: {message}")
        self.path = path
        self.row = row


class SeriesTooShortError(DataError):
    """A series is shorter than an operation requires."""
