"""Shared exception bases.

Concrete error types live next to the code that raises them; everything a
caller may want to catch wholesale derives from one of these two roots.
"""


class DomainError(Exception):
    """A mathematically invalid request (bad input object, broken precondition)."""


class ParseError(Exception):
    """Malformed input text; carries a 1-based line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
