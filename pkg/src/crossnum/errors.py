"""Exception hierarchy shared by all crossnum modules."""

from __future__ import annotations


class CrossnumError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(CrossnumError, ValueError):
    """An argument is out of range or structurally malformed."""


class PreconditionError(CrossnumError, ValueError):
    """An operation was called on an input that violates its precondition."""


class NonSimpleResultError(CrossnumError, ValueError):
    """A transformation would produce a loop or a parallel edge."""


class FormatError(InvalidInputError):
    """A text file could not be parsed.

    ``line`` is the 1-based line number of the offending line, or ``None``
    when the problem is not tied to a single line.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NonplanarError(CrossnumError, ValueError):
    """Raised when an embedding is requested for a nonplanar graph."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"graph is nonplanar ({witness.kind} subdivision found)")


class CertificateError(CrossnumError, ValueError):
    """A drawing certificate violates one or more good-drawing rules.

    ``violations`` is a list of ``(code, detail)`` tuples. Codes are stable
    strings: ``host-mismatch``, ``unknown-edge``, ``self-crossing``,
    ``adjacent``, ``duplicate-pair``, ``order-missing``, ``order-invalid``,
    ``nonplanar``.
    """

    def __init__(self, violations: list[tuple[str, str]]):
        self.violations = list(violations)
        lines = "; ".join(f"{code}: {detail}" for code, detail in self.violations)
        super().__init__(lines)

    @property
    def codes(self) -> list[str]:
        return [code for code, _ in self.violations]


class SearchTooLargeError(CrossnumError):
    """An exhaustive enumeration would exceed its configured ceiling."""
