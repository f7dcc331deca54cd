"""Exception types shared across the package."""

from __future__ import annotations


class OpenBookError(Exception):
    """Base class for all errors raised by openbook_rho."""


class TruncationMismatch(OpenBookError, ValueError):
    """Two series with different truncation degrees were combined."""


class IntegralityError(OpenBookError, ArithmeticError):
    """A rank extracted from a generating function was not a nonnegative integer.

    Integrality is a theorem here, so this always indicates a bug.
    """


class ModelError(OpenBookError, ValueError):
    """A space model or open-book spec is not valid for the requested operation."""


class NotClassifiableError(OpenBookError):
    """The hypotheses needed to compute open-book ranks are not met."""

    def __init__(self, missing):
        self.missing = tuple(missing)
        super().__init__("hypotheses unmet: " + "; ".join(self.missing))


class InputError(OpenBookError, ValueError):
    """A user-supplied document is malformed."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")
