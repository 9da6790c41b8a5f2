"""Exception hierarchy shared by every module."""

from __future__ import annotations


class DialgError(Exception):
    """Base class for all errors raised by this package."""


class FieldError(DialgError, ValueError):
    """Bad field specification (e.g. a composite modulus) or mixed fields."""


class AmbientMismatchError(DialgError, ValueError):
    pass


class NotAnIdealError(DialgError, ValueError):
    pass


class NotClosedError(DialgError, ValueError):
    """A subspace that was expected to be a subalgebra is not closed."""


class AxiomError(DialgError, ValueError):
    """An algebra fails the dialgebra identities."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotACocycleError(AxiomError):
    pass


class NotPerfectError(DialgError, ValueError):
    pass


class NotCentralError(DialgError, ValueError):
    pass


class NotHomomorphismError(DialgError, ValueError):
    pass


class InvalidSectionError(DialgError, ValueError):
    pass


class ExtensionMismatchError(DialgError, ValueError):
    """Two extensions (or a tower of them) do not fit together."""


class FormatError(DialgError, ValueError):
    """Malformed algebra or extension text."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
