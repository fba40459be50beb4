"""Module for the exceptions raised by the likelihood app.

Library code raises these; the management commands and the API views turn them
into exit codes and HTTP responses.
"""


class SymwalkError(Exception):
    """Base class for every error raised by the library."""


class DomainError(SymwalkError, ValueError):
    """Raised when an argument is outside the domain of an operation.

    Covers malformed partitions or cycle types, size mismatches, parameters out
    of range and malformed text or JSON encodings.
    """


class ResourceLimitError(DomainError):
    """Raised when a request exceeds one of the configured size caps."""


class UnsupportedKindError(DomainError):
    """Raised when an operation is asked for an order or walk it does not handle."""


class InvariantViolation(SymwalkError, ArithmeticError):
    """Raised when an exact invariant fails to hold.

    This always points at a bug, never at bad input.
    """
