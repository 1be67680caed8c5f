#!/usr/bin/env python3
"""
Errors Module

Every error raised on purpose by the lab derives from `LabError`, which
is a `ValueError`. Each class carries the process exit code the command
line reports for it: 1 for mathematically meaningful failures, 2 for
usage, input and resource problems.
"""


class LabError(ValueError):
    """Base class for lab errors."""

    exit_code = 2


class DimensionError(LabError):
    """Operands live in different numbers of variables or vertices."""


class VertexRangeError(LabError):
    """A vertex index lies outside 1..n."""


class NotInnerError(LabError):
    """A carriage-dependent operation received a quiver with a zero entry."""


class ParityError(LabError):
    """The Pfaffian was requested for an odd number of vertices."""


class WrongCarriageError(LabError):
    """A sign pattern violates the carriage an identity is stated for."""


class CapExceededError(LabError):
    """A size exceeds the configured enumeration cap."""


class UnsupportedSizeError(LabError):
    """A construction is only defined for one quiver size."""


class AmbiguousBoundaryError(LabError):
    """Pieces of a carriage-wise polynomial disagree on a boundary quiver."""


class DomainError(LabError):
    """Input outside the domain of an operation (e.g. non-integer entries)."""


class ResourceGuardError(LabError):
    """A search request exceeds the resource guard."""


class FormatError(LabError):
    """A file or text form could not be parsed."""


class UnknownInvariantError(LabError):
    """No built-in invariant is registered under the requested name."""


class VerificationError(LabError):
    """A result failed its verification; never returned silently."""

    exit_code = 1
