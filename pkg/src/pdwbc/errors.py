"""Exception hierarchy shared by every module.

All errors derive from :class:`PdwbcError`, itself a ``ValueError``, so callers
that only care about bad input can catch ``ValueError``.
"""


class PdwbcError(ValueError):
    """Base class for all library errors."""


class DimensionError(PdwbcError):
    """Non-square matrix or mismatched operand shapes."""


class DomainError(PdwbcError):
    """A parameter lies outside the admissible domain."""


class PoleError(DomainError):
    """Evaluation hits a pole (or a series division by zero constant term)."""


class DegenerateInputError(DomainError):
    """Coincident parameters where a formula needs them distinct."""


class WindowError(DomainError):
    """``mu`` too close to 1 for the exponential asymptotics; use the erfc window."""


class ResourceGuardError(PdwbcError):
    """A tractability guard was exceeded."""
