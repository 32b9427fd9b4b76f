"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "FDKitError",
    "UnknownAttributeError",
    "UniverseMismatchError",
    "LimitExceededError",
    "CoverageError",
    "ReservedNameError",
    "InstanceFormatError",
    "RelationFormatError",
]


class FDKitError(Exception):
    """Base class for all fdkit errors."""


class UnknownAttributeError(FDKitError, ValueError):
    """An attribute falls outside the governing universe or scheme."""


class UniverseMismatchError(FDKitError, ValueError):
    """Two dependency sets were compared over different universes."""


class LimitExceededError(FDKitError):
    """An exponential search was refused because the input exceeds the
    configured size limit.  This is a refusal, never a wrong answer."""


class CoverageError(FDKitError, ValueError):
    """A decomposition's parts do not cover the relation scheme."""


class ReservedNameError(FDKitError, ValueError):
    """A reserved attribute name was used where it is not allowed."""


class InstanceFormatError(FDKitError, ValueError):
    """A hitting-set instance file is malformed."""


class RelationFormatError(FDKitError, ValueError):
    """A relation CSV file is malformed."""
