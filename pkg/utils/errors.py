# utils/errors.py
"""
Exception types shared by every package.

Negative answers (not facial, not an S-set, cover fails verification) are
reported through verdict objects, never raised.
"""


class SsetKitError(Exception):
    """Base class for all library errors."""


class DomainError(SsetKitError, ValueError):
    pass


class InvalidAssignmentError(DomainError):
    pass


class UnsupportedSpaceError(SsetKitError):
    pass


class ShapeError(SsetKitError, ValueError):
    pass


class PreconditionError(SsetKitError):
    pass


class CoverageError(SsetKitError):
    pass


class CapacityError(SsetKitError):
    """Raised when an instance exceeds a configured enumeration or search guard."""


class MalformedJobError(SsetKitError):
    pass
