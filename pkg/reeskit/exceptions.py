"""
Custom exceptions for reeskit.
All failures are LOUD. Nothing degrades silently.
"""

from typing import Optional


class ReesKitError(Exception):
    """Base class for every reeskit failure."""
    pass


class ValidationError(ReesKitError):
    """Raised when input violates a contract (shape, range, family bound)."""
    pass


class CalculationError(ReesKitError):
    """Raised when an internal consistency check fails."""
    pass


class ConeError(ValidationError):
    """Raised when a semigroup cone is not strongly convex or not full-dimensional."""
    pass


class OracleMismatchError(CalculationError):
    """Raised when a brute-force verifier disagrees with the primary path."""
    pass


class EnumerationCapError(ReesKitError):
    """Raised when a bounded enumeration would exceed the configured cap."""

    def __init__(self, size: int, cap: int, what: Optional[str] = None):
        self.size = size
        self.cap = cap
        label = f" for {what}" if what else ""
        super().__init__(
            f"Enumeration bound exceeded{label}: {size} points > cap {cap}"
        )
