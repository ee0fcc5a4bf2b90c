"""Shared engine errors."""


class OutsideModelError(ValueError):
    """Raised when a requested operation leaves the finite cycle model."""
