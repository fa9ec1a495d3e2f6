from __future__ import annotations


class F2SubspacesError(Exception):
    """Base class for every error raised by the library."""


class AmbientMismatchError(F2SubspacesError, ValueError):
    """Raised when vectors, matrices or subspaces live in different ambient spaces."""
