"""Exceptions shared across the package."""


class BianchiError(Exception):
    """Base class for all package-specific errors."""


class InvalidFieldParameter(BianchiError):
    """Raised when m is not a positive square-free integer."""


class UnsupportedBaseCusp(BianchiError):
    """Raised for m = 3: the stabiliser of the base ideal point is special
    (its chamber has four faces) and the run is replaced by a fixed verdict."""


class NonCrystallographicAngle(BianchiError):
    """Raised when two roots meet at an angle that is not pi/2, pi/3, pi/4,
    pi/6, zero, or divergent.  This cannot happen for valid roots of L_m and
    indicates an internal inconsistency."""
