"""Exception types shared by all modules."""


class ShearCountError(Exception):
    """Base class for errors raised by this package."""


class InvalidParameter(ShearCountError, ValueError):
    """An argument is outside the documented domain (e.g. radius <= 0)."""


class RangeExceeded(ShearCountError, ValueError):
    """The request leaves the double-precision regime the package guarantees,
    or would allocate more work than the documented ceiling allows."""
