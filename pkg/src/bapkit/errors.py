"""Exception types shared across the package."""


class BapError(Exception):
    """Base class for all package-specific errors."""


class DimensionError(BapError):
    """Array or permutation dimensions do not match the instance."""


class FeasibilityError(BapError):
    """A fractional solution violates the doubly stochastic constraints."""


class CapExceededError(BapError):
    """An enumeration would exceed the configured solution cap."""

    def __init__(self, count, cap):
        super().__init__(f"enumeration of {count} solutions exceeds cap {cap}")
        self.count = count
        self.cap = cap


class PreconditionError(BapError):
    """A documented precondition of an operation does not hold."""


class ParseError(BapError):
    """An instance file is malformed; ``path`` locates the offending field."""

    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
