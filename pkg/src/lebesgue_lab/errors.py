"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside an operation's mathematical domain."""


class InputError(ValueError):
    """A file or configuration input is malformed."""


class NumericalError(RuntimeError):
    """A computation could not be completed reliably."""
