"""Exception types shared by every module."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InputError(ValueError):
    """Malformed or inconsistent user-supplied data (e.g. a singular generator)."""


class ResourceError(RuntimeError):
    """A computation would exceed a configured size limit."""
