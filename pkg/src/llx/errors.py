"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Malformed instance, out-of-range activity, unknown vertex."""


class ResourceLimitError(RuntimeError):
    """An exact computation would exceed its configured size cap."""
