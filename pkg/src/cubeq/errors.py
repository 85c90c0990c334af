"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-contract input (bad width, index, schema, ...)."""


class ResourceError(InputError):
    """Input is structurally fine but too large for the requested operation."""


class InternalInvariantError(RuntimeError):
    """A step that is mathematically guaranteed to succeed failed.

    Raising this signals a bug in the implementation, never bad input.
    """
