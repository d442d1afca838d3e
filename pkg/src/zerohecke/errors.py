"""Exception types shared across the package."""


class SizeLimitError(ValueError):
    """An enumeration would exceed the configured size bound."""


class ConsistencyError(RuntimeError):
    """Two routes to the same theorem-backed quantity disagree.

    Raising this always indicates a bug, never bad input.
    """


class UnsupportedError(ValueError):
    """The request is outside the cases the library handles (e.g. non-hook shapes)."""
