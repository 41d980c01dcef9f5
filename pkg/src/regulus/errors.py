"""Shared exception types."""


class ParseError(ValueError):
    """Raised on malformed hypergraph or certificate text."""


class GuardError(RuntimeError):
    """Raised when an exhaustive operation would exceed its size guard."""
