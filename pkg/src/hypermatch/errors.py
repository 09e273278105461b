"""Exception hierarchy shared by every hypermatch module."""

from __future__ import annotations


class HypermatchError(Exception):
    """Base class for all errors raised by hypermatch."""


class HypergraphParseError(HypermatchError):
    """Malformed hypergraph text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class VertexReferenceError(HypergraphParseError):
    """A vertex or hyperedge id outside the valid range."""


class NormalizationError(HypergraphParseError):
    """The input cannot be normalized into a simple hypergraph."""


class QueryValidationError(HypermatchError):
    """The query hypergraph is not supported by the engine."""


class DisconnectedQueryError(QueryValidationError):
    pass


class QueryCapacityError(QueryValidationError):
    pass


class ContractViolation(HypermatchError):
    """Internal invariant broken; indicates a caller or engine bug."""


class ScaleGuardError(HypermatchError):
    """Instance is too large for an exponential reference oracle."""


class GenerationError(HypermatchError):
    """A random generator could not satisfy its parameters."""


class IndexCacheError(HypermatchError):
    """An index cache file is missing, corrupt, or stale."""
