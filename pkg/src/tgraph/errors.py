"""Exception types shared across the engine."""

from __future__ import annotations


class GraphError(Exception):
    """Base class for all engine errors."""


class TypeStabilityError(GraphError):
    """A property was written with a different type tag than an earlier update."""

    def __init__(self, entity: str, name: str, expected: str, got: str):
        super().__init__(
            f"property {name!r} on {entity} is {expected}, got {got}"
        )
        self.name = name
        self.expected = expected
        self.got = got


class NotFoundError(GraphError):
    """An entity (node, edge, layer, graph) does not exist or is not visible."""


class EmptyGraphError(GraphError):
    """Time bounds requested on a graph or view with no events."""


class EmptyViewError(GraphError):
    """An algorithm requires at least one visible node."""


class TimeOverflowError(GraphError):
    """Timestamp arithmetic left the signed 64-bit tick range."""


class InvalidArgumentError(GraphError):
    """An argument violates an operation precondition."""


class LoadError(GraphError):
    """Ingestion failed: unreadable file, unresolvable column, or zero valid rows."""


class ExportError(GraphError):
    """Export failed (unwritable path or unsupported payload/format combination)."""
