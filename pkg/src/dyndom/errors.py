"""Exception hierarchy shared by the graph core, the solvers and the CLI."""

from __future__ import annotations


class DynDomError(Exception):
    """Base class for every error raised by this package."""


class GraphError(DynDomError, ValueError):
    """An edge event violates the simple-graph preconditions."""


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class MissingEdge(GraphError):
    pass


class VertexOutOfRange(GraphError):
    pass


class ParseError(DynDomError, ValueError):
    """Malformed trace text. ``line`` is 1-based."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class Disconnected(DynDomError):
    """A path query was issued for two vertices in different trees."""


class InternalInconsistency(DynDomError, RuntimeError):
    """A guard that the algorithm's own invariants should make unreachable fired."""


class AlreadyMember(DynDomError):
    pass


class StillNeeded(DynDomError):
    pass


class NoShortConnector(DynDomError):
    """No set of at most two vertices reconnects the requested components."""


class TooLarge(DynDomError, ValueError):
    """Exhaustive oracle requested beyond its size cap."""
