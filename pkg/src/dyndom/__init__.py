"""Dynamic dominating sets under edge insertions and deletions.

Solvers:

* :class:`LevelSolution`: approximate minimum dominating set from stable
  level-based dominating pairs.
* :class:`MinimalDominatingSet`: inclusion-minimal dominating set.
* :class:`ConnectedDominatingSet`: connected dominating set built on
  ``LevelSolution`` plus a minimal set of connectors.
"""

from __future__ import annotations

from .cds import ConnectedDominatingSet, Segment, compute_uncovered_segments
from .errors import (
    AlreadyMember,
    Disconnected,
    DuplicateEdge,
    DynDomError,
    GraphError,
    InternalInconsistency,
    MissingEdge,
    NoShortConnector,
    ParseError,
    SelfLoop,
    StillNeeded,
    TooLarge,
    VertexOutOfRange,
)
from .graph import (
    DynGraph,
    EventKind,
    UpdateEvent,
    UpdateTrace,
    generate_connected_trace,
    generate_hub_trace,
    generate_trace,
    load_trace,
    parse_trace,
    replay,
    save_trace,
    serialize_trace,
    trace_from_edges,
)
from .mds import DominatingPair, DsChange, LevelSolution
from .minimal import MinimalDominatingSet, Selection

__version__ = "0.1.0"

__all__ = [
    "AlreadyMember",
    "ConnectedDominatingSet",
    "Disconnected",
    "DominatingPair",
    "DsChange",
    "DuplicateEdge",
    "DynDomError",
    "DynGraph",
    "EventKind",
    "GraphError",
    "InternalInconsistency",
    "LevelSolution",
    "MinimalDominatingSet",
    "MissingEdge",
    "NoShortConnector",
    "ParseError",
    "Segment",
    "Selection",
    "SelfLoop",
    "StillNeeded",
    "TooLarge",
    "UpdateEvent",
    "UpdateTrace",
    "VertexOutOfRange",
    "compute_uncovered_segments",
    "generate_connected_trace",
    "generate_hub_trace",
    "generate_trace",
    "load_trace",
    "parse_trace",
    "replay",
    "save_trace",
    "serialize_trace",
    "trace_from_edges",
]
