"""tgraph: an embeddable temporal property-graph engine.

Every structural and property change is recorded with a timestamp in a single
immutable store; constrained views (time windows, layers, subgraphs, deletion
semantics) are lazy and composable; static and temporal algorithms run over
any view. A CLI and a GraphQL HTTP service front the same library calls.
"""

from .algorithms import (
    AlgorithmResult,
    MotifMatrix,
    PageRankConfig,
    ReachabilityResult,
    WindowedResults,
    degree_stats,
    enumerate_signatures,
    pagerank,
    run_over_windows,
    shuffle_timestamps,
    temporal_motifs,
    temporal_reachability,
    top_k,
)
from .errors import (
    EmptyGraphError,
    EmptyViewError,
    ExportError,
    GraphError,
    InvalidArgumentError,
    LoadError,
    NotFoundError,
    TimeOverflowError,
    TypeStabilityError,
)
from .graphio import (
    EdgeTableSpec,
    ExportFormat,
    LoadResult,
    NodeTableSpec,
    TimeFormat,
    export,
    graph_document,
    load_edges,
    load_graph_json,
    load_node_props,
)
from .store import DEFAULT_LAYER, TIME_MAX, TIME_MIN, EdgeRef, NodeRef, TemporalGraph
from .views import GraphView, Semantics, Window, WindowSet, alive_intervals, full_view

__version__ = "0.1.0"

__all__ = [
    "AlgorithmResult",
    "DEFAULT_LAYER",
    "EdgeRef",
    "EdgeTableSpec",
    "EmptyGraphError",
    "EmptyViewError",
    "ExportError",
    "ExportFormat",
    "GraphError",
    "GraphView",
    "InvalidArgumentError",
    "LoadError",
    "LoadResult",
    "MotifMatrix",
    "NodeRef",
    "NodeTableSpec",
    "NotFoundError",
    "PageRankConfig",
    "ReachabilityResult",
    "Semantics",
    "TIME_MAX",
    "TIME_MIN",
    "TemporalGraph",
    "TimeFormat",
    "TimeOverflowError",
    "TypeStabilityError",
    "Window",
    "WindowSet",
    "WindowedResults",
    "alive_intervals",
    "degree_stats",
    "enumerate_signatures",
    "export",
    "full_view",
    "graph_document",
    "load_edges",
    "load_graph_json",
    "load_node_props",
    "pagerank",
    "run_over_windows",
    "shuffle_timestamps",
    "temporal_motifs",
    "temporal_reachability",
    "top_k",
]
