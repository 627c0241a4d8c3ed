from .motifs import (
    ROW_PREFIXES,
    THIRD_EDGES,
    MotifMatrix,
    MotifSignature,
    enumerate_signatures,
    temporal_motifs,
)
from .nullmodel import shuffle_timestamps
from .pagerank import PageRankConfig, pagerank
from .reachability import ReachabilityResult, temporal_reachability
from .results import (
    AlgorithmResult,
    WindowedResults,
    degree_stats,
    run_over_windows,
    top_k,
)

__all__ = [
    "ROW_PREFIXES",
    "THIRD_EDGES",
    "AlgorithmResult",
    "MotifMatrix",
    "MotifSignature",
    "PageRankConfig",
    "ReachabilityResult",
    "WindowedResults",
    "degree_stats",
    "enumerate_signatures",
    "pagerank",
    "run_over_windows",
    "shuffle_timestamps",
    "temporal_motifs",
    "temporal_reachability",
    "top_k",
]
