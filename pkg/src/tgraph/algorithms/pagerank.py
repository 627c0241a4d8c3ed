"""PageRank over a view's directed edge presence.

Pure-Python power iteration on adjacency lists. Each present (source, target)
pair carries weight 1 no matter how many events back it; mass from dangling
nodes is redistributed uniformly, so scores keep summing to 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import EmptyViewError, InvalidArgumentError
from ..views import GraphView
from .results import AlgorithmResult


@dataclass(frozen=True)
class PageRankConfig:
    damping: float = 0.85
    tolerance: float = 1e-7  # L1 residual between successive score vectors
    max_iterations: int = 100

    def validate(self) -> None:
        if not (0.0 < self.damping < 1.0):
            raise InvalidArgumentError("damping must be in (0, 1)")
        if self.tolerance <= 0.0:
            raise InvalidArgumentError("tolerance must be positive")
        if self.max_iterations < 1:
            raise InvalidArgumentError("max_iterations must be >= 1")


def pagerank(view: GraphView, config: PageRankConfig | None = None) -> AlgorithmResult:
    cfg = config if config is not None else PageRankConfig()
    cfg.validate()
    nodes = list(view.iter_present_nodes())
    if not nodes:
        raise EmptyViewError("pagerank needs at least one visible node")
    index = {nid: i for i, nid in enumerate(nodes)}
    n = len(nodes)

    out_nbrs: list[list[int]] = [[] for _ in range(n)]
    for erec in view.iter_present_edges():
        # Present edges always have both endpoints present.
        out_nbrs[index[erec.source]].append(index[erec.target])
    out_nbrs = [sorted(set(nbrs)) for nbrs in out_nbrs]

    d = cfg.damping
    scores = [1.0 / n] * n
    iterations = 0
    converged = False
    while iterations < cfg.max_iterations:
        iterations += 1
        dangling = sum(scores[i] for i in range(n) if not out_nbrs[i])
        base = (1.0 - d) / n + d * dangling / n
        fresh = [base] * n
        for i, nbrs in enumerate(out_nbrs):
            if nbrs:
                share = d * scores[i] / len(nbrs)
                for j in nbrs:
                    fresh[j] += share
        residual = sum(abs(fresh[i] - scores[i]) for i in range(n))
        scores = fresh
        if residual < cfg.tolerance:
            converged = True
            break

    g = view.graph
    rows = {g.external_id(nid): scores[index[nid]] for nid in nodes}
    return AlgorithmResult(
        name="pagerank",
        rows=rows,
        metadata={
            "view": view.describe(),
            "damping": cfg.damping,
            "tolerance": cfg.tolerance,
            "max_iterations": cfg.max_iterations,
            "iterations": iterations,
            "converged": converged,
            "stopped_by": "tolerance" if converged else "max_iterations",
        },
    )
