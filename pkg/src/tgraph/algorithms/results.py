"""Result containers plus degree stats, ranking and windowed execution."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from ..errors import GraphError, InvalidArgumentError
from ..store import TIME_MIN, ExternalId
from ..views import GraphView, WindowSet, id_sort_key


@dataclass
class AlgorithmResult:
    """Per-node keyed result table with algorithm metadata."""

    name: str
    rows: dict[ExternalId, Any]
    metadata: dict[str, Any] = field(default_factory=dict)

    def sorted_rows(self) -> list[tuple[ExternalId, Any]]:
        return sorted(self.rows.items(), key=lambda kv: id_sort_key(kv[0]))


def _rank_value(value: Any) -> Any:
    # degree_stats rows are {in, out, total} maps; rank those by total.
    if isinstance(value, dict):
        return value["total"]
    return value


def top_k(result: AlgorithmResult, k: int) -> list[tuple[ExternalId, Any]]:
    """Top ``k`` rows by value descending, ties broken by external id ascending."""
    if k <= 0:
        raise InvalidArgumentError("k must be positive")
    ordered = sorted(
        result.rows.items(),
        key=lambda kv: (-_rank_value(kv[1]), id_sort_key(kv[0])),
    )
    return ordered[:k]


def degree_stats(view: GraphView, config: Any = None) -> AlgorithmResult:
    """Per-node in/out/total degree over the view's present edges."""
    rows: dict[ExternalId, dict[str, int]] = {}
    g = view.graph
    indeg: dict[int, int] = {}
    outdeg: dict[int, int] = {}
    for erec in view.iter_present_edges():
        outdeg[erec.source] = outdeg.get(erec.source, 0) + 1
        indeg[erec.target] = indeg.get(erec.target, 0) + 1
    for nid in view.iter_present_nodes():
        i = indeg.get(nid, 0)
        o = outdeg.get(nid, 0)
        rows[g.external_id(nid)] = {"in": i, "out": o, "total": i + o}
    return AlgorithmResult(name="degree", rows=rows, metadata={"view": view.describe()})


@dataclass
class WindowedResults:
    """One result per window; nodes missing from a window get explicit None."""

    algorithm: str
    windows: list[tuple[int | None, int | None]]  # None marks an unbounded side
    rows: dict[ExternalId, list[Any]]
    errors: dict[str, str] = field(default_factory=dict)
    metadata: dict[str, Any] = field(default_factory=dict)

    def labels(self) -> list[str]:
        out = []
        for start, end in self.windows:
            out.append(str(start) if start is not None else f"until_{end}")
        return out

    def sorted_rows(self) -> list[tuple[ExternalId, list[Any]]]:
        return sorted(self.rows.items(), key=lambda kv: id_sort_key(kv[0]))


def run_over_windows(
    view: GraphView,
    windows: WindowSet,
    algorithm: Callable[..., AlgorithmResult],
    config: Any = None,
) -> WindowedResults:
    """Evaluate ``algorithm`` per window; failures are recorded, not fatal."""
    per_window: list[dict[ExternalId, Any]] = []
    labels: list[tuple[int | None, int | None]] = []
    errors: dict[str, str] = {}
    name = getattr(algorithm, "__name__", "algorithm")
    for w in windows:
        start = None if w.start == TIME_MIN else w.start
        labels.append((start, w.end))
        child = view.with_window(w.start, w.end)
        try:
            result = algorithm(child, config) if config is not None else algorithm(child)
            name = result.name
            per_window.append(result.rows)
        except GraphError as exc:
            key = str(start) if start is not None else f"until_{w.end}"
            errors[key] = str(exc)
            per_window.append({})
    all_nodes = sorted({n for rows in per_window for n in rows}, key=id_sort_key)
    table = {
        node: [rows.get(node) for rows in per_window] for node in all_nodes
    }
    return WindowedResults(
        algorithm=name,
        windows=labels,
        rows=table,
        errors=errors,
        metadata={"view": view.describe(), "window_count": len(labels)},
    )
