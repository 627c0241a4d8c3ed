"""Lazy constraint stacks over a shared temporal graph.

A view is an immutable value object: a window, a layer subset, a node subset
and a deletion semantics over one shared :class:`~tgraph.store.TemporalGraph`.
Constructing or refining a view does no per-event work; every accessor
resolves on the fly from the base histories.

Deletion semantics
------------------
* ``EVENT``: an edge is present in a window iff one of its addition events
  falls inside the window.
* ``PERSISTENT``: an edge is present iff one of its alive intervals intersects
  the window. Intervals are built by scanning the merged addition/deletion
  sequence in (time, seq) order: an addition opens an interval if none is
  open, a deletion closes the open one; a trailing open interval extends to
  +inf; a deletion with no open interval and no earlier addition closes the
  implicit interval (-inf, t); any other unmatched deletion is inert.

A node is present iff it passes the node filter and it has an explicit node
update inside the window, or a present incident edge, or (under event
semantics) an incident edge event inside the window.

``at(t)`` is the snapshot view, "state as of t": under event semantics it is
exactly ``window(-inf, t+1)``; under persistent semantics edge presence asks
whether an alive interval contains ``t`` itself, so an edge deleted before
``t`` is gone even though its interval intersects ``(-inf, t+1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterator

from .errors import EmptyGraphError, InvalidArgumentError, NotFoundError
from .store import (
    TIME_MAX,
    TIME_MIN,
    ExternalId,
    LayerHistory,
    PropValue,
    TemporalGraph,
    any_in_range,
    check_time,
    checked_add,
    latest_at_or_before,
    scan_counter,
    slice_in_range,
)


class Semantics(Enum):
    EVENT = "event"
    PERSISTENT = "persistent"


@dataclass(frozen=True)
class Window:
    """Half-open tick range [start, end); may be empty after intersection."""

    start: int
    end: int

    def is_empty(self) -> bool:
        return self.start >= self.end

    def intersect(self, other: "Window") -> "Window":
        return Window(max(self.start, other.start), min(self.end, other.end))


FULL_WINDOW = Window(TIME_MIN, TIME_MAX)


@dataclass(frozen=True)
class WindowSet:
    """Ordered windows from a rolling or expanding generator."""

    windows: tuple[Window, ...]

    def __iter__(self) -> Iterator[Window]:
        return iter(self.windows)

    def __len__(self) -> int:
        return len(self.windows)

    def __getitem__(self, i: int) -> Window:
        return self.windows[i]


def alive_intervals(
    additions: list[tuple[int, int]], deletions: list[tuple[int, int]]
) -> list[tuple[int, int]]:
    """Alive intervals [start, end) from (t, seq) addition/deletion events.

    TIME_MIN / TIME_MAX stand in for the unbounded ends; an interval starting
    at TIME_MIN is the implicit one defined by a deletion that precedes every
    addition.
    """
    merged = sorted(
        [(t, s, 0) for t, s in additions] + [(t, s, 1) for t, s in deletions]
    )
    intervals: list[tuple[int, int]] = []
    open_start: int | None = None
    seen_addition = False
    for t, _, kind in merged:
        if kind == 0:
            if open_start is None:
                open_start = t
            seen_addition = True
        else:
            if open_start is not None:
                intervals.append((open_start, t))
                open_start = None
            elif not seen_addition:
                intervals.append((TIME_MIN, t))
            # unmatched deletion after an addition: inert
    if open_start is not None:
        intervals.append((open_start, TIME_MAX))
    return intervals


def _layer_intervals(hist: LayerHistory) -> list[tuple[int, int]]:
    scan_counter.bump()
    return alive_intervals(
        [(t, s) for t, s, _ in hist.additions], list(hist.deletions)
    )


def id_sort_key(ext: ExternalId) -> tuple:
    """Total order over mixed int/str external ids."""
    if isinstance(ext, bool) or not isinstance(ext, int):
        return (1, str(ext))
    return (0, ext)


@dataclass(frozen=True, eq=False)
class GraphView:
    """Immutable constraint stack; refinement never mutates the parent."""

    graph: TemporalGraph
    window: Window = FULL_WINDOW
    layer_set: frozenset[int] | None = None
    node_set: frozenset[int] | None = None
    semantics: Semantics = Semantics.EVENT
    snapshot: bool = False

    # -- constraint constructors --------------------------------------------

    def with_window(self, start: int, end: int) -> "GraphView":
        if start >= end:
            raise InvalidArgumentError("start must precede end")
        w = self.window.intersect(Window(start, end))
        return replace(self, window=w, snapshot=False)

    def at(self, t: int) -> "GraphView":
        """Snapshot view: state as of ``t`` (events at ``t`` included)."""
        check_time(t)
        w = self.window.intersect(Window(TIME_MIN, checked_add(t, 1)))
        return replace(self, window=w, snapshot=True)

    def layers(self, names: list[str]) -> "GraphView":
        resolved = frozenset(self.graph.layer_index(n) for n in names)
        if self.layer_set is not None:
            resolved &= self.layer_set
        return replace(self, layer_set=resolved)

    def subgraph(self, node_ids) -> "GraphView":
        resolved = frozenset(self.graph.resolve_many(node_ids))
        if self.node_set is not None:
            resolved &= self.node_set
        return replace(self, node_set=resolved)

    def with_semantics(self, semantics: Semantics) -> "GraphView":
        return replace(self, semantics=semantics)

    # -- presence ------------------------------------------------------------

    def _layer_selected(self, layer_idx: int) -> bool:
        return self.layer_set is None or layer_idx in self.layer_set

    def _node_allowed(self, nid: int) -> bool:
        return self.node_set is None or nid in self.node_set

    def _layer_present(self, hist: LayerHistory) -> bool:
        w = self.window
        if w.is_empty():
            return False
        if self.semantics is Semantics.EVENT:
            return any_in_range(hist.additions, w.start, w.end)
        if self.snapshot:
            instant = w.end - 1
            return any(a <= instant < b for a, b in _layer_intervals(hist))
        return any(a < w.end and w.start < b for a, b in _layer_intervals(hist))

    def _edge_present(self, erec) -> bool:
        if not (self._node_allowed(erec.source) and self._node_allowed(erec.target)):
            return False
        return any(
            self._layer_present(hist)
            for idx, hist in erec.layers.items()
            if self._layer_selected(idx)
        )

    def _edge_event_in_window(self, erec) -> bool:
        if not (self._node_allowed(erec.source) and self._node_allowed(erec.target)):
            return False
        w = self.window
        if w.is_empty():
            return False
        for idx, hist in erec.layers.items():
            if not self._layer_selected(idx):
                continue
            if any_in_range(hist.additions, w.start, w.end):
                return True
            if any_in_range(hist.deletions, w.start, w.end):
                return True
        return False

    def _node_present(self, nid: int) -> bool:
        if not self._node_allowed(nid):
            return False
        if self.window.is_empty():
            return False
        g = self.graph
        rec = g.node_record(nid)
        if any_in_range(rec.activity, self.window.start, self.window.end):
            return True
        for eid in set(g.out_edges(nid)) | set(g.in_edges(nid)):
            erec = g.edge_record(eid)
            if self.semantics is Semantics.EVENT:
                if self._edge_event_in_window(erec):
                    return True
            elif self._edge_present(erec):
                return True
        return False

    # -- accessors -------------------------------------------------------------

    def iter_present_nodes(self) -> Iterator[int]:
        for nid in self._candidate_nodes():
            if self._node_present(nid):
                yield nid

    def _candidate_nodes(self) -> Iterator[int]:
        if self.node_set is not None:
            yield from sorted(self.node_set)
        else:
            yield from range(self.graph.count_nodes())

    def iter_present_edges(self) -> Iterator:
        g = self.graph
        if self.node_set is not None:
            seen = set()
            for nid in sorted(self.node_set):
                for eid in g.out_edges(nid):
                    if eid not in seen:
                        seen.add(eid)
                        erec = g.edge_record(eid)
                        if self._edge_present(erec):
                            yield erec
        else:
            for erec in g.iter_edge_records():
                if self._edge_present(erec):
                    yield erec

    def count_nodes(self) -> int:
        return sum(1 for _ in self.iter_present_nodes())

    def count_edges(self) -> int:
        return sum(1 for _ in self.iter_present_edges())

    def has_node(self, node: ExternalId) -> bool:
        if not self.graph.has_node(node):
            return False
        return self._node_present(self.graph.internal_id(node))

    def has_edge(self, src: ExternalId, dst: ExternalId) -> bool:
        g = self.graph
        if not (g.has_node(src) and g.has_node(dst)):
            return False
        s, d = g.internal_id(src), g.internal_id(dst)
        for eid in g.out_edges(s):
            erec = g.edge_record(eid)
            if erec.target == d:
                return self._edge_present(erec)
        return False

    def _require_visible(self, node: ExternalId) -> int:
        nid = self.graph.internal_id(node)  # raises NotFoundError if unknown
        if not self._node_present(nid):
            raise NotFoundError(f"node {node!r} is not visible in this view")
        return nid

    def degree(self, node: ExternalId, direction: str = "both") -> int:
        if direction not in ("in", "out", "both"):
            raise InvalidArgumentError(f"direction must be in/out/both, got {direction!r}")
        nid = self._require_visible(node)
        g = self.graph
        out_n = in_n = 0
        if direction in ("out", "both"):
            out_n = sum(
                1 for eid in g.out_edges(nid) if self._edge_present(g.edge_record(eid))
            )
        if direction in ("in", "both"):
            in_n = sum(
                1 for eid in g.in_edges(nid) if self._edge_present(g.edge_record(eid))
            )
        return out_n + in_n

    def neighbours(self, node: ExternalId, direction: str = "both") -> list[ExternalId]:
        if direction not in ("in", "out", "both"):
            raise InvalidArgumentError(f"direction must be in/out/both, got {direction!r}")
        nid = self._require_visible(node)
        g = self.graph
        found: set[int] = set()
        if direction in ("out", "both"):
            for eid in g.out_edges(nid):
                erec = g.edge_record(eid)
                if self._edge_present(erec):
                    found.add(erec.target)
        if direction in ("in", "both"):
            for eid in g.in_edges(nid):
                erec = g.edge_record(eid)
                if self._edge_present(erec):
                    found.add(erec.source)
        return sorted((g.external_id(n) for n in found), key=id_sort_key)

    def edge_list(self) -> list[tuple[ExternalId, ExternalId]]:
        g = self.graph
        pairs = [
            (g.external_id(e.source), g.external_id(e.target))
            for e in self.iter_present_edges()
        ]
        pairs.sort(key=lambda p: (id_sort_key(p[0]), id_sort_key(p[1])))
        return pairs

    def node_property_latest(self, node: ExternalId, name: str) -> PropValue | None:
        nid = self._require_visible(node)
        history = self.graph.node_record(nid).temporal_props.get(name)
        if not history:
            return None
        w = self.window
        if self.semantics is Semantics.EVENT:
            entry = latest_at_or_before(history, w.end, w.start)
        else:
            entry = latest_at_or_before(history, w.end)
        return entry[2] if entry is not None else None

    def node_ids(self) -> list[ExternalId]:
        g = self.graph
        return [g.external_id(n) for n in self.iter_present_nodes()]

    # -- time bounds -----------------------------------------------------------

    def _visible_time_bounds(self) -> tuple[int, int] | None:
        g = self.graph
        unconstrained = (
            self.window == FULL_WINDOW
            and self.layer_set is None
            and self.node_set is None
            and self.semantics is Semantics.EVENT
        )
        if unconstrained:
            try:
                return g.earliest_time(), g.latest_time()
            except EmptyGraphError:
                return None
        lo: int | None = None
        hi: int | None = None

        def take(t: int) -> None:
            nonlocal lo, hi
            if lo is None or t < lo:
                lo = t
            if hi is None or t > hi:
                hi = t

        w = self.window
        if w.is_empty():
            return None
        for nid in self._candidate_nodes():
            rec = g.node_record(nid)
            for t, _ in slice_in_range(rec.activity, w.start, w.end):
                take(t)
        for erec in g.iter_edge_records():
            if not (self._node_allowed(erec.source) and self._node_allowed(erec.target)):
                continue
            for idx, hist in erec.layers.items():
                if not self._layer_selected(idx):
                    continue
                for ev in self._visible_layer_events(hist):
                    take(ev[0])
        if lo is None:
            return None
        # Clamped into the window so the generators stay inside the view.
        return max(lo, w.start), min(hi, w.end - 1)

    def earliest_time(self) -> int:
        bounds = self._visible_time_bounds()
        if bounds is None:
            raise EmptyGraphError("view has no visible events")
        return bounds[0]

    def latest_time(self) -> int:
        bounds = self._visible_time_bounds()
        if bounds is None:
            raise EmptyGraphError("view has no visible events")
        return bounds[1]

    # -- window generators -------------------------------------------------------

    def rolling(self, window_size: int, step: int | None = None) -> WindowSet:
        """Fixed-width windows [s, s+size) from the earliest visible event,
        advancing by ``step`` (default: tiling) while s <= latest."""
        if window_size <= 0:
            raise InvalidArgumentError("window_size must be positive")
        if step is None:
            step = window_size
        if step <= 0:
            raise InvalidArgumentError("step must be positive")
        bounds = self._visible_time_bounds()
        if bounds is None:
            return WindowSet(())
        earliest, latest = bounds
        windows = []
        s = earliest
        while s <= latest:
            windows.append(Window(s, checked_add(s, window_size)))
            s = checked_add(s, step)
        return WindowSet(tuple(windows))

    def expanding(self, step: int) -> WindowSet:
        """Growing prefixes (-inf, earliest + k*step); the first bound past the
        latest visible event closes the set."""
        if step <= 0:
            raise InvalidArgumentError("step must be positive")
        bounds = self._visible_time_bounds()
        if bounds is None:
            return WindowSet(())
        earliest, latest = bounds
        windows = []
        end = checked_add(earliest, step)
        while True:
            windows.append(Window(TIME_MIN, end))
            if end > latest:
                break
            end = checked_add(end, step)
        return WindowSet(tuple(windows))

    # -- visible events & materialisation -----------------------------------------

    def _persistent_visible_events(self, hist: LayerHistory) -> list[tuple]:
        """(t, seq, kind, props) events backing intervals that qualify.

        kind 0 = addition, 1 = deletion. Inert deletions are dropped. Snapshot
        views drop events after the snapshot instant, except the deletion that
        defines an implicit (-inf, t) interval: it is the only witness of the
        edge's existence, so dropping it would erase a present edge.
        """
        w = self.window
        instant = w.end - 1 if self.snapshot else None
        out: list[tuple] = []
        for a, b in _layer_intervals(hist):
            if instant is not None:
                qualifies = a <= instant < b
            else:
                qualifies = a < w.end and w.start < b
            if not qualifies:
                continue
            scan_counter.bump()
            for t, s, props in hist.additions:
                if a <= t < b and (instant is None or t <= instant):
                    out.append((t, s, 0, props))
            if b != TIME_MAX:
                closing = next(
                    ((t, s) for t, s in hist.deletions if t == b), None
                )
                if closing is not None:
                    t, s = closing
                    implicit = a == TIME_MIN
                    if instant is None or t <= instant or implicit:
                        out.append((t, s, 1, None))
        return out

    def _event_visible_events(self, hist: LayerHistory) -> list[tuple]:
        w = self.window
        out = [
            (t, s, 0, props)
            for t, s, props in slice_in_range(hist.additions, w.start, w.end)
        ]
        out.extend((t, s, 1, None) for t, s in slice_in_range(hist.deletions, w.start, w.end))
        return out

    def _visible_layer_events(self, hist: LayerHistory) -> list[tuple]:
        if self.window.is_empty():
            return []
        if self.semantics is Semantics.EVENT:
            return self._event_visible_events(hist)
        return self._persistent_visible_events(hist)

    def visible_addition_events(self) -> list[tuple[int, int, int, int]]:
        """All visible edge-addition events as (t, seq, source, target), sorted.

        Source/target are internal ids; temporal algorithms (motifs,
        reachability) consume this stream.
        """
        g = self.graph
        events: list[tuple[int, int, int, int]] = []
        for erec in g.iter_edge_records():
            if not (self._node_allowed(erec.source) and self._node_allowed(erec.target)):
                continue
            for idx, hist in erec.layers.items():
                if not self._layer_selected(idx):
                    continue
                for t, s, kind, _ in self._visible_layer_events(hist):
                    if kind == 0:
                        events.append((t, s, erec.source, erec.target))
        events.sort()
        return events

    def materialise(self) -> TemporalGraph:
        """Standalone graph holding exactly the events visible in this view.

        Re-querying the result unconstrained (same semantics) gives the same
        answers as this view.
        """
        g = self.graph
        w = self.window
        events: list[tuple] = []

        present_nodes = list(self.iter_present_nodes())
        present_set = set(present_nodes)
        node_consts: list[tuple] = []
        for nid in present_nodes:
            rec = g.node_record(nid)
            ext = rec.external_id
            if not w.is_empty():
                start = w.start if self.semantics is Semantics.EVENT else TIME_MIN
                prop_by_seq: dict[int, dict[str, PropValue]] = {}
                for name, hist in rec.temporal_props.items():
                    for t, s, v in slice_in_range(hist, start, w.end):
                        prop_by_seq.setdefault(s, {})[name] = v
                for t, s in slice_in_range(rec.activity, start, w.end):
                    events.append((t, s, "node", ext, prop_by_seq.get(s, {})))
            if rec.constant_props:
                node_consts.append((ext, dict(rec.constant_props)))

        layer_names = g.layer_names()
        for erec in g.iter_edge_records():
            if erec.source not in present_set or erec.target not in present_set:
                continue
            src = g.external_id(erec.source)
            dst = g.external_id(erec.target)
            for idx, hist in erec.layers.items():
                if not self._layer_selected(idx):
                    continue
                for t, s, kind, props in self._visible_layer_events(hist):
                    if kind == 0:
                        events.append((t, s, "edge_add", src, dst, layer_names[idx], props))
                    else:
                        events.append((t, s, "edge_del", src, dst, layer_names[idx]))

        if not w.is_empty():
            start = w.start if self.semantics is Semantics.EVENT else TIME_MIN
            for name, hist in g.graph_temporal_props.items():
                for t, s, v in slice_in_range(hist, start, w.end):
                    events.append((t, s, "graph_prop", name, v))

        events.sort(key=lambda e: (e[0], e[1]))
        out = TemporalGraph()
        for name in layer_names:
            out.register_layer(name)
        if g.graph_constant_props:
            out.set_graph_constants(dict(g.graph_constant_props))
        for ev in events:
            kind = ev[2]
            if kind == "node":
                out.add_node(ev[0], ev[3], ev[4])
            elif kind == "edge_add":
                out.add_edge(ev[0], ev[3], ev[4], ev[6] or None, layer=ev[5])
            elif kind == "edge_del":
                out.delete_edge(ev[0], ev[3], ev[4], layer=ev[5])
            else:
                out.add_graph_properties(ev[0], {ev[3]: ev[4]})
        for ext, props in node_consts:
            if out.has_node(ext):
                out.set_node_constants(ext, props)
        return out

    def describe(self) -> dict:
        """Constraint stack as plain data, for result metadata."""
        g = self.graph
        out: dict = {"semantics": self.semantics.value}
        if self.window != FULL_WINDOW:
            out["window"] = [
                None if self.window.start == TIME_MIN else self.window.start,
                None if self.window.end == TIME_MAX else self.window.end,
            ]
        if self.snapshot:
            out["snapshot"] = True
        if self.layer_set is not None:
            names = g.layer_names()
            out["layers"] = sorted(names[i] for i in self.layer_set)
        if self.node_set is not None:
            out["nodes"] = [
                str(g.external_id(n))
                for n in sorted(self.node_set, key=lambda i: id_sort_key(g.external_id(i)))
            ]
        return out


def full_view(graph: TemporalGraph, semantics: Semantics = Semantics.EVENT) -> GraphView:
    return GraphView(graph=graph, semantics=semantics)


__all__ = [
    "FULL_WINDOW",
    "GraphView",
    "Semantics",
    "Window",
    "WindowSet",
    "alive_intervals",
    "full_view",
    "id_sort_key",
]
