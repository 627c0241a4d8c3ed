"""Base temporal graph: a chronological log of structural and property changes.

The store is append-friendly during a single-writer ingestion phase and is
treated as immutable afterwards; views (see :mod:`tgraph.views`) hold shared
read access and never copy histories.

Timestamps are signed 64-bit integer ticks and the engine never interprets
their unit. Every update gets a sequence index that is strictly increasing in
ingestion order, so events with equal timestamps stay deterministically
ordered. All per-entity histories are kept sorted by (timestamp, sequence).
"""

from __future__ import annotations

from bisect import bisect_left, insort
from dataclasses import dataclass, field
from typing import Any, Iterator

from .errors import (
    EmptyGraphError,
    InvalidArgumentError,
    NotFoundError,
    TimeOverflowError,
    TypeStabilityError,
)

# Sentinels for unbounded window sides; event timestamps must stay strictly
# inside so that t+1 / t-1 arithmetic cannot overflow.
TIME_MIN = -(2**63)
TIME_MAX = 2**63 - 1

DEFAULT_LAYER = "_default"

ExternalId = str | int
PropValue = int | float | str | bool

_TAGS = {bool: "bool", int: "int", float: "float", str: "str"}


def prop_tag(value: Any) -> str:
    """Type tag of a property value; bool checked before int on purpose."""
    for cls in (bool, int, float, str):
        if isinstance(value, cls):
            return _TAGS[cls]
    raise InvalidArgumentError(f"unsupported property value type: {type(value).__name__}")


def check_time(t: int) -> int:
    if not isinstance(t, int) or isinstance(t, bool):
        raise InvalidArgumentError(f"timestamp must be an integer tick, got {t!r}")
    if not (TIME_MIN < t < TIME_MAX):
        raise TimeOverflowError(f"timestamp {t} outside the signed 64-bit tick range")
    return t


def checked_add(t: int, delta: int) -> int:
    """Tick addition; overflow past the sentinel range is an error."""
    out = t + delta
    if not (TIME_MIN <= out <= TIME_MAX):
        raise TimeOverflowError(f"{t} + {delta} overflows the tick range")
    return out


class ScanCounter:
    """Counts history scans so tests can assert view construction does none."""

    __slots__ = ("value",)

    def __init__(self) -> None:
        self.value = 0

    def bump(self, n: int = 1) -> None:
        self.value += n

    def reset(self) -> None:
        self.value = 0


#: Global instrumentation counter, bumped whenever a per-entity history is
#: scanned. Not thread-safe; meant for tests.
scan_counter = ScanCounter()


@dataclass(frozen=True)
class NodeRef:
    external_id: ExternalId
    internal_id: int


@dataclass(frozen=True)
class EdgeRef:
    source: NodeRef
    target: NodeRef


@dataclass
class LayerHistory:
    """Per-layer event lists of one directed edge, sorted by (time, seq)."""

    additions: list[tuple[int, int, dict[str, PropValue]]] = field(default_factory=list)
    deletions: list[tuple[int, int]] = field(default_factory=list)


@dataclass
class _NodeRecord:
    external_id: ExternalId
    internal_id: int
    # Explicit node update events only; incident edge events are merged in by
    # node_history() on demand.
    activity: list[tuple[int, int]] = field(default_factory=list)
    temporal_props: dict[str, list[tuple[int, int, PropValue]]] = field(default_factory=dict)
    constant_props: dict[str, PropValue] = field(default_factory=dict)


@dataclass
class _EdgeRecord:
    source: int
    target: int
    index: int
    layers: dict[int, LayerHistory] = field(default_factory=dict)


def _insort_event(lst: list, item: tuple) -> None:
    # Sequence indexes grow monotonically, so appends dominate; out-of-order
    # timestamps fall back to a sorted insert on (t, seq).
    if not lst or item[:2] >= lst[-1][:2]:
        lst.append(item)
    else:
        insort(lst, item, key=lambda e: (e[0], e[1]))


class TemporalGraph:
    """Chronological event log with per-entity indexed histories.

    Single writer during ingestion; afterwards safe for unlimited concurrent
    readers. All read operations leave the store untouched.
    """

    def __init__(self) -> None:
        self._nodes: list[_NodeRecord] = []
        self._id_map: dict[ExternalId, int] = {}
        self._edges: list[_EdgeRecord] = []
        self._edge_map: dict[tuple[int, int], int] = {}
        self._out: list[list[int]] = []
        self._in: list[list[int]] = []
        self._layer_names: list[str] = [DEFAULT_LAYER]
        self._layer_map: dict[str, int] = {DEFAULT_LAYER: 0}
        self._earliest: int | None = None
        self._latest: int | None = None
        self._next_seq = 0
        self.graph_constant_props: dict[str, PropValue] = {}
        self.graph_temporal_props: dict[str, list[tuple[int, int, PropValue]]] = {}

    # -- internals ---------------------------------------------------------

    def _touch_time(self, t: int) -> None:
        if self._earliest is None or t < self._earliest:
            self._earliest = t
        if self._latest is None or t > self._latest:
            self._latest = t

    def _next_sequence(self) -> int:
        seq = self._next_seq
        self._next_seq += 1
        return seq

    def _intern_node(self, external_id: ExternalId) -> _NodeRecord:
        nid = self._id_map.get(external_id)
        if nid is None:
            nid = len(self._nodes)
            self._id_map[external_id] = nid
            self._nodes.append(_NodeRecord(external_id=external_id, internal_id=nid))
            self._out.append([])
            self._in.append([])
        return self._nodes[nid]

    def _intern_edge(self, src: int, dst: int) -> _EdgeRecord:
        eid = self._edge_map.get((src, dst))
        if eid is None:
            eid = len(self._edges)
            self._edge_map[(src, dst)] = eid
            self._edges.append(_EdgeRecord(source=src, target=dst, index=eid))
            self._out[src].append(eid)
            self._in[dst].append(eid)
        return self._edges[eid]

    def _apply_props(
        self,
        entity: str,
        table: dict[str, list[tuple[int, int, PropValue]]],
        t: int,
        seq: int,
        props: dict[str, PropValue],
    ) -> None:
        for name, value in props.items():
            tag = prop_tag(value)
            history = table.get(name)
            if history is None:
                table[name] = [(t, seq, value)]
                continue
            have = prop_tag(history[0][2])
            if have != tag:
                raise TypeStabilityError(entity, name, have, tag)
            _insort_event(history, (t, seq, value))

    def _node_record(self, external_id: ExternalId) -> _NodeRecord:
        nid = self._id_map.get(external_id)
        if nid is None:
            raise NotFoundError(f"unknown node {external_id!r}")
        return self._nodes[nid]

    # -- update API --------------------------------------------------------

    def add_node(
        self, t: int, external_id: ExternalId, props: dict[str, PropValue] | None = None
    ) -> NodeRef:
        """Record a node update at ``t``; creates the node on first sight.

        Property values are appended to the node's temporal histories; writing
        a value whose type differs from an earlier update of the same name is
        a type-stability error.
        """
        check_time(t)
        rec = self._intern_node(external_id)
        seq = self._next_sequence()
        if props:
            self._apply_props(f"node {external_id!r}", rec.temporal_props, t, seq, props)
        _insort_event(rec.activity, (t, seq))
        self._touch_time(t)
        return NodeRef(external_id, rec.internal_id)

    def add_edge(
        self,
        t: int,
        src: ExternalId,
        dst: ExternalId,
        props: dict[str, PropValue] | None = None,
        layer: str | None = None,
    ) -> EdgeRef:
        """Record an addition event for the directed edge src→dst.

        Unseen endpoints are created implicitly. Repeated additions between
        the same pair accumulate on one edge history; the history is the edge.
        """
        check_time(t)
        layer_idx = self.register_layer(layer) if layer is not None else 0
        s = self._intern_node(src)
        d = self._intern_node(dst)
        erec = self._intern_edge(s.internal_id, d.internal_id)
        hist = erec.layers.setdefault(layer_idx, LayerHistory())
        seq = self._next_sequence()
        prop_map: dict[str, PropValue] = {}
        if props:
            # Edge property type stability is tracked across the pair's whole
            # history (all layers), keyed by the first event that set the name.
            self._validate_edge_props(erec, props)
            prop_map = dict(props)
        _insort_event(hist.additions, (t, seq, prop_map))
        self._touch_time(t)
        return EdgeRef(NodeRef(src, s.internal_id), NodeRef(dst, d.internal_id))

    def _validate_edge_props(self, erec: _EdgeRecord, props: dict[str, PropValue]) -> None:
        seen: dict[str, str] = {}
        for hist in erec.layers.values():
            for _, _, pm in hist.additions:
                for name, value in pm.items():
                    seen.setdefault(name, prop_tag(value))
        for name, value in props.items():
            tag = prop_tag(value)
            if name in seen and seen[name] != tag:
                src = self._nodes[erec.source].external_id
                dst = self._nodes[erec.target].external_id
                raise TypeStabilityError(f"edge {src!r}->{dst!r}", name, seen[name], tag)

    def delete_edge(
        self, t: int, src: ExternalId, dst: ExternalId, layer: str | None = None
    ) -> EdgeRef:
        """Record a deletion event; resolved against additions only at view time.

        Deleting a never-added edge is recorded verbatim (the deletion defines
        an implicit open-start interval under persistent semantics).
        """
        check_time(t)
        layer_idx = self.register_layer(layer) if layer is not None else 0
        s = self._intern_node(src)
        d = self._intern_node(dst)
        erec = self._intern_edge(s.internal_id, d.internal_id)
        hist = erec.layers.setdefault(layer_idx, LayerHistory())
        seq = self._next_sequence()
        _insort_event(hist.deletions, (t, seq))
        self._touch_time(t)
        return EdgeRef(NodeRef(src, s.internal_id), NodeRef(dst, d.internal_id))

    def set_graph_constants(self, props: dict[str, PropValue]) -> None:
        for name, value in props.items():
            tag = prop_tag(value)
            if name in self.graph_constant_props:
                have = prop_tag(self.graph_constant_props[name])
                if have != tag:
                    raise TypeStabilityError("graph", name, have, tag)
            self.graph_constant_props[name] = value

    def add_graph_properties(self, t: int, props: dict[str, PropValue]) -> None:
        check_time(t)
        seq = self._next_sequence()
        self._apply_props("graph", self.graph_temporal_props, t, seq, props)
        self._touch_time(t)

    def set_node_constants(self, external_id: ExternalId, props: dict[str, PropValue]) -> None:
        rec = self._node_record(external_id)
        for name, value in props.items():
            tag = prop_tag(value)
            if name in rec.constant_props:
                have = prop_tag(rec.constant_props[name])
                if have != tag:
                    raise TypeStabilityError(f"node {external_id!r}", name, have, tag)
            rec.constant_props[name] = value

    def register_layer(self, name: str) -> int:
        idx = self._layer_map.get(name)
        if idx is None:
            idx = len(self._layer_names)
            self._layer_map[name] = idx
            self._layer_names.append(name)
        return idx

    # -- read API ----------------------------------------------------------

    def earliest_time(self) -> int:
        if self._earliest is None:
            raise EmptyGraphError("graph has no events")
        return self._earliest

    def latest_time(self) -> int:
        if self._latest is None:
            raise EmptyGraphError("graph has no events")
        return self._latest

    def count_nodes(self) -> int:
        return len(self._nodes)

    def count_edges(self) -> int:
        return len(self._edges)

    def layer_names(self) -> list[str]:
        return list(self._layer_names)

    def layer_index(self, name: str) -> int:
        idx = self._layer_map.get(name)
        if idx is None:
            raise NotFoundError(f"unknown layer {name!r}")
        return idx

    def has_node(self, external_id: ExternalId) -> bool:
        return external_id in self._id_map

    def node_ref(self, external_id: ExternalId) -> NodeRef:
        rec = self._node_record(external_id)
        return NodeRef(rec.external_id, rec.internal_id)

    def internal_id(self, external_id: ExternalId) -> int:
        return self._node_record(external_id).internal_id

    def external_id(self, internal_id: int) -> ExternalId:
        return self._nodes[internal_id].external_id

    def node_history(self, external_id: ExternalId) -> list[int]:
        """Sorted multiset of timestamps of every event mentioning the node."""
        rec = self._node_record(external_id)
        scan_counter.bump()
        times = [t for t, _ in rec.activity]
        nid = rec.internal_id
        for eid in self._out[nid]:
            times.extend(self._edge_event_times(self._edges[eid]))
        for eid in self._in[nid]:
            erec = self._edges[eid]
            if erec.source == nid:
                continue  # self-loop already counted once via the out list
            times.extend(self._edge_event_times(erec))
        times.sort()
        return times

    def _edge_event_times(self, erec: _EdgeRecord) -> list[int]:
        out = []
        for hist in erec.layers.values():
            out.extend(t for t, _, _ in hist.additions)
            out.extend(t for t, _ in hist.deletions)
        return out

    def edge_history(
        self, src: ExternalId, dst: ExternalId, layer: str | None = None
    ) -> tuple[list[int], list[int]]:
        """(addition times, deletion times) of src→dst, optionally one layer."""
        erec = self._edge_record(src, dst)
        scan_counter.bump()
        if layer is not None:
            wanted = {self.layer_index(layer)}
        else:
            wanted = set(erec.layers)
        additions: list[int] = []
        deletions: list[int] = []
        for idx, hist in erec.layers.items():
            if idx not in wanted:
                continue
            additions.extend(t for t, _, _ in hist.additions)
            deletions.extend(t for t, _ in hist.deletions)
        additions.sort()
        deletions.sort()
        return additions, deletions

    def _edge_record(self, src: ExternalId, dst: ExternalId) -> _EdgeRecord:
        try:
            s = self._node_record(src).internal_id
            d = self._node_record(dst).internal_id
        except NotFoundError:
            raise NotFoundError(f"unknown edge {src!r}->{dst!r}") from None
        eid = self._edge_map.get((s, d))
        if eid is None:
            raise NotFoundError(f"unknown edge {src!r}->{dst!r}")
        return self._edges[eid]

    def node_property_history(
        self, external_id: ExternalId, name: str
    ) -> list[tuple[int, PropValue]]:
        rec = self._node_record(external_id)
        scan_counter.bump()
        return [(t, v) for t, _, v in rec.temporal_props.get(name, [])]

    # -- iteration helpers used by views / io ------------------------------

    def iter_node_records(self) -> Iterator[_NodeRecord]:
        return iter(self._nodes)

    def iter_edge_records(self) -> Iterator[_EdgeRecord]:
        return iter(self._edges)

    def out_edges(self, internal_id: int) -> list[int]:
        return self._out[internal_id]

    def in_edges(self, internal_id: int) -> list[int]:
        return self._in[internal_id]

    def edge_record(self, index: int) -> _EdgeRecord:
        return self._edges[index]

    def node_record(self, internal_id: int) -> _NodeRecord:
        return self._nodes[internal_id]

    def resolve_many(self, external_ids) -> set[int]:
        """Internal ids for the given externals; unknown ids silently dropped."""
        out = set()
        for ext in external_ids:
            nid = self._id_map.get(ext)
            if nid is not None:
                out.add(nid)
        return out

    # -- consistency -------------------------------------------------------

    def validate(self) -> None:
        """Full consistency walk: adjacency lists ↔ edge table bijection."""
        seen = set()
        for nid, edge_ids in enumerate(self._out):
            for eid in edge_ids:
                erec = self._edges[eid]
                assert erec.source == nid, "out-list entry with wrong source"
                assert eid not in seen, "edge listed twice in out-lists"
                seen.add(eid)
        assert seen == set(range(len(self._edges))), "edge missing from out-lists"
        seen_in = set()
        for nid, edge_ids in enumerate(self._in):
            for eid in edge_ids:
                erec = self._edges[eid]
                assert erec.target == nid, "in-list entry with wrong target"
                assert eid not in seen_in, "edge listed twice in in-lists"
                seen_in.add(eid)
        assert seen_in == set(range(len(self._edges))), "edge missing from in-lists"
        for (s, d), eid in self._edge_map.items():
            erec = self._edges[eid]
            assert (erec.source, erec.target) == (s, d)
        if self._earliest is not None:
            lo, hi = self._recompute_bounds()
            assert (lo, hi) == (self._earliest, self._latest), "stale time bounds"

    def _recompute_bounds(self) -> tuple[int, int]:
        times: list[int] = []
        for rec in self._nodes:
            times.extend(t for t, _ in rec.activity)
            for hist in rec.temporal_props.values():
                times.extend(t for t, _, _ in hist)
        for erec in self._edges:
            times.extend(self._edge_event_times(erec))
        for hist in self.graph_temporal_props.values():
            times.extend(t for t, _, _ in hist)
        return min(times), max(times)


def count_in_range(events: list[tuple], start: int, end: int) -> int:
    """Events with start <= t < end in a (t, seq, ...) sorted list."""
    scan_counter.bump()
    lo = bisect_left(events, start, key=lambda e: e[0])
    hi = bisect_left(events, end, key=lambda e: e[0])
    return hi - lo


def any_in_range(events: list[tuple], start: int, end: int) -> bool:
    return count_in_range(events, start, end) > 0


def slice_in_range(events: list[tuple], start: int, end: int) -> list[tuple]:
    scan_counter.bump()
    lo = bisect_left(events, start, key=lambda e: e[0])
    hi = bisect_left(events, end, key=lambda e: e[0])
    return events[lo:hi]


def latest_at_or_before(
    events: list[tuple], end_exclusive: int, start_inclusive: int = TIME_MIN
) -> tuple | None:
    """Greatest (t, seq) entry with start_inclusive <= t < end_exclusive."""
    scan_counter.bump()
    hi = bisect_left(events, end_exclusive, key=lambda e: e[0])
    if hi == 0:
        return None
    entry = events[hi - 1]
    if entry[0] < start_inclusive:
        return None
    return entry


__all__ = [
    "DEFAULT_LAYER",
    "TIME_MAX",
    "TIME_MIN",
    "EdgeRef",
    "LayerHistory",
    "NodeRef",
    "PropValue",
    "ExternalId",
    "ScanCounter",
    "TemporalGraph",
    "check_time",
    "checked_add",
    "prop_tag",
    "scan_counter",
    "count_in_range",
    "any_in_range",
    "slice_in_range",
    "latest_at_or_before",
]
