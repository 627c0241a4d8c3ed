"""Null model generation: seeded timestamp shuffling.

Edge-addition timestamps are permuted uniformly at random among all addition
events; node updates, deletions, layers, property payloads and the static
structure stay untouched. The shuffled graph is rebuilt by replaying every
event in canonical order (new timestamp, original ingestion order), so all
store invariants hold on the output.
"""

from __future__ import annotations

import random

from ..store import TemporalGraph


def _collect_events(g: TemporalGraph) -> list[list]:
    """Every event as a mutable [t, seq, kind, *payload] row."""
    events: list[list] = []
    for rec in g.iter_node_records():
        props_by_seq: dict[int, dict] = {}
        for name, hist in rec.temporal_props.items():
            for t, s, v in hist:
                props_by_seq.setdefault(s, {})[name] = v
        for t, s in rec.activity:
            events.append([t, s, "node", rec.external_id, props_by_seq.get(s, {})])
    layer_names = g.layer_names()
    for erec in g.iter_edge_records():
        src = g.external_id(erec.source)
        dst = g.external_id(erec.target)
        for idx, hist in erec.layers.items():
            layer = layer_names[idx]
            for t, s, props in hist.additions:
                events.append([t, s, "edge_add", src, dst, layer, dict(props)])
            for t, s in hist.deletions:
                events.append([t, s, "edge_del", src, dst, layer])
    for name, hist in g.graph_temporal_props.items():
        for t, s, v in hist:
            events.append([t, s, "graph_prop", name, v])
    return events


def _replay(g: TemporalGraph, events: list[list]) -> TemporalGraph:
    events = sorted(events, key=lambda e: (e[0], e[1]))
    out = TemporalGraph()
    for name in g.layer_names():
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
    for rec in g.iter_node_records():
        if rec.constant_props and out.has_node(rec.external_id):
            out.set_node_constants(rec.external_id, dict(rec.constant_props))
    return out


def shuffle_timestamps(graph: TemporalGraph, seed: int) -> TemporalGraph:
    """New graph with edge-addition timestamps permuted (seeded, reproducible)."""
    events = _collect_events(graph)
    addition_rows = [ev for ev in events if ev[2] == "edge_add"]
    times = [ev[0] for ev in addition_rows]
    rng = random.Random(seed)
    rng.shuffle(times)
    for ev, t in zip(addition_rows, times):
        ev[0] = t
    return _replay(graph, events)
