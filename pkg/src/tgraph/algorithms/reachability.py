"""Temporal reachability along time-respecting paths.

A node w is reached from a seed set iff there is an event sequence
u0 -> u1 @ t1, ..., u_{k-1} -> u_k @ t_k with u0 a seed, u_k = w, t1 >= start
and strictly increasing timestamps. Arrival time is the earliest achievable
t_k; seeds report the start time itself.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import NotFoundError
from ..store import ExternalId
from ..views import GraphView
from .results import AlgorithmResult

_INF = float("inf")


@dataclass
class ReachabilityResult:
    reached: dict[ExternalId, int]

    def as_algorithm_result(self, view: GraphView, start: int) -> AlgorithmResult:
        return AlgorithmResult(
            name="reachability",
            rows=dict(self.reached),
            metadata={"view": view.describe(), "start": start},
        )


def temporal_reachability(
    view: GraphView,
    seeds: list[ExternalId],
    start: int,
    max_hops: int | None = None,
) -> ReachabilityResult:
    g = view.graph
    seed_ids: list[int] = []
    for s in seeds:
        if not view.has_node(s):
            raise NotFoundError(f"seed {s!r} is not visible in this view")
        seed_ids.append(g.internal_id(s))
    seed_set = set(seed_ids)
    events = view.visible_addition_events()

    arrival: dict[int, int] = {nid: start for nid in seed_ids}
    if max_hops is None:
        # Events in time order: every arrival settled before it can be departed
        # from, because consecutive hops must strictly increase in time.
        for t, _, u, v in events:
            if t < start:
                continue
            a = arrival.get(u)
            if a is None:
                continue
            if u in seed_set or t > a:
                if t < arrival.get(v, _INF):
                    arrival[v] = t
    else:
        for _ in range(max_hops):
            relaxed: dict[int, int] = {}
            for t, _, u, v in events:
                if t < start:
                    continue
                a = arrival.get(u)
                if a is None:
                    continue
                if (u in seed_set or t > a) and t < relaxed.get(v, _INF):
                    relaxed[v] = t
            changed = False
            for v, t in relaxed.items():
                if t < arrival.get(v, _INF):
                    arrival[v] = t
                    changed = True
            if not changed:
                break

    reached = {g.external_id(nid): t for nid, t in arrival.items()}
    return ReachabilityResult(reached=reached)
