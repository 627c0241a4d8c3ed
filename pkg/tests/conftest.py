import random

import pytest

from tgraph import GraphView, Semantics, TemporalGraph, full_view, graph_document


def make_random_graph(
    rng: random.Random,
    n_nodes: int = 8,
    n_events: int = 60,
    n_layers: int = 1,
    p_delete: float = 0.0,
    p_node: float = 0.0,
    with_props: bool = False,
    t_hi: int | None = None,
    id_prefix: str = "n",
) -> TemporalGraph:
    g = TemporalGraph()
    names = [f"{id_prefix}{i}" for i in range(n_nodes)]
    layers: list[str | None] = [None]
    layers += [f"L{i}" for i in range(1, n_layers)]
    hi = t_hi if t_hi is not None else max(3 * n_events, 10)
    for _ in range(n_events):
        t = rng.randint(0, hi)
        roll = rng.random()
        if roll < p_node:
            props = {"score": rng.randint(0, 5)} if with_props and rng.random() < 0.7 else None
            g.add_node(t, rng.choice(names), props)
        elif roll < p_node + p_delete:
            g.delete_edge(t, rng.choice(names), rng.choice(names), layer=rng.choice(layers))
        else:
            props = {"w": round(rng.random(), 6)} if with_props and rng.random() < 0.5 else None
            g.add_edge(t, rng.choice(names), rng.choice(names), props, layer=rng.choice(layers))
    return g


def random_view(rng: random.Random, g: TemporalGraph) -> GraphView:
    v = full_view(g)
    if rng.random() < 0.5:
        v = v.with_semantics(Semantics.PERSISTENT)
    try:
        lo, hi = g.earliest_time(), g.latest_time()
    except Exception:
        lo, hi = 0, 10
    if rng.random() < 0.7:
        a = rng.randint(lo - 2, hi + 2)
        b = rng.randint(lo - 2, hi + 2)
        if a == b:
            b += 1
        v = v.with_window(min(a, b), max(a, b) + (0 if a != b else 1))
    elif rng.random() < 0.3:
        v = v.at(rng.randint(lo, hi))
    names = g.layer_names()
    if len(names) > 1 and rng.random() < 0.5:
        v = v.layers(rng.sample(names, rng.randint(1, len(names))))
    if rng.random() < 0.5:
        ids = [g.external_id(i) for i in range(g.count_nodes())]
        if ids:
            v = v.subgraph(rng.sample(ids, rng.randint(1, len(ids))))
    return v


def events_of(view: GraphView) -> list[tuple[int, str, str]]:
    """Visible addition events as (t, src_external, dst_external)."""
    g = view.graph
    return [
        (t, g.external_id(u), g.external_id(v))
        for t, _, u, v in view.visible_addition_events()
    ]


def canonical_doc(g: TemporalGraph) -> dict:
    """Event-equality witness: graphs are event-equal iff documents match."""
    return graph_document(full_view(g))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
