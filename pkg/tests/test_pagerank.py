import random

import pytest

from tgraph import (
    EmptyViewError,
    InvalidArgumentError,
    PageRankConfig,
    TemporalGraph,
    degree_stats,
    full_view,
    pagerank,
    top_k,
)

from conftest import make_random_graph, random_view
from oracles import pagerank_dense_oracle


def test_three_cycle_is_uniform():
    g = TemporalGraph()
    g.add_edge(1, "a", "b")
    g.add_edge(2, "b", "c")
    g.add_edge(3, "c", "a")
    scores = pagerank(full_view(g)).rows
    for node in ("a", "b", "c"):
        assert scores[node] == pytest.approx(1 / 3, abs=1e-12)


def test_two_node_symmetric_pair():
    g = TemporalGraph()
    g.add_edge(1, "a", "b")
    g.add_edge(2, "b", "a")
    scores = pagerank(full_view(g)).rows
    assert scores["a"] == pytest.approx(0.5, abs=1e-12)
    assert scores["b"] == pytest.approx(0.5, abs=1e-12)


def test_star_matches_dense_oracle_and_closed_form():
    g = TemporalGraph()
    g.add_edge(1, "x", "h")
    g.add_edge(2, "y", "h")
    g.add_edge(3, "z", "h")
    view = full_view(g)
    cfg = PageRankConfig(damping=0.85, tolerance=1e-13, max_iterations=500)
    result = pagerank(view, cfg)

    nodes = list(view.iter_present_nodes())
    index = {nid: i for i, nid in enumerate(nodes)}
    edges = [
        (index[e.source], index[e.target]) for e in view.iter_present_edges()
    ]
    oracle = pagerank_dense_oracle(len(nodes), edges, damping=0.85)
    for nid in nodes:
        got = result.rows[view.graph.external_id(nid)]
        assert got == pytest.approx(oracle[index[nid]], abs=1e-9)
    # fixed point solved by hand: leaves 20/131 each, hub 71/131
    assert result.rows["x"] == pytest.approx(20 / 131, abs=1e-9)
    assert result.rows["h"] == pytest.approx(71 / 131, abs=1e-9)


def test_scores_sum_to_one_on_random_views():
    for seed in range(12):
        g = make_random_graph(
            random.Random(seed), n_nodes=9, n_events=70, n_layers=2, p_delete=0.1
        )
        v = random_view(random.Random(seed + 500), g)
        try:
            result = pagerank(v)
        except EmptyViewError:
            continue
        total = sum(result.rows.values())
        assert total == pytest.approx(1.0, abs=1e-9)
        assert all(s >= 0 for s in result.rows.values())


def test_empty_view_is_an_error():
    with pytest.raises(EmptyViewError):
        pagerank(full_view(TemporalGraph()))


def test_config_validation():
    v = full_view(TemporalGraph())
    with pytest.raises(InvalidArgumentError):
        PageRankConfig(damping=1.0).validate()
    with pytest.raises(InvalidArgumentError):
        PageRankConfig(tolerance=0).validate()
    with pytest.raises(InvalidArgumentError):
        PageRankConfig(max_iterations=0).validate()
    del v


def test_metadata_reports_termination():
    g = TemporalGraph()
    g.add_edge(1, "a", "b")
    r1 = pagerank(full_view(g), PageRankConfig(max_iterations=1))
    assert r1.metadata["stopped_by"] == "max_iterations"
    r2 = pagerank(full_view(g))
    assert r2.metadata["stopped_by"] == "tolerance"
    assert r2.metadata["iterations"] <= 100


def test_multiplicity_does_not_change_weights():
    g1 = TemporalGraph()
    g1.add_edge(1, "a", "b")
    g1.add_edge(2, "a", "b")
    g1.add_edge(3, "b", "a")
    g2 = TemporalGraph()
    g2.add_edge(1, "a", "b")
    g2.add_edge(2, "b", "a")
    s1 = pagerank(full_view(g1)).rows
    s2 = pagerank(full_view(g2)).rows
    assert s1 == s2


# -- degree stats / top_k -------------------------------------------------------


def test_degree_stats_counts_pairs():
    g = TemporalGraph()
    g.add_edge(1, "a", "b")
    g.add_edge(2, "a", "c")
    rows = degree_stats(full_view(g)).rows
    assert rows["a"] == {"in": 0, "out": 2, "total": 2}
    assert rows["b"] == {"in": 1, "out": 0, "total": 1}


def test_top_k_tie_breaks_by_external_id():
    from tgraph import AlgorithmResult

    r = AlgorithmResult(name="pagerank", rows={"b": 0.3, "a": 0.3, "c": 0.4})
    assert top_k(r, 3) == [("c", 0.4), ("a", 0.3), ("b", 0.3)]


def test_top_k_beyond_size_returns_all():
    from tgraph import AlgorithmResult

    r = AlgorithmResult(name="pagerank", rows={"a": 0.6, "b": 0.4})
    assert len(top_k(r, 10)) == 2
    with pytest.raises(InvalidArgumentError):
        top_k(r, 0)
