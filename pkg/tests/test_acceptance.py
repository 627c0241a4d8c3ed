"""Acceptance criteria, one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines live.
"""

import json
import random
import time
import urllib.request
from contextlib import contextmanager
from pathlib import Path

import tgraph
from tgraph import (
    EdgeTableSpec,
    ExportFormat,
    PageRankConfig,
    Semantics,
    TemporalGraph,
    export,
    full_view,
    load_edges,
    load_graph_json,
    pagerank,
    shuffle_timestamps,
    temporal_motifs,
    temporal_reachability,
)
from tgraph.cli import main as cli_main
from tgraph.service import ServerConfig, serve
from tgraph.store import scan_counter
from tgraph.views import id_sort_key

from conftest import canonical_doc, events_of, make_random_graph, random_view
from oracles import motif_oracle, pagerank_dense_oracle, reachability_oracle
from test_motifs import matrix_as_signature_counts

DATA = Path(tgraph.__file__).parent / "data"


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"[FAIL] {name}")
        raise
    print(f"[PASS] {name}")


def test_motif_oracle_equivalence():
    with criterion("motif oracle equivalence: 50 random graphs, cell-for-cell, <60s"):
        started = time.time()
        total_instances = 0
        for i in range(50):
            rng = random.Random(1000 + i)
            n_events = rng.randint(20, 500)
            g = make_random_graph(
                rng,
                n_nodes=rng.randint(3, 15),
                n_events=n_events,
                n_layers=rng.randint(1, 3),
                p_delete=0.05,
            )
            v = full_view(g)
            span = max(1, g.latest_time() - g.earliest_time())
            delta = rng.randint(1, max(1, span // 8))
            got = matrix_as_signature_counts(temporal_motifs(v, delta))
            expected = motif_oracle(events_of(v), delta)
            assert got == expected, f"graph {i}, delta {delta}"
            total_instances += sum(expected.values())
        elapsed = time.time() - started
        assert elapsed < 60, f"took {elapsed:.1f}s"
        assert total_instances > 10_000  # the corpus actually exercises the counter


def test_motif_pipeline_cli(tmp_path, capsys):
    with criterion("motif pipeline: CLI --delta 3600 total equals oracle"):
        gjson = tmp_path / "interactions.json"
        assert cli_main([
            "load", "--input", str(DATA / "interactions.csv"), "--graph", str(gjson),
        ]) == 0
        capsys.readouterr()
        assert cli_main([
            "run", "--graph", str(gjson), "--algorithm", "motifs", "--delta", "3600",
        ]) == 0
        out = capsys.readouterr().out
        lines = out.strip().splitlines()
        assert lines[0] == "prefix,ab,ac,ba,bc,ca,cb"
        assert len(lines) == 7
        cells = [[int(x) for x in ln.split(",")[1:]] for ln in lines[1:]]
        assert all(len(row) == 6 for row in cells)
        got_total = sum(sum(row) for row in cells)
        g = load_edges(EdgeTableSpec(path=DATA / "interactions.csv")).graph
        oracle_total = sum(motif_oracle(events_of(full_view(g)), 3600).values())
        assert got_total == oracle_total
        assert got_total > 0


def test_reachability_oracle_equivalence():
    with criterion("reachability oracle equivalence: 50 random graphs, exact arrivals"):
        for i in range(50):
            rng = random.Random(3000 + i)
            g = make_random_graph(
                rng,
                n_nodes=rng.randint(3, 12),
                n_events=rng.randint(5, 300),
                n_layers=rng.randint(1, 2),
            )
            v = full_view(g)
            events = events_of(v)
            ids = sorted({u for _, u, _ in events} | {w for _, _, w in events})
            if not ids:
                continue
            seeds = rng.sample(ids, min(len(ids), rng.randint(1, 3)))
            start = rng.randint(0, 100)
            got = temporal_reachability(v, seeds, start).reached
            expected = reachability_oracle(events, seeds, start)
            assert got == expected, f"graph {i}"


def test_pagerank_criteria():
    with criterion("pagerank: sums to 1 +-1e-9, symmetric cases 1e-12, star vs oracle 1e-9"):
        cycle = TemporalGraph()
        cycle.add_edge(1, "a", "b")
        cycle.add_edge(2, "b", "c")
        cycle.add_edge(3, "c", "a")
        for score in pagerank(full_view(cycle)).rows.values():
            assert abs(score - 1 / 3) <= 1e-12

        pair = TemporalGraph()
        pair.add_edge(1, "a", "b")
        pair.add_edge(2, "b", "a")
        for score in pagerank(full_view(pair)).rows.values():
            assert abs(score - 0.5) <= 1e-12

        star = TemporalGraph()
        for t, leaf in enumerate(("x", "y", "z"), start=1):
            star.add_edge(t, leaf, "h")
        view = full_view(star)
        result = pagerank(view, PageRankConfig(tolerance=1e-13, max_iterations=500))
        nodes = list(view.iter_present_nodes())
        index = {nid: i for i, nid in enumerate(nodes)}
        edges = [(index[e.source], index[e.target]) for e in view.iter_present_edges()]
        oracle = pagerank_dense_oracle(len(nodes), edges)
        for nid in nodes:
            got = result.rows[view.graph.external_id(nid)]
            assert abs(got - oracle[index[nid]]) <= 1e-9

        for seed in range(20):
            g = make_random_graph(
                random.Random(seed), n_nodes=9, n_events=70, n_layers=2, p_delete=0.1
            )
            v = random_view(random.Random(seed + 777), g)
            try:
                rows = pagerank(v).rows
            except tgraph.EmptyViewError:
                continue
            assert abs(sum(rows.values()) - 1.0) <= 1e-9


def _fingerprint(view):
    nodes = sorted(view.node_ids(), key=id_sort_key)
    return {
        "nodes": nodes,
        "edges": view.edge_list(),
        "counts": (view.count_nodes(), view.count_edges()),
        "degrees": {
            str(n): (view.degree(n, "in"), view.degree(n, "out"), view.degree(n, "both"))
            for n in nodes
        },
    }


def test_view_laziness_and_fidelity():
    with criterion("views: O(1) construction, 100-stack materialise fidelity, tiling"):
        g = make_random_graph(random.Random(5), n_nodes=10, n_events=500, n_layers=3)
        names = g.layer_names()
        ids = [g.external_id(i) for i in range(6)]
        scan_counter.reset()
        v = (
            full_view(g)
            .with_window(0, 900)
            .layers(names[:2])
            .subgraph(ids)
            .with_semantics(Semantics.PERSISTENT)
            .at(400)
        )
        assert scan_counter.value == 0, "view construction scanned histories"
        v.count_edges()
        assert scan_counter.value > 0

        checked = 0
        for seed in range(25):
            g = make_random_graph(
                random.Random(seed + 101), n_nodes=7, n_events=60, n_layers=3,
                p_delete=0.15, p_node=0.15, with_props=True,
            )
            for k in range(4):
                view = random_view(random.Random(seed * 31 + k), g)
                mat = full_view(view.materialise(), semantics=view.semantics)
                assert _fingerprint(view) == _fingerprint(mat)
                checked += 1
        assert checked >= 100

        for seed in range(5):
            g = make_random_graph(random.Random(seed + 60), n_nodes=6, n_events=60)
            v = full_view(g)
            windows = v.rolling(7)
            for t, _, _, _ in v.visible_addition_events():
                assert sum(1 for w in windows if w.start <= t < w.end) == 1


def test_deletion_semantics_differential():
    with criterion("deletion semantics: Event subset of Persistent + interval examples"):
        rng = random.Random(12)
        for _ in range(200):
            additions = sorted(rng.sample(range(0, 60), rng.randint(1, 8)))
            deletions = sorted(
                t for t in rng.sample(range(additions[0] + 1, 70), rng.randint(0, 4))
            )
            g = TemporalGraph()
            for t in additions:
                g.add_edge(t, "u", "v")
            for t in deletions:
                g.delete_edge(t, "u", "v")
            a, b = sorted(rng.sample(range(0, 75), 2))
            ev = full_view(g).with_window(a, b + 1)
            pv = ev.with_semantics(Semantics.PERSISTENT)
            if ev.has_edge("u", "v"):
                assert pv.has_edge("u", "v")

        g = TemporalGraph()
        g.add_edge(1, "a", "b")
        g.delete_edge(5, "a", "b")
        g.add_edge(9, "a", "b")
        from tgraph import alive_intervals
        from tgraph.store import TIME_MAX, TIME_MIN

        assert alive_intervals([(1, 0), (9, 2)], [(5, 1)]) == [(1, 5), (9, TIME_MAX)]
        pv = full_view(g).with_semantics(Semantics.PERSISTENT)
        assert pv.at(3).has_edge("a", "b")
        assert not pv.at(6).has_edge("a", "b")
        w = full_view(g).with_window(2, 4)
        assert not w.has_edge("a", "b")
        assert w.with_semantics(Semantics.PERSISTENT).has_edge("a", "b")
        only_del = TemporalGraph()
        only_del.delete_edge(3, "x", "y")
        assert alive_intervals([], [(3, 0)]) == [(TIME_MIN, 3)]
        dv = full_view(only_del).with_window(0, 10)
        assert not dv.has_edge("x", "y")
        assert dv.with_semantics(Semantics.PERSISTENT).has_edge("x", "y")


def test_io_round_trip(tmp_path):
    with criterion("io: 100-graph export/load event-equality, byte-deterministic"):
        for i in range(50):
            rng = random.Random(7000 + i)
            g = make_random_graph(
                rng, n_nodes=rng.randint(2, 8), n_events=rng.randint(1, 80),
                n_layers=rng.randint(1, 3), with_props=rng.random() < 0.5,
            )
            path_a = tmp_path / f"csv_{i}_a.csv"
            path_b = tmp_path / f"csv_{i}_b.csv"
            export(full_view(g), ExportFormat.EDGE_LIST_CSV, path_a)
            export(full_view(g), ExportFormat.EDGE_LIST_CSV, path_b)
            assert path_a.read_bytes() == path_b.read_bytes()
            header = path_a.read_text().splitlines()[0].split(",")
            props = (("w", "float"),) if "w" in header else ()
            spec = EdgeTableSpec(
                path=path_a, layer_column="layer", property_columns=props,
            )
            reloaded = load_edges(spec).graph
            assert canonical_doc(reloaded) == canonical_doc(g), f"csv graph {i}"

        for i in range(50):
            rng = random.Random(8000 + i)
            g = make_random_graph(
                rng, n_nodes=rng.randint(2, 8), n_events=rng.randint(1, 80),
                n_layers=rng.randint(1, 3), p_delete=0.2, p_node=0.2,
                with_props=rng.random() < 0.5,
            )
            path_a = tmp_path / f"json_{i}_a.json"
            path_b = tmp_path / f"json_{i}_b.json"
            export(full_view(g), ExportFormat.GRAPH_JSON, path_a)
            export(full_view(g), ExportFormat.GRAPH_JSON, path_b)
            assert path_a.read_bytes() == path_b.read_bytes()
            reloaded = load_graph_json(path_a)
            assert canonical_doc(reloaded) == canonical_doc(g), f"json graph {i}"


def _canon(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _expected_chain_leaf(view, leaf):
    if leaf == "countNodes":
        return view.count_nodes()
    if leaf == "countEdges":
        return view.count_edges()
    if leaf == "earliestTime":
        try:
            return view.earliest_time()
        except tgraph.GraphError:
            return None
    try:
        return view.latest_time()
    except tgraph.GraphError:
        return None


def test_service_fidelity():
    with criterion("service: >=100 query corpus identical to library, contracts hold"):
        import tempfile

        with tempfile.TemporaryDirectory() as tmp:
            tmp_path = Path(tmp)
            graphs = {}
            emails = load_edges(EdgeTableSpec(path=DATA / "emails.csv")).graph
            graphs["emails"] = emails
            rng = random.Random(99)
            rnd = make_random_graph(
                rng, n_nodes=8, n_events=120, n_layers=3, p_delete=0.1
            )
            graphs["random"] = rnd
            for name, g in graphs.items():
                export(full_view(g), ExportFormat.GRAPH_JSON, tmp_path / f"{name}.json")
                # evaluate expectations on the same instance the server loads,
                # so float summation orders match bit-for-bit
                graphs[name] = load_graph_json(tmp_path / f"{name}.json")
            server = serve(ServerConfig(graph_dir=tmp_path, port=0, algorithm_timeout=None))

            ran = 0
            doc = server.execute("{ graphs { name } }")
            assert _canon(doc) == _canon(
                {"data": {"graphs": [{"name": n} for n in sorted(graphs)]}}
            )
            ran += 1

            leaves = ("countNodes", "countEdges", "earliestTime", "latestTime")
            corpus_rng = random.Random(424242)
            for case in range(112):
                name = corpus_rng.choice(sorted(graphs))
                g = graphs[name]
                view = full_view(g)
                chain_q = []
                if corpus_rng.random() < 0.5:
                    a = corpus_rng.randint(0, 200)
                    b = a + corpus_rng.randint(1, 300)
                    view = view.with_window(a, b)
                    chain_q.append(f"window(start: {a}, end: {b})")
                if corpus_rng.random() < 0.4:
                    layer_names = g.layer_names()
                    pick = corpus_rng.sample(layer_names, corpus_rng.randint(1, len(layer_names)))
                    view = view.layers(pick)
                    names_q = ", ".join(f'"{n}"' for n in pick)
                    chain_q.append(f"layers(names: [{names_q}])")
                if corpus_rng.random() < 0.4:
                    ids = [g.external_id(i) for i in range(g.count_nodes())]
                    pick = corpus_rng.sample(ids, corpus_rng.randint(1, len(ids)))
                    view = view.subgraph(pick)
                    ids_q = ", ".join(f'"{i}"' for i in pick)
                    chain_q.append(f"subgraph(ids: [{ids_q}])")
                if corpus_rng.random() < 0.4:
                    view = view.with_semantics(Semantics.PERSISTENT)
                    chain_q.append("semantics(kind: PERSISTENT)")

                kind = corpus_rng.random()
                if kind < 0.6:
                    leaf = corpus_rng.choice(leaves)
                    body = leaf
                    expected_leaf = {leaf: _expected_chain_leaf(view, leaf)}
                elif kind < 0.8:
                    body = "algorithms { pagerank { node score } }"
                    try:
                        rows = pagerank(view).rows
                        scores = [
                            {"node": str(k), "score": v}
                            for k, v in sorted(rows.items(), key=lambda kv: id_sort_key(kv[0]))
                        ]
                        expected_leaf = {"algorithms": {"pagerank": scores}}
                    except tgraph.GraphError:
                        expected_leaf = None
                elif kind < 0.9:
                    delta = corpus_rng.randint(1, 120)
                    body = f"algorithms {{ temporalMotifs(delta: {delta}) {{ total counts }} }}"
                    m = temporal_motifs(view, delta)
                    expected_leaf = {
                        "algorithms": {"temporalMotifs": {"total": m.total(), "counts": m.counts}}
                    }
                else:
                    ids = view.node_ids()
                    if not ids:
                        continue
                    seed = corpus_rng.choice(sorted(ids, key=id_sort_key))
                    start = corpus_rng.randint(0, 100)
                    body = (
                        f'algorithms {{ temporalReachability(seeds: ["{seed}"], start: {start})'
                        " { node arrival } }"
                    )
                    reached = temporal_reachability(view, [seed], start).reached
                    rows = [
                        {"node": str(k), "arrival": v}
                        for k, v in sorted(reached.items(), key=lambda kv: id_sort_key(kv[0]))
                    ]
                    expected_leaf = {"algorithms": {"temporalReachability": rows}}

                parts = [f'graph(name: "{name}")'] + chain_q
                query = "{ " + " { ".join(parts) + " { " + body + " }" * (len(parts) + 1)
                got = server.execute(query)

                if expected_leaf is None:
                    assert got["data"] is None and got.get("errors"), query
                    ran += 1
                    continue
                expected_data = expected_leaf
                for field_q in reversed(chain_q):
                    expected_data = {field_q.split("(")[0]: expected_data}
                expected = {"data": {"graph": expected_data}}
                assert _canon(got) == _canon(expected), query
                ran += 1

            assert ran >= 100

            # health + error contracts over real HTTP
            server.start_background()
            try:
                base = f"http://{server.host}:{server.port}"
                health = json.loads(urllib.request.urlopen(base + "/health").read())
                assert health["status"] == "ok" and "version" in health
                req = urllib.request.Request(
                    base + "/graphql",
                    data=json.dumps({"query": '{ graph(name: "ghost") { countNodes } }'}).encode(),
                    headers={"Content-Type": "application/json"},
                )
                doc = json.loads(urllib.request.urlopen(req).read())
                assert doc["data"] is None
                assert any("ghost" in e["message"] for e in doc["errors"])
            finally:
                server.shutdown()


def test_null_model():
    with criterion("null model: structure + multiset preserved 50x, seeded determinism"):
        from collections import Counter

        for i in range(50):
            rng = random.Random(5000 + i)
            g = make_random_graph(
                rng, n_nodes=rng.randint(2, 9), n_events=rng.randint(10, 80),
                n_layers=rng.randint(1, 3), p_delete=0.1, p_node=0.1,
            )
            shuffled = shuffle_timestamps(g, seed=i)

            def stat(graph):
                layer_names = graph.layer_names()
                rows = []
                for erec in graph.iter_edge_records():
                    for idx, hist in erec.layers.items():
                        rows.append((
                            str(graph.external_id(erec.source)),
                            str(graph.external_id(erec.target)),
                            layer_names[idx],
                            len(hist.additions),
                            tuple(t for t, _ in hist.deletions),
                        ))
                return sorted(rows)

            def times(graph):
                out = []
                for erec in graph.iter_edge_records():
                    for hist in erec.layers.values():
                        out.extend(t for t, _, _ in hist.additions)
                return Counter(out)

            assert stat(shuffled) == stat(g), f"graph {i}"
            assert times(shuffled) == times(g), f"graph {i}"
            again = shuffle_timestamps(g, seed=i)
            assert canonical_doc(again) == canonical_doc(shuffled)
