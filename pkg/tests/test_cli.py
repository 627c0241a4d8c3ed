import json
import subprocess
import sys
from pathlib import Path

import pytest

import tgraph
from tgraph import (
    EdgeTableSpec,
    PageRankConfig,
    full_view,
    load_edges,
    pagerank,
    temporal_motifs,
    temporal_reachability,
    top_k,
)
from tgraph.cli import main
from tgraph.graphio import _dump_json, result_csv_text, result_json_document

from conftest import events_of
from oracles import motif_oracle

DATA = Path(tgraph.__file__).parent / "data"


def load_bundled(name, tmp_path):
    out = tmp_path / f"{name}.json"
    code = main(["load", "--input", str(DATA / f"{name}.csv"), "--graph", str(out)])
    assert code == 0
    return out


def test_load_bundled_emails(tmp_path, capsys):
    out = tmp_path / "emails.json"
    code = main(["load", "--input", str(DATA / "emails.csv"), "--graph", str(out)])
    captured = capsys.readouterr()
    assert code == 0
    assert captured.out.strip() == "loaded 3 edges, 0 errors"
    assert out.exists()


def test_load_missing_file_exits_2(tmp_path, capsys):
    code = main(["load", "--input", str(tmp_path / "nope.csv"), "--graph", str(tmp_path / "g.json")])
    captured = capsys.readouterr()
    assert code == 2
    assert captured.out == ""
    assert "load failed" in captured.err


def test_load_lenient_bad_row(tmp_path, capsys):
    csv_path = tmp_path / "e.csv"
    csv_path.write_text("source,target,time\na,b,1\nb,c,oops\na,c,3\n")
    code = main(["load", "--input", str(csv_path), "--graph", str(tmp_path / "g.json")])
    captured = capsys.readouterr()
    assert code == 0
    assert captured.out.strip() == "loaded 2 edges, 1 error"
    assert "line 3" in captured.err


def test_load_zero_valid_rows_exits_2(tmp_path, capsys):
    csv_path = tmp_path / "e.csv"
    csv_path.write_text("source,target,time\na,b,oops\n")
    code = main(["load", "--input", str(csv_path), "--graph", str(tmp_path / "g.json")])
    assert code == 2


def test_stats_bundled(tmp_path, capsys):
    gpath = load_bundled("emails", tmp_path)
    capsys.readouterr()
    assert main(["stats", "--graph", str(gpath)]) == 0
    out = capsys.readouterr().out
    assert "nodes: 3" in out
    assert "edges: 3" in out
    assert "earliest: 1" in out
    assert "latest: 3" in out


def test_stats_empty_graph(tmp_path, capsys):
    gpath = tmp_path / "empty.json"
    gpath.write_text(
        json.dumps({"format_version": 1, "layers": ["_default"],
                    "graph": {"constant": {}, "temporal": {}}, "nodes": [], "edges": []})
    )
    assert main(["stats", "--graph", str(gpath)]) == 0
    out = capsys.readouterr().out
    assert "nodes: 0" in out
    assert "edges: 0" in out
    assert "no events" in out


def test_window_validation_exit_1(tmp_path, capsys):
    gpath = load_bundled("emails", tmp_path)
    capsys.readouterr()
    code = main(["run", "--graph", str(gpath), "--algorithm", "pagerank", "--window", "5:2"])
    captured = capsys.readouterr()
    assert code == 1
    assert "start must precede end" in captured.err


def test_window_rolling_mutually_exclusive(tmp_path, capsys):
    gpath = load_bundled("emails", tmp_path)
    capsys.readouterr()
    with pytest.raises(SystemExit) as exc:
        main(["run", "--graph", str(gpath), "--algorithm", "pagerank",
              "--window", "0:2", "--rolling", "5"])
    assert exc.value.code == 1


def test_motifs_delta_required(tmp_path, capsys):
    gpath = load_bundled("emails", tmp_path)
    capsys.readouterr()
    code = main(["run", "--graph", str(gpath), "--algorithm", "motifs"])
    assert code == 1
    assert "--delta" in capsys.readouterr().err


def test_run_motifs_matches_oracle_total(tmp_path, capsys):
    gpath = load_bundled("interactions", tmp_path)
    capsys.readouterr()
    code = main(["run", "--graph", str(gpath), "--algorithm", "motifs", "--delta", "3600"])
    out = capsys.readouterr().out
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "prefix,ab,ac,ba,bc,ca,cb"
    assert len(lines) == 7
    total = sum(int(x) for ln in lines[1:] for x in ln.split(",")[1:])
    res = load_edges(EdgeTableSpec(path=DATA / "interactions.csv"))
    expected = sum(motif_oracle(events_of(full_view(res.graph)), 3600).values())
    assert total == expected
    assert total > 0


def test_run_pagerank_rolling_two_windows(tmp_path, capsys):
    gpath = load_bundled("transactions", tmp_path)
    capsys.readouterr()
    code = main(["run", "--graph", str(gpath), "--algorithm", "pagerank", "--rolling", "5"])
    out = capsys.readouterr().out
    assert code == 0
    header = out.splitlines()[0]
    assert header == "node,0,5"


def test_cli_output_equals_library_serialisation(tmp_path, capsys):
    gpath = load_bundled("emails", tmp_path)
    g = load_edges(EdgeTableSpec(path=DATA / "emails.csv")).graph
    capsys.readouterr()

    assert main(["run", "--graph", str(gpath), "--algorithm", "pagerank"]) == 0
    got = capsys.readouterr().out
    assert got == result_csv_text(pagerank(full_view(g), PageRankConfig()))

    assert main(["run", "--graph", str(gpath), "--algorithm", "degree", "--format", "json"]) == 0
    got = capsys.readouterr().out
    from tgraph import degree_stats

    assert got == _dump_json(result_json_document(degree_stats(full_view(g))))

    assert main([
        "run", "--graph", str(gpath), "--algorithm", "reachability",
        "--seeds", "alice", "--start", "0",
    ]) == 0
    got = capsys.readouterr().out
    reach = temporal_reachability(full_view(g), ["alice"], 0)
    assert got == result_csv_text(reach.as_algorithm_result(full_view(g), 0))

    assert main(["run", "--graph", str(gpath), "--algorithm", "motifs",
                 "--delta", "10", "--format", "json"]) == 0
    got = capsys.readouterr().out
    assert got == _dump_json(result_json_document(temporal_motifs(full_view(g), 10)))


def test_top_flag_selects_top_rows(tmp_path, capsys):
    gpath = load_bundled("transactions", tmp_path)
    g = load_edges(EdgeTableSpec(path=DATA / "transactions.csv")).graph
    capsys.readouterr()
    assert main(["run", "--graph", str(gpath), "--algorithm", "pagerank", "--top", "2"]) == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert len(lines) == 3
    expected = dict(top_k(pagerank(full_view(g), PageRankConfig()), 2))
    got_nodes = {ln.split(",")[0] for ln in lines[1:]}
    assert got_nodes == {str(k) for k in expected}


def test_top5_then_rolling_pipeline(tmp_path, capsys):
    # all-time pagerank -> take top 5 -> rolling pagerank over the selection
    gpath = load_bundled("transactions", tmp_path)
    capsys.readouterr()
    assert main(["run", "--graph", str(gpath), "--algorithm", "pagerank",
                 "--top", "5", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    selection = [row["node"] for row in doc["rows"]]
    assert len(selection) == 5
    assert main(["run", "--graph", str(gpath), "--algorithm", "pagerank",
                 "--nodes", ",".join(selection), "--rolling", "5"]) == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert lines[0] == "node,0,5"
    assert {ln.split(",")[0] for ln in lines[1:]} <= set(selection)


def test_run_window_restricts_view(tmp_path, capsys):
    gpath = load_bundled("emails", tmp_path)
    g = load_edges(EdgeTableSpec(path=DATA / "emails.csv")).graph
    capsys.readouterr()
    assert main(["run", "--graph", str(gpath), "--algorithm", "degree",
                 "--window", "1:2"]) == 0
    got = capsys.readouterr().out
    from tgraph import degree_stats

    want = result_csv_text(degree_stats(full_view(g).with_window(1, 2)))
    assert got == want


def test_output_file_written(tmp_path, capsys):
    gpath = load_bundled("emails", tmp_path)
    capsys.readouterr()
    out_path = tmp_path / "scores.csv"
    assert main(["run", "--graph", str(gpath), "--algorithm", "pagerank",
                 "--output", str(out_path)]) == 0
    assert capsys.readouterr().out == ""
    assert out_path.read_text().startswith("node,score")


def test_console_script_smoke(tmp_path):
    gjson = tmp_path / "emails.json"
    r1 = subprocess.run(
        [sys.executable, "-m", "tgraph.cli", "load",
         "--input", str(DATA / "emails.csv"), "--graph", str(gjson)],
        capture_output=True, text=True,
    )
    assert r1.returncode == 0
    assert r1.stdout.strip() == "loaded 3 edges, 0 errors"
    r2 = subprocess.run(
        [sys.executable, "-m", "tgraph.cli", "stats", "--graph", str(gjson)],
        capture_output=True, text=True,
    )
    assert r2.returncode == 0
    assert "nodes: 3" in r2.stdout


def test_at_and_expanding_flags(tmp_path, capsys):
    gpath = load_bundled("emails", tmp_path)
    g = load_edges(EdgeTableSpec(path=DATA / "emails.csv")).graph
    capsys.readouterr()
    from tgraph import degree_stats

    assert main(["run", "--graph", str(gpath), "--algorithm", "degree", "--at", "2"]) == 0
    got = capsys.readouterr().out
    assert got == result_csv_text(degree_stats(full_view(g).at(2)))

    assert main(["run", "--graph", str(gpath), "--algorithm", "degree", "--expanding", "2"]) == 0
    got = capsys.readouterr().out
    from tgraph import run_over_windows

    v = full_view(g)
    want = result_csv_text(run_over_windows(v, v.expanding(2), degree_stats))
    assert got == want


def test_export_view_is_materialisation(tmp_path, capsys):
    gpath = load_bundled("emails", tmp_path)
    g = load_edges(EdgeTableSpec(path=DATA / "emails.csv")).graph
    capsys.readouterr()
    out = tmp_path / "win.json"
    assert main(["export", "--graph", str(gpath), "--format", "json",
                 "--window", "1:3", "--output", str(out)]) == 0
    from tgraph.graphio import graph_document, _dump_json

    want = _dump_json(graph_document(full_view(g).with_window(1, 3)))
    assert out.read_text() == want
    reloaded = json.loads(out.read_text())
    assert len(reloaded["edges"]) == 2
