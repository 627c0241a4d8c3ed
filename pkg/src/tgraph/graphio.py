"""Ingestion of delimited event tables and export to stable file formats.

The canonical event order on load is a stable sort by parsed timestamp with
file order breaking ties; that order assigns the sequence indexes, so two
differently-ordered files of the same timestamped rows build event-equal
graphs.

All exports are byte-deterministic: fixed column order, "\\n" newlines,
UTF-8, RFC-4180-style quoting for CSV and compact key-sorted JSON. See
FORMATS.md for byte-level examples.
"""

from __future__ import annotations

import csv
import json
from io import StringIO
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Any

from .algorithms.motifs import MotifMatrix
from .algorithms.reachability import ReachabilityResult
from .algorithms.results import AlgorithmResult, WindowedResults
from .errors import ExportError, GraphError, LoadError
from .store import ExternalId, PropValue, TemporalGraph
from .views import GraphView, full_view, id_sort_key

FORMAT_VERSION = 1


class TimeFormat(Enum):
    """Unit of the time column. Numeric formats ingest the value verbatim as
    unit-agnostic ticks; rfc3339 converts calendar datetimes to epoch millis."""

    EPOCH_SECONDS = "epoch_seconds"
    EPOCH_MILLIS = "epoch_millis"
    RFC3339 = "rfc3339"


class ExportFormat(Enum):
    EDGE_LIST_CSV = "edge_list_csv"
    GRAPH_JSON = "graph_json"
    RESULT_CSV = "result_csv"
    RESULT_JSON = "result_json"


_PROP_PARSERS = {
    "int": int,
    "float": float,
    "str": str,
    "bool": lambda s: {"true": True, "false": False}[s],
}


def parse_time(text: str, fmt: TimeFormat) -> int:
    if fmt is TimeFormat.RFC3339:
        s = text.strip()
        if s.endswith(("Z", "z")):
            s = s[:-1] + "+00:00"
        dt = datetime.fromisoformat(s)
        if dt.tzinfo is None:
            dt = dt.replace(tzinfo=timezone.utc)
        return round(dt.timestamp() * 1000)
    return int(text.strip())


@dataclass
class EdgeTableSpec:
    path: str | Path
    delimiter: str = ","
    header: bool = True
    source_column: str | int = "source"
    target_column: str | int = "target"
    time_column: str | int = "time"
    time_format: TimeFormat = TimeFormat.EPOCH_SECONDS
    layer_column: str | int | None = None
    layer: str | None = None
    property_columns: tuple[tuple[str | int, str], ...] = ()
    id_type: str = "str"  # "str" or "int": type of the source/target ids
    strict: bool = False


@dataclass
class NodeTableSpec:
    path: str | Path
    delimiter: str = ","
    header: bool = True
    id_column: str | int = "id"
    time_column: str | int = "time"
    time_format: TimeFormat = TimeFormat.EPOCH_SECONDS
    property_columns: tuple[tuple[str | int, str], ...] = ()
    id_type: str = "str"
    strict: bool = False


@dataclass
class RowError:
    line: int  # 1-based line number in the file
    message: str


@dataclass
class LoadResult:
    graph: TemporalGraph
    valid_rows: int
    errors: list[RowError] = field(default_factory=list)


def _read_rows(spec) -> tuple[list[str] | None, list[tuple[int, list[str]]]]:
    path = Path(spec.path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise LoadError(f"cannot read {path}: {exc}") from exc
    reader = csv.reader(text.splitlines(), delimiter=spec.delimiter)
    rows = [(i + 1, row) for i, row in enumerate(reader) if row]
    if spec.header:
        if not rows:
            raise LoadError(f"{path}: empty file, header expected")
        header = rows[0][1]
        return header, rows[1:]
    return None, rows


def _resolve(column: str | int, header: list[str] | None, path) -> int:
    if isinstance(column, int):
        return column
    if isinstance(column, str) and column.isdigit() and (header is None or column not in header):
        return int(column)
    if header is None:
        raise LoadError(f"{path}: column {column!r} needs a header row or an index")
    try:
        return header.index(column)
    except ValueError:
        raise LoadError(f"{path}: column {column!r} not found in header {header}") from None


def _parse_id(text: str, id_type: str) -> ExternalId:
    return int(text) if id_type == "int" else text


def _parse_props(
    row: list[str], prop_cols: list[tuple[int, str, str]]
) -> dict[str, PropValue]:
    props: dict[str, PropValue] = {}
    for idx, name, tag in prop_cols:
        raw = row[idx]
        if raw == "":
            continue
        try:
            props[name] = _PROP_PARSERS[tag](raw)
        except (KeyError, ValueError) as exc:
            raise ValueError(f"property {name!r}: cannot parse {raw!r} as {tag}") from exc
    return props


def _prop_col_indexes(spec, header, path) -> list[tuple[int, str, str]]:
    out = []
    for column, tag in spec.property_columns:
        if tag not in _PROP_PARSERS:
            raise LoadError(f"{path}: unknown property type tag {tag!r}")
        idx = _resolve(column, header, path)
        name = column if isinstance(column, str) and not column.isdigit() else (
            header[idx] if header else f"col{idx}"
        )
        out.append((idx, name, tag))
    return out


def load_edges(spec: EdgeTableSpec, graph: TemporalGraph | None = None) -> LoadResult:
    """One add_edge per row, applied in canonical order (time, then file order).

    Malformed rows are collected with their line numbers; in lenient mode the
    load succeeds with at least one valid row, in strict mode any bad row
    fails the load.
    """
    path = Path(spec.path)
    header, rows = _read_rows(spec)
    src_i = _resolve(spec.source_column, header, path)
    dst_i = _resolve(spec.target_column, header, path)
    time_i = _resolve(spec.time_column, header, path)
    if len({src_i, dst_i, time_i}) != 3:
        raise LoadError(f"{path}: source, target and time columns must be distinct")
    layer_i = (
        _resolve(spec.layer_column, header, path) if spec.layer_column is not None else None
    )
    prop_cols = _prop_col_indexes(spec, header, path)

    parsed: list[tuple[int, int, ExternalId, ExternalId, str | None, dict]] = []
    errors: list[RowError] = []
    for line, row in rows:
        try:
            t = parse_time(row[time_i], spec.time_format)
            src = _parse_id(row[src_i], spec.id_type)
            dst = _parse_id(row[dst_i], spec.id_type)
            layer = row[layer_i] if layer_i is not None else spec.layer
            props = _parse_props(row, prop_cols)
        except (ValueError, IndexError) as exc:
            errors.append(RowError(line, str(exc)))
            continue
        parsed.append((t, line, src, dst, layer, props))
    if spec.strict and errors:
        first = errors[0]
        raise LoadError(f"{path}: line {first.line}: {first.message}")

    parsed.sort(key=lambda p: p[0])  # stable: ties keep file order
    g = graph if graph is not None else TemporalGraph()
    applied = 0
    for t, line, src, dst, layer, props in parsed:
        try:
            g.add_edge(t, src, dst, props or None, layer=layer)
            applied += 1
        except GraphError as exc:
            errors.append(RowError(line, str(exc)))
    if applied == 0:
        raise LoadError(f"{path}: zero valid rows")
    errors.sort(key=lambda e: e.line)
    return LoadResult(graph=g, valid_rows=applied, errors=errors)


def load_node_props(spec: NodeTableSpec, graph: TemporalGraph | None = None) -> LoadResult:
    """Per-row add_node with properties at the row's timestamp."""
    path = Path(spec.path)
    header, rows = _read_rows(spec)
    id_i = _resolve(spec.id_column, header, path)
    time_i = _resolve(spec.time_column, header, path)
    if id_i == time_i:
        raise LoadError(f"{path}: id and time columns must be distinct")
    prop_cols = _prop_col_indexes(spec, header, path)

    parsed: list[tuple[int, int, ExternalId, dict]] = []
    errors: list[RowError] = []
    for line, row in rows:
        try:
            t = parse_time(row[time_i], spec.time_format)
            ext = _parse_id(row[id_i], spec.id_type)
            props = _parse_props(row, prop_cols)
        except (ValueError, IndexError) as exc:
            errors.append(RowError(line, str(exc)))
            continue
        parsed.append((t, line, ext, props))
    if spec.strict and errors:
        first = errors[0]
        raise LoadError(f"{path}: line {first.line}: {first.message}")

    parsed.sort(key=lambda p: p[0])
    g = graph if graph is not None else TemporalGraph()
    applied = 0
    for t, line, ext, props in parsed:
        try:
            g.add_node(t, ext, props or None)
            applied += 1
        except GraphError as exc:
            errors.append(RowError(line, str(exc)))
    if applied == 0:
        raise LoadError(f"{path}: zero valid rows")
    errors.sort(key=lambda e: e.line)
    return LoadResult(graph=g, valid_rows=applied, errors=errors)


# -- graph documents -----------------------------------------------------------


def _id_json(ext: ExternalId) -> Any:
    return ext  # JSON keeps int/str apart


def graph_document(view_or_graph: GraphView | TemporalGraph) -> dict:
    """Graph as a plain JSON-ready document (format_version 1).

    Built from the events visible in the view; entity order is canonical
    (nodes by id, edges by source/target pair) and event lists keep
    (time, seq) order, so the document is deterministic.
    """
    view = (
        view_or_graph
        if isinstance(view_or_graph, GraphView)
        else full_view(view_or_graph)
    )
    g = view.materialise()
    layer_names = g.layer_names()
    # registration order is an internal detail; the document is canonical
    listed_layers = sorted(layer_names)

    nodes = []
    for rec in sorted(g.iter_node_records(), key=lambda r: id_sort_key(r.external_id)):
        props_by_seq: dict[int, dict] = {}
        for name, hist in rec.temporal_props.items():
            for t, s, v in hist:
                props_by_seq.setdefault(s, {})[name] = v
        updates = [[t, props_by_seq.get(s, {})] for t, s in rec.activity]
        doc: dict[str, Any] = {"id": _id_json(rec.external_id), "updates": updates}
        if rec.constant_props:
            doc["constant"] = dict(sorted(rec.constant_props.items()))
        nodes.append(doc)

    edges = []
    for erec in sorted(
        g.iter_edge_records(),
        key=lambda e: (
            id_sort_key(g.external_id(e.source)),
            id_sort_key(g.external_id(e.target)),
        ),
    ):
        layers: dict[str, dict] = {}
        for idx in sorted(erec.layers, key=lambda i: layer_names[i]):
            hist = erec.layers[idx]
            layers[layer_names[idx]] = {
                "additions": [[t, dict(sorted(p.items()))] for t, _, p in hist.additions],
                "deletions": [t for t, _ in hist.deletions],
            }
        edges.append(
            {
                "source": _id_json(g.external_id(erec.source)),
                "target": _id_json(g.external_id(erec.target)),
                "layers": layers,
            }
        )

    graph_props: dict[str, Any] = {
        "constant": dict(sorted(g.graph_constant_props.items())),
        "temporal": {
            name: [[t, v] for t, _, v in hist]
            for name, hist in sorted(g.graph_temporal_props.items())
        },
    }
    return {
        "format_version": FORMAT_VERSION,
        "layers": listed_layers,
        "graph": graph_props,
        "nodes": nodes,
        "edges": edges,
    }


def load_graph_document(doc: dict) -> TemporalGraph:
    if not isinstance(doc, dict) or doc.get("format_version") != FORMAT_VERSION:
        raise LoadError(f"unsupported graph document (format_version != {FORMAT_VERSION})")
    g = TemporalGraph()
    for name in doc.get("layers", []):
        g.register_layer(name)

    events: list[tuple[int, int, Any]] = []  # (t, doc order, apply thunk payload)
    order = 0

    def push(t, payload):
        nonlocal order
        events.append((t, order, payload))
        order += 1

    for name, entries in doc.get("graph", {}).get("temporal", {}).items():
        for t, v in entries:
            push(t, ("graph_prop", name, v))
    for node in doc.get("nodes", []):
        ext = node["id"]
        for t, props in node.get("updates", []):
            push(t, ("node", ext, props))
    for edge in doc.get("edges", []):
        src, dst = edge["source"], edge["target"]
        for layer, hist in edge.get("layers", {}).items():
            for t, props in hist.get("additions", []):
                push(t, ("edge_add", src, dst, layer, props))
            for t in hist.get("deletions", []):
                push(t, ("edge_del", src, dst, layer))

    events.sort(key=lambda e: (e[0], e[1]))
    for t, _, payload in events:
        kind = payload[0]
        if kind == "node":
            g.add_node(t, payload[1], payload[2] or None)
        elif kind == "edge_add":
            g.add_edge(t, payload[1], payload[2], payload[4] or None, layer=payload[3])
        elif kind == "edge_del":
            g.delete_edge(t, payload[1], payload[2], layer=payload[3])
        else:
            g.add_graph_properties(t, {payload[1]: payload[2]})

    consts = doc.get("graph", {}).get("constant", {})
    if consts:
        g.set_graph_constants(consts)
    for node in doc.get("nodes", []):
        if node.get("constant") and g.has_node(node["id"]):
            g.set_node_constants(node["id"], node["constant"])
    return g


def load_graph_json(path: str | Path) -> TemporalGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise LoadError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LoadError(f"{path}: invalid JSON: {exc}") from exc
    return load_graph_document(doc)


# -- export ---------------------------------------------------------------------


def _dump_json(doc: Any) -> str:
    return json.dumps(doc, ensure_ascii=False, sort_keys=True, separators=(",", ":")) + "\n"


def _prop_cell(value: PropValue | None) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def edge_list_csv_text(view: GraphView) -> str:
    """Addition events as CSV: source,target,time,layer then property columns."""
    g = view.graph
    layer_names = g.layer_names()
    rows: list[tuple[int, int, str, str, str, dict]] = []
    prop_names: set[str] = set()
    for erec in g.iter_edge_records():
        if not (view._node_allowed(erec.source) and view._node_allowed(erec.target)):
            continue
        src = str(g.external_id(erec.source))
        dst = str(g.external_id(erec.target))
        for idx, hist in erec.layers.items():
            if not view._layer_selected(idx):
                continue
            for t, s, kind, props in view._visible_layer_events(hist):
                if kind != 0:
                    continue
                rows.append((t, s, src, dst, layer_names[idx], props))
                prop_names.update(props)
    rows.sort(key=lambda r: (r[0], r[1]))
    columns = sorted(prop_names)
    buf = StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["source", "target", "time", "layer", *columns])
    for t, _, src, dst, layer, props in rows:
        writer.writerow([src, dst, t, layer, *(_prop_cell(props.get(c)) for c in columns)])
    return buf.getvalue()


_VALUE_COLUMN = {"pagerank": "score", "reachability": "arrival", "degree": None}


def result_csv_text(result) -> str:
    buf = StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if isinstance(result, ReachabilityResult):
        result = AlgorithmResult(name="reachability", rows=dict(result.reached))
    if isinstance(result, MotifMatrix):
        writer.writerow(["prefix", *result.col_keys])
        for key, row in zip(result.row_keys, result.counts):
            writer.writerow([key, *row])
    elif isinstance(result, WindowedResults):
        writer.writerow(["node", *result.labels()])
        for node, values in result.sorted_rows():
            writer.writerow(
                [str(node), *("" if v is None else _scalar_cell(v) for v in values)]
            )
    elif isinstance(result, AlgorithmResult):
        if result.name == "degree":
            writer.writerow(["node", "in", "out", "total"])
            for node, value in result.sorted_rows():
                writer.writerow([str(node), value["in"], value["out"], value["total"]])
        else:
            writer.writerow(["node", _VALUE_COLUMN.get(result.name) or "value"])
            for node, value in result.sorted_rows():
                writer.writerow([str(node), _scalar_cell(value)])
    else:
        raise ExportError(f"cannot serialise {type(result).__name__} as a result")
    return buf.getvalue()


def _scalar_cell(value) -> str:
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    if isinstance(value, float):
        return repr(value)
    return str(value)


def result_json_document(result) -> dict:
    if isinstance(result, ReachabilityResult):
        result = AlgorithmResult(name="reachability", rows=dict(result.reached))
    if isinstance(result, MotifMatrix):
        return {
            "algorithm": "motifs",
            "delta": result.delta,
            "row_keys": list(result.row_keys),
            "col_keys": list(result.col_keys),
            "counts": result.counts,
            "total": result.total(),
            "metadata": result.metadata,
        }
    if isinstance(result, WindowedResults):
        return {
            "algorithm": result.algorithm,
            "windows": result.labels(),
            "rows": {str(node): values for node, values in result.sorted_rows()},
            "errors": result.errors,
            "metadata": result.metadata,
        }
    if isinstance(result, AlgorithmResult):
        return {
            "algorithm": result.name,
            "rows": [
                {"node": str(node), "value": value} for node, value in result.sorted_rows()
            ],
            "metadata": result.metadata,
        }
    raise ExportError(f"cannot serialise {type(result).__name__} as a result")


def export(obj, fmt: ExportFormat, path: str | Path) -> Path:
    """Write ``obj`` in ``fmt`` to ``path``; output bytes are deterministic."""
    if fmt is ExportFormat.EDGE_LIST_CSV:
        view = obj if isinstance(obj, GraphView) else full_view(obj)
        text = edge_list_csv_text(view)
    elif fmt is ExportFormat.GRAPH_JSON:
        text = _dump_json(graph_document(obj))
    elif fmt is ExportFormat.RESULT_CSV:
        text = result_csv_text(obj)
    elif fmt is ExportFormat.RESULT_JSON:
        text = _dump_json(result_json_document(obj))
    else:
        raise ExportError(f"unknown export format {fmt!r}")
    out = Path(path)
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ExportError(f"cannot write {out}: {exc}") from exc
    return out
