"""Stateless GraphQL HTTP service over loaded graphs.

Every schema field delegates to the corresponding view or algorithm
operation; the server adds no semantics of its own. POST /graphql takes
standard request documents ({"query": ..., "variables": ...}); GET /health
reports build metadata. Loaded graphs are immutable; the one mutation
(loadGraph) ingests a CSV under the configured directory and publishes the
graph atomically.
"""

from __future__ import annotations

import json
import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeout
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from . import __version__
from .algorithms import PageRankConfig, pagerank, temporal_motifs, temporal_reachability
from .errors import GraphError, LoadError
from .graphio import EdgeTableSpec, TimeFormat, load_edges, load_graph_json
from .gql import (
    ID,
    Argument,
    Boolean,
    Enum,
    Field,
    Float,
    GqlError,
    Int,
    ListOf,
    Long,
    NonNull,
    Object,
    Schema,
    String,
    execute,
    print_sdl,
)
from .store import TemporalGraph
from .views import GraphView, Semantics, full_view, id_sort_key

log = logging.getLogger("tgraph.service")


@dataclass
class ServerConfig:
    host: str = "127.0.0.1"
    port: int = 1736
    graph_dir: str | Path = "."
    page_size: int = 1000
    algorithm_timeout: float | None = 30.0

    def validate(self) -> None:
        if self.page_size <= 0:
            raise GraphError("page_size must be positive")
        if self.algorithm_timeout is not None and self.algorithm_timeout <= 0:
            raise GraphError("algorithm_timeout must be positive")


class GraphRegistry:
    """Named graphs scanned from a directory; single-writer registration."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        self._graphs: dict[str, TemporalGraph] = {}
        self._lock = threading.Lock()
        if not self.directory.is_dir():
            raise LoadError(f"graph directory {self.directory} is not readable")
        for path in sorted(self.directory.glob("*.json")):
            try:
                self._graphs[path.stem] = load_graph_json(path)
            except LoadError as exc:
                log.warning("skipping %s: %s", path, exc)

    def names(self) -> list[str]:
        return sorted(self._graphs)

    def get(self, name: str) -> TemporalGraph:
        g = self._graphs.get(name)
        if g is None:
            raise GqlError(f"unknown graph {name!r}")
        return g

    def register(self, name: str, graph: TemporalGraph) -> None:
        with self._lock:
            if name in self._graphs:
                raise GqlError(f"graph {name!r} already exists")
            self._graphs[name] = graph  # atomic publish


_DIRECTION = Enum("Direction", ("IN", "OUT", "BOTH"))
_SEMANTICS = Enum("SemanticsKind", ("EVENT", "PERSISTENT"))
_TIME_FORMAT = Enum("TimeFormatKind", ("EPOCH_SECONDS", "EPOCH_MILLIS", "RFC3339"))


def _resolve_ext(view: GraphView, raw: str):
    """ID arguments arrive as strings; fall back to the integer form."""
    g = view.graph
    if g.has_node(raw):
        return raw
    if isinstance(raw, str) and raw.lstrip("-").isdigit() and g.has_node(int(raw)):
        return int(raw)
    return raw


def build_schema(registry: GraphRegistry, config: ServerConfig) -> Schema:
    page_size = config.page_size
    executor = ThreadPoolExecutor(max_workers=8)

    def timed(fn):
        if config.algorithm_timeout is None:
            return fn()
        future = executor.submit(fn)
        try:
            return future.result(timeout=config.algorithm_timeout)
        except FutureTimeout:
            raise GqlError(
                f"algorithm timed out after {config.algorithm_timeout}s"
            ) from None

    node_type = Object("Node", lambda: {
        "id": Field(NonNull(ID), resolver=lambda nv: nv[0].graph.external_id(nv[1])),
        "history": Field(
            NonNull(ListOf(NonNull(Long))),
            resolver=lambda nv: nv[0].graph.node_history(nv[0].graph.external_id(nv[1])),
            description="Timestamps of every event mentioning the node",
        ),
        "degree": Field(
            NonNull(Int),
            args={"direction": Argument(_DIRECTION, default="BOTH")},
            resolver=lambda nv, direction="BOTH": nv[0].degree(
                nv[0].graph.external_id(nv[1]), direction.lower()
            ),
        ),
    })

    edge_type = Object("Edge", lambda: {
        "source": Field(NonNull(ID), resolver=lambda ev: ev[0].graph.external_id(ev[1].source)),
        "target": Field(NonNull(ID), resolver=lambda ev: ev[0].graph.external_id(ev[1].target)),
        "layers": Field(
            NonNull(ListOf(NonNull(String))),
            resolver=lambda ev: sorted(
                ev[0].graph.layer_names()[idx]
                for idx, hist in ev[1].layers.items()
                if ev[0]._layer_selected(idx) and ev[0]._layer_present(hist)
            ),
            description="Layers on which the edge is present in this view",
        ),
    })

    node_score = Object("NodeScore", lambda: {
        "node": Field(NonNull(ID), resolver=lambda row: row[0]),
        "score": Field(NonNull(Float), resolver=lambda row: row[1]),
    })
    node_arrival = Object("NodeArrival", lambda: {
        "node": Field(NonNull(ID), resolver=lambda row: row[0]),
        "arrival": Field(NonNull(Long), resolver=lambda row: row[1]),
    })
    motif_payload = Object("MotifMatrixPayload", lambda: {
        "delta": Field(NonNull(Long), resolver=lambda m: m.delta),
        "rowKeys": Field(NonNull(ListOf(NonNull(String))), resolver=lambda m: list(m.row_keys)),
        "colKeys": Field(NonNull(ListOf(NonNull(String))), resolver=lambda m: list(m.col_keys)),
        "counts": Field(NonNull(ListOf(NonNull(ListOf(NonNull(Long))))), resolver=lambda m: m.counts),
        "total": Field(NonNull(Long), resolver=lambda m: m.total()),
    })

    def run_pagerank(view, damping=0.85, tolerance=1e-7, maxIterations=100):
        cfg = PageRankConfig(damping=damping, tolerance=tolerance, max_iterations=maxIterations)
        result = timed(lambda: pagerank(view, cfg))
        return sorted(result.rows.items(), key=lambda kv: id_sort_key(kv[0]))

    def run_motifs(view, delta):
        return timed(lambda: temporal_motifs(view, delta))

    def run_reachability(view, seeds, start, maxHops=None):
        resolved = [_resolve_ext(view, s) for s in seeds]
        result = timed(
            lambda: temporal_reachability(view, resolved, start, max_hops=maxHops)
        )
        return sorted(result.reached.items(), key=lambda kv: id_sort_key(kv[0]))

    algorithms_root = Object("AlgorithmsRoot", lambda: {
        "pagerank": Field(
            NonNull(ListOf(NonNull(node_score))),
            args={
                "damping": Argument(Float, default=0.85),
                "tolerance": Argument(Float, default=1e-7),
                "maxIterations": Argument(Int, default=100),
            },
            resolver=run_pagerank,
        ),
        "temporalMotifs": Field(
            NonNull(motif_payload),
            args={"delta": Argument(NonNull(Long))},
            resolver=run_motifs,
        ),
        "temporalReachability": Field(
            NonNull(ListOf(NonNull(node_arrival))),
            args={
                "seeds": Argument(NonNull(ListOf(NonNull(ID)))),
                "start": Argument(NonNull(Long)),
                "maxHops": Argument(Int),
            },
            resolver=run_reachability,
        ),
    })

    def paged(items, page):
        if page < 0:
            raise GqlError("page must be non-negative")
        lo = page * page_size
        return items[lo : lo + page_size]

    def resolve_nodes(view, page=0):
        return paged([(view, nid) for nid in view.iter_present_nodes()], page)

    def resolve_node(view, id):
        ext = _resolve_ext(view, id)
        if not view.has_node(ext):
            return None
        return (view, view.graph.internal_id(ext))

    def resolve_edges(view, page=0):
        return paged([(view, erec) for erec in view.iter_present_edges()], page)

    def resolve_bound(view, which):
        try:
            return view.earliest_time() if which == "lo" else view.latest_time()
        except GraphError:
            return None

    graph_handle: Object = Object("GraphHandle", lambda: {
        "nodes": Field(NonNull(ListOf(NonNull(node_type))),
                       args={"page": Argument(Int, default=0)}, resolver=resolve_nodes),
        "node": Field(node_type, args={"id": Argument(NonNull(ID))}, resolver=resolve_node),
        "edges": Field(NonNull(ListOf(NonNull(edge_type))),
                       args={"page": Argument(Int, default=0)}, resolver=resolve_edges),
        "countNodes": Field(NonNull(Int), resolver=lambda v: v.count_nodes()),
        "countEdges": Field(NonNull(Int), resolver=lambda v: v.count_edges()),
        "earliestTime": Field(Long, resolver=lambda v: resolve_bound(v, "lo")),
        "latestTime": Field(Long, resolver=lambda v: resolve_bound(v, "hi")),
        # self-references resolve lazily: the fields dict is only built on
        # first access, after graph_handle is bound
        "window": Field(NonNull(graph_handle),
                        args={"start": Argument(NonNull(Long)), "end": Argument(NonNull(Long))},
                        resolver=lambda v, start, end: v.with_window(start, end)),
        "at": Field(NonNull(graph_handle),
                    args={"time": Argument(NonNull(Long))},
                    resolver=lambda v, time: v.at(time)),
        "layers": Field(NonNull(graph_handle),
                        args={"names": Argument(NonNull(ListOf(NonNull(String))))},
                        resolver=lambda v, names: v.layers(names)),
        "subgraph": Field(NonNull(graph_handle),
                          args={"ids": Argument(NonNull(ListOf(NonNull(ID))))},
                          resolver=lambda v, ids: v.subgraph([_resolve_ext(v, i) for i in ids])),
        "semantics": Field(NonNull(graph_handle),
                           args={"kind": Argument(NonNull(_SEMANTICS))},
                           resolver=lambda v, kind: v.with_semantics(Semantics[kind])),
        "algorithms": Field(NonNull(algorithms_root), resolver=lambda v: v),
    })

    graph_meta = Object("GraphMeta", lambda: {
        "name": Field(NonNull(String), resolver=lambda m: m["name"]),
    })

    query = Object("Query", lambda: {
        "graphs": Field(
            NonNull(ListOf(NonNull(graph_meta))),
            resolver=lambda reg: [{"name": n} for n in reg.names()],
        ),
        "graph": Field(
            NonNull(graph_handle),
            args={"name": Argument(NonNull(String))},
            resolver=lambda reg, name: full_view(reg.get(name)),
        ),
    })

    def load_graph_mutation(
        reg,
        name,
        path,
        delimiter=",",
        header=True,
        sourceColumn="source",
        targetColumn="target",
        timeColumn="time",
        timeFormat="EPOCH_SECONDS",
        layerColumn=None,
        layer=None,
        idType="str",
        propertyColumns=None,
    ):
        base = reg.directory.resolve()
        target = (base / path).resolve()
        if not target.is_relative_to(base):
            raise GqlError(f"path {path!r} escapes the graph directory")
        props = []
        for item in propertyColumns or []:
            column, sep, tag = item.partition(":")
            if not sep:
                raise GqlError(f"propertyColumns entries look like COLUMN:TYPE, got {item!r}")
            props.append((column, tag))
        spec = EdgeTableSpec(
            path=target,
            delimiter=delimiter,
            header=header,
            source_column=sourceColumn,
            target_column=targetColumn,
            time_column=timeColumn,
            time_format=TimeFormat[timeFormat],
            layer_column=layerColumn,
            layer=layer,
            property_columns=tuple(props),
            id_type=idType,
        )
        result = load_edges(spec)
        reg.register(name, result.graph)
        return {"name": name}

    mutation = Object("Mutation", lambda: {
        "loadGraph": Field(
            NonNull(graph_meta),
            args={
                "name": Argument(NonNull(String)),
                "path": Argument(NonNull(String)),
                "delimiter": Argument(String, default=","),
                "header": Argument(Boolean, default=True),
                "sourceColumn": Argument(String, default="source"),
                "targetColumn": Argument(String, default="target"),
                "timeColumn": Argument(String, default="time"),
                "timeFormat": Argument(_TIME_FORMAT, default="EPOCH_SECONDS"),
                "layerColumn": Argument(String),
                "layer": Argument(String),
                "idType": Argument(String, default="str"),
                "propertyColumns": Argument(ListOf(NonNull(String))),
            },
            resolver=load_graph_mutation,
        ),
    })

    return Schema(query=query, mutation=mutation)


class TGraphServer:
    """HTTP front; safe for concurrent requests over immutable graphs."""

    def __init__(self, config: ServerConfig):
        config.validate()
        self.config = config
        self.registry = GraphRegistry(config.graph_dir)
        self.schema = build_schema(self.registry, config)
        registry = self.registry
        schema = self.schema

        class Handler(BaseHTTPRequestHandler):
            server_version = f"tgraph/{__version__}"

            def log_message(self, fmt, *args):  # default handler spams stderr
                log.debug("%s %s", self.address_string(), fmt % args)

            def _send(self, status: int, doc: dict) -> None:
                body = json.dumps(doc, ensure_ascii=False, sort_keys=True).encode("utf-8")
                self.send_response(status)
                self.send_header("Content-Type", "application/json; charset=utf-8")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)

            def do_GET(self):
                if self.path == "/health":
                    self._send(200, {
                        "status": "ok",
                        "service": "tgraph",
                        "version": __version__,
                        "graphs": registry.names(),
                    })
                elif self.path == "/graphql":
                    self._send(405, {"errors": [{"message": "use POST for /graphql"}]})
                else:
                    self._send(404, {"errors": [{"message": f"no such path {self.path}"}]})

            def do_POST(self):
                if self.path != "/graphql":
                    self._send(404, {"errors": [{"message": f"no such path {self.path}"}]})
                    return
                try:
                    length = int(self.headers.get("Content-Length", "0"))
                    payload = json.loads(self.rfile.read(length) or b"{}")
                    query = payload["query"]
                except (ValueError, KeyError, json.JSONDecodeError):
                    self._send(400, {"errors": [{"message": "request body must be JSON with a 'query' member"}]})
                    return
                response = execute(
                    schema,
                    query,
                    variables=payload.get("variables") or {},
                    operation_name=payload.get("operationName"),
                    root_value=registry,
                )
                self._send(200, response)

        self._httpd = ThreadingHTTPServer((config.host, config.port), Handler)
        self._httpd.daemon_threads = True
        self._thread: threading.Thread | None = None

    @property
    def host(self) -> str:
        return self._httpd.server_address[0]

    @property
    def port(self) -> int:
        return self._httpd.server_address[1]

    def serve_forever(self) -> None:
        self._httpd.serve_forever()

    def start_background(self) -> None:
        self._thread = threading.Thread(target=self._httpd.serve_forever, daemon=True)
        self._thread.start()

    def shutdown(self) -> None:
        self._httpd.shutdown()
        self._httpd.server_close()
        if self._thread is not None:
            self._thread.join(timeout=5)

    def execute(self, query: str, variables: dict | None = None,
                operation_name: str | None = None) -> dict:
        """In-process execution; same path the HTTP handler uses."""
        return execute(self.schema, query, variables=variables,
                       operation_name=operation_name, root_value=self.registry)


def serve(config: ServerConfig) -> TGraphServer:
    """Bind the service; call serve_forever() or start_background() on it."""
    return TGraphServer(config)


def schema_sdl() -> str:
    """The schema document as SDL (ships in the repo as schema.graphql)."""
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        registry = GraphRegistry(tmp)
        schema = build_schema(registry, ServerConfig(graph_dir=tmp))
    return print_sdl(schema)
