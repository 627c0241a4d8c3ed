"""Batch command-line frontend.

Subcommands: load (CSV -> graph file), stats, run (algorithms over view
constraints, optionally per rolling window), serve (GraphQL service).

Exit codes: 0 success, 1 flag validation, 2 load/ingestion errors,
3 algorithm errors. stdout carries only data; diagnostics go to stderr.
The TG_LOG environment variable (or --log-level) sets the log level.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .algorithms import (
    AlgorithmResult,
    PageRankConfig,
    degree_stats,
    pagerank,
    run_over_windows,
    temporal_motifs,
    temporal_reachability,
    top_k,
)
from .errors import GraphError, InvalidArgumentError, LoadError
from .graphio import (
    EdgeTableSpec,
    ExportFormat,
    TimeFormat,
    _dump_json,
    edge_list_csv_text,
    export,
    graph_document,
    load_edges,
    load_graph_json,
    result_csv_text,
    result_json_document,
)
from .views import GraphView, Semantics, full_view

log = logging.getLogger("tgraph")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_LOAD = 2
EXIT_ALGORITHM = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; the documented contract is 1
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tgraph", description=__doc__)
    parser.add_argument("--version", action="version", version=f"tgraph {__version__}")
    parser.add_argument("--log-level", default=None, help="overrides TG_LOG")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_load = sub.add_parser("load", help="ingest a CSV edge table into a graph file")
    p_load.add_argument("--input", required=True, help="CSV edge table")
    p_load.add_argument("--graph", required=True, help="output graph file (JSON)")
    p_load.add_argument("--delimiter", default=",")
    p_load.add_argument("--no-header", action="store_true")
    p_load.add_argument("--source-column", default="source")
    p_load.add_argument("--target-column", default="target")
    p_load.add_argument("--time-column", default="time")
    p_load.add_argument(
        "--time-format",
        choices=[f.value for f in TimeFormat],
        default=TimeFormat.EPOCH_SECONDS.value,
    )
    p_load.add_argument("--layer-column", default=None)
    p_load.add_argument("--layer", default=None)
    p_load.add_argument(
        "--property",
        action="append",
        default=[],
        metavar="COLUMN:TYPE",
        help="typed property column (types: int, float, str, bool)",
    )
    p_load.add_argument("--id-type", choices=["str", "int"], default="str")
    p_load.add_argument("--strict", action="store_true")

    p_stats = sub.add_parser("stats", help="node/edge counts and time bounds")
    p_stats.add_argument("--graph", required=True)

    p_run = sub.add_parser("run", help="run an algorithm over a view")
    p_run.add_argument("--graph", required=True)
    p_run.add_argument(
        "--algorithm",
        required=True,
        choices=["pagerank", "degree", "motifs", "reachability"],
    )
    window_group = p_run.add_mutually_exclusive_group()
    window_group.add_argument("--window", metavar="START:END")
    window_group.add_argument("--rolling", metavar="SIZE[:STEP]")
    window_group.add_argument("--at", type=int, metavar="T", help="snapshot as of T")
    window_group.add_argument("--expanding", type=int, metavar="STEP")
    p_run.add_argument("--layers", help="comma-separated layer names")
    p_run.add_argument("--nodes", help="comma-separated ids, or @file with one per line")
    p_run.add_argument("--semantics", choices=["event", "persistent"], default="event")
    p_run.add_argument("--delta", type=int, help="motif time span (ticks)")
    p_run.add_argument("--seeds", help="comma-separated seed ids (reachability)")
    p_run.add_argument("--start", type=int, help="reachability start time")
    p_run.add_argument("--max-hops", type=int, default=None)
    p_run.add_argument("--damping", type=float, default=0.85)
    p_run.add_argument("--tolerance", type=float, default=1e-7)
    p_run.add_argument("--max-iterations", type=int, default=100)
    p_run.add_argument("--top", type=int, default=None, help="keep only the top K rows")
    p_run.add_argument("--format", choices=["csv", "json"], default="csv")
    p_run.add_argument("--output", default=None)

    p_export = sub.add_parser("export", help="export a graph file (optionally a view of it) as CSV/JSON")
    p_export.add_argument("--graph", required=True)
    p_export.add_argument("--format", choices=["csv", "json"], default="csv")
    p_export.add_argument("--output", default=None)
    export_group = p_export.add_mutually_exclusive_group()
    export_group.add_argument("--window", metavar="START:END")
    export_group.add_argument("--at", type=int, metavar="T")
    p_export.add_argument("--layers", help="comma-separated layer names")
    p_export.add_argument("--nodes", help="comma-separated ids, or @file with one per line")
    p_export.add_argument("--semantics", choices=["event", "persistent"], default="event")

    p_serve = sub.add_parser("serve", help="run the GraphQL service")
    p_serve.add_argument("--graph-dir", required=True)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=1736)
    p_serve.add_argument("--page-size", type=int, default=1000)
    p_serve.add_argument("--timeout", type=float, default=30.0)
    return parser


def _configure_logging(level_flag: str | None) -> None:
    level = level_flag or os.environ.get("TG_LOG", "WARNING")
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, str(level).upper(), logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
    )


def _parse_properties(items: list[str]) -> tuple[tuple[str, str], ...]:
    out = []
    for item in items:
        column, sep, tag = item.partition(":")
        if not sep or not column or tag not in ("int", "float", "str", "bool"):
            raise InvalidArgumentError(
                f"--property must look like COLUMN:TYPE, got {item!r}"
            )
        out.append((column, tag))
    return tuple(out)


def _split_ids(raw: str) -> list[str]:
    if raw.startswith("@"):
        lines = Path(raw[1:]).read_text(encoding="utf-8").splitlines()
        return [ln.strip() for ln in lines if ln.strip()]
    return [part for part in raw.split(",") if part]


def cmd_load(args) -> int:
    spec = EdgeTableSpec(
        path=args.input,
        delimiter=args.delimiter,
        header=not args.no_header,
        source_column=args.source_column,
        target_column=args.target_column,
        time_column=args.time_column,
        time_format=TimeFormat(args.time_format),
        layer_column=args.layer_column,
        layer=args.layer,
        property_columns=_parse_properties(args.property),
        id_type=args.id_type,
        strict=args.strict,
    )
    try:
        result = load_edges(spec)
    except LoadError as exc:
        print(f"load failed: {exc}", file=sys.stderr)
        return EXIT_LOAD
    for err in result.errors:
        print(f"line {err.line}: {err.message}", file=sys.stderr)
    export(full_view(result.graph), ExportFormat.GRAPH_JSON, args.graph)
    noun = "edge" if result.valid_rows == 1 else "edges"
    err_noun = "error" if len(result.errors) == 1 else "errors"
    print(f"loaded {result.valid_rows} {noun}, {len(result.errors)} {err_noun}")
    return EXIT_OK


def cmd_stats(args) -> int:
    try:
        g = load_graph_json(args.graph)
    except LoadError as exc:
        print(f"cannot load graph: {exc}", file=sys.stderr)
        return EXIT_LOAD
    print(f"nodes: {g.count_nodes()}")
    print(f"edges: {g.count_edges()}")
    try:
        print(f"earliest: {g.earliest_time()}")
        print(f"latest: {g.latest_time()}")
    except GraphError:
        print("no events")
    return EXIT_OK


def _parse_window_flag(raw: str) -> tuple[int, int]:
    try:
        start_s, end_s = raw.split(":", 1)
        start, end = int(start_s), int(end_s)
    except ValueError:
        raise InvalidArgumentError(f"--window must look like START:END, got {raw!r}")
    if start >= end:
        raise InvalidArgumentError("start must precede end")
    return start, end


def _parse_rolling_flag(raw: str) -> tuple[int, int | None]:
    parts = raw.split(":")
    try:
        size = int(parts[0])
        step = int(parts[1]) if len(parts) > 1 else None
    except (ValueError, IndexError):
        raise InvalidArgumentError(f"--rolling must look like SIZE[:STEP], got {raw!r}")
    if size <= 0 or (step is not None and step <= 0):
        raise InvalidArgumentError("--rolling size and step must be positive")
    return size, step


def _build_view(g, args) -> GraphView:
    view = full_view(g)
    if args.semantics == "persistent":
        view = view.with_semantics(Semantics.PERSISTENT)
    if args.layers:
        view = view.layers(_split_ids(args.layers))
    if args.nodes:
        view = view.subgraph(_split_ids(args.nodes))
    if args.window:
        view = view.with_window(*_parse_window_flag(args.window))
    if getattr(args, "at", None) is not None:
        view = view.at(args.at)
    return view


def _run_algorithm(view: GraphView, args):
    name = args.algorithm
    windows = None
    if args.rolling:
        size, step = _parse_rolling_flag(args.rolling)
        windows = view.rolling(size, step)
    elif args.expanding is not None:
        if args.expanding <= 0:
            raise InvalidArgumentError("--expanding step must be positive")
        windows = view.expanding(args.expanding)
    if name == "pagerank":
        cfg = PageRankConfig(
            damping=args.damping,
            tolerance=args.tolerance,
            max_iterations=args.max_iterations,
        )
        if windows is not None:
            return run_over_windows(view, windows, pagerank, cfg)
        result = pagerank(view, cfg)
    elif name == "degree":
        if windows is not None:
            return run_over_windows(view, windows, degree_stats)
        result = degree_stats(view)
    elif name == "motifs":
        if args.delta is None:
            raise InvalidArgumentError("--delta is required for motifs")
        if windows is not None:
            raise InvalidArgumentError("windowed runs are not supported for motifs")
        return temporal_motifs(view, args.delta)
    else:  # reachability
        if not args.seeds:
            raise InvalidArgumentError("--seeds is required for reachability")
        if windows is not None:
            raise InvalidArgumentError("windowed runs are not supported for reachability")
        start = args.start if args.start is not None else view.earliest_time()
        seeds = _split_ids(args.seeds)
        reach = temporal_reachability(view, seeds, start, max_hops=args.max_hops)
        return reach.as_algorithm_result(view, start)
    if args.top is not None:
        kept = top_k(result, args.top)
        result = AlgorithmResult(
            name=result.name,
            rows=dict(kept),
            metadata={**result.metadata, "top_k": args.top},
        )
    return result


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_run(args) -> int:
    try:
        g = load_graph_json(args.graph)
    except LoadError as exc:
        print(f"cannot load graph: {exc}", file=sys.stderr)
        return EXIT_LOAD
    try:
        view = _build_view(g, args)
        result = _run_algorithm(view, args)
    except InvalidArgumentError as exc:
        print(f"invalid arguments: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphError as exc:
        print(f"algorithm failed: {exc}", file=sys.stderr)
        return EXIT_ALGORITHM
    if args.format == "json":
        text = _dump_json(result_json_document(result))
    else:
        text = result_csv_text(result)
    _emit(text, args.output)
    return EXIT_OK


def cmd_export(args) -> int:
    try:
        g = load_graph_json(args.graph)
    except LoadError as exc:
        print(f"cannot load graph: {exc}", file=sys.stderr)
        return EXIT_LOAD
    try:
        view = _build_view(g, args)
    except InvalidArgumentError as exc:
        print(f"invalid arguments: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        text = _dump_json(graph_document(view))
    else:
        text = edge_list_csv_text(view)
    _emit(text, args.output)
    return EXIT_OK


def cmd_serve(args) -> int:
    from .service import ServerConfig, serve

    config = ServerConfig(
        host=args.host,
        port=args.port,
        graph_dir=args.graph_dir,
        page_size=args.page_size,
        algorithm_timeout=args.timeout,
    )
    try:
        server = serve(config)
    except (OSError, GraphError) as exc:
        print(f"cannot start service: {exc}", file=sys.stderr)
        return EXIT_LOAD
    print(f"listening on http://{server.host}:{server.port}/graphql", file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.log_level)
    try:
        if args.command == "load":
            return cmd_load(args)
        if args.command == "stats":
            return cmd_stats(args)
        if args.command == "run":
            return cmd_run(args)
        if args.command == "export":
            return cmd_export(args)
        return cmd_serve(args)
    except InvalidArgumentError as exc:
        print(f"invalid arguments: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ALGORITHM


if __name__ == "__main__":
    sys.exit(main())
