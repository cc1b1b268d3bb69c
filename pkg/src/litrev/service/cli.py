"""Command-line interface.

Verbs: ingest (build a snapshot from a search), query (one-shot question),
cypher (debug: run raw subset-Cypher, print TSV), bench (benchmark + report
files), serve (HTTP API), snapshot (info/verify). --config, --snapshot, and
--seed pin reproducible runs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..graph.cypher_parser import ParseError, UnsupportedFeature, parse_cypher
from ..graph.executor import UnknownEdgeType, UnknownLabel, execute
from ..ingest.records import SOURCES, SearchRequest
from .config import PipelineConfig
from .engine import Engine, EngineError
from .pipeline import run_pipeline
from .snapshot import CorpusSnapshot, CorruptSnapshot, VersionMismatch


def _load_config(args) -> PipelineConfig:
    config = PipelineConfig.load(args.config) if args.config else PipelineConfig()
    if getattr(args, "seed", None) is not None:
        config.seed = args.seed
    config.validate()
    return config


def _load_engine(args) -> Engine:
    config = _load_config(args)
    engine = Engine(config)
    if not args.snapshot:
        print("error: --snapshot is required", file=sys.stderr)
        raise SystemExit(2)
    engine.load_snapshot(args.snapshot)
    return engine


def cmd_ingest(args) -> int:
    config = _load_config(args)
    req = SearchRequest(
        query=args.query,
        sources=args.sources.split(",") if args.sources else list(config.sources),
        date_from=args.date_from,
        date_to=args.date_to,
    )
    snapshot, report = run_pipeline(req, config)
    out = Path(args.snapshot or Path(config.snapshot_dir) / "snapshot.json")
    out.parent.mkdir(parents=True, exist_ok=True)
    snapshot.save(out)
    print(json.dumps({"snapshot": str(out), "report": report.to_dict()}, indent=2))
    return 0


def cmd_query(args) -> int:
    engine = _load_engine(args)
    try:
        routed, trace_id = engine.handle_query(args.question, forced_tool=args.tool)
    except EngineError as exc:
        print(f"error: {exc} (trace {exc.trace_id})", file=sys.stderr)
        return 1
    payload = routed.to_dict()
    payload["trace_id"] = trace_id
    print(json.dumps(payload, indent=2, ensure_ascii=False))
    return 0


def cmd_cypher(args) -> int:
    if not args.snapshot:
        print("error: --snapshot is required", file=sys.stderr)
        return 2
    snapshot = CorpusSnapshot.load(args.snapshot)
    try:
        table = execute(parse_cypher(args.query), snapshot.graph)
    except (ParseError, UnsupportedFeature, UnknownLabel, UnknownEdgeType) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(table.render_tsv())
    return 0


def cmd_bench(args) -> int:
    engine = _load_engine(args)
    out_dir = args.out or str(Path(engine.config.snapshot_dir) / "benchmark")
    report = engine.run_benchmark(
        out_dir,
        benchmark_path=args.benchmark,
        modes=args.modes.split(",") if args.modes else None,
    )
    print(Engine.report_tsv(report), end="")
    print(f"report written to {out_dir}/report.json", file=sys.stderr)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    engine = _load_engine(args)
    app = create_app(engine)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def cmd_snapshot(args) -> int:
    try:
        snapshot = CorpusSnapshot.load(args.path)
    except (CorruptSnapshot, VersionMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.export_records:
        from ..ingest.records import write_records_jsonl

        write_records_jsonl(snapshot.records, args.export_records)
        print(f"wrote {len(snapshot.records)} records to {args.export_records}")
        return 0
    nodes, edges = snapshot.graph.counts()
    info = {
        "version": snapshot.version,
        "config_hash": snapshot.config_hash,
        "records": len(snapshot.records),
        "chunks": len(snapshot.chunks),
        "graph_nodes": nodes,
        "graph_edges": edges,
        "dense_vectors": len(snapshot.dense_index) if snapshot.dense_index else 0,
        "cards": len(snapshot.card_texts),
    }
    print(json.dumps(info, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="litrev")
    parser.add_argument("--config", help="path to a JSON config file")
    parser.add_argument("--seed", type=int, help="override the config RNG seed")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="run the ingestion pipeline into a snapshot")
    p.add_argument("query", help="boolean search query")
    p.add_argument("--sources", help=f"comma list from {','.join(SOURCES)}")
    p.add_argument("--date-from", type=int, dest="date_from")
    p.add_argument("--date-to", type=int, dest="date_to")
    p.add_argument("--snapshot", help="output snapshot path")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("query", help="answer one question against a snapshot")
    p.add_argument("question")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--tool", choices=["graph", "vector"], help="force a tool")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("cypher", help="run raw subset-Cypher and print TSV")
    p.add_argument("query")
    p.add_argument("--snapshot", required=True)
    p.set_defaults(func=cmd_cypher)

    p = sub.add_parser("bench", help="generate/answer/score the benchmark")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--benchmark", help="existing benchmark JSONL to reuse")
    p.add_argument("--modes", help="comma list: baseline,agentic,agentic_dpo")
    p.add_argument("--out", help="report output directory")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("serve", help="serve the HTTP API")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("snapshot", help="inspect/verify a snapshot file")
    p.add_argument("path")
    p.add_argument(
        "--export-records",
        dest="export_records",
        help="write the snapshot's records as interchange JSONL to this path",
    )
    p.set_defaults(func=cmd_snapshot)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
