"""HTTP JSON API over a loaded engine.

Endpoints: POST /query, POST /ingest, GET /graph/schema, POST
/benchmark/run, GET /benchmark/report, GET /trace/{id}, GET /health. Every
query response carries its trace id. When LITREV_API_TOKEN is set, requests
must send it in the X-API-Token header.
"""

from __future__ import annotations

import os
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request
from pydantic import BaseModel

from ..graph.schema import schema_text
from ..ingest.records import InvalidRequest, SearchRequest
from .engine import Engine, EngineError
from .pipeline import run_pipeline


class QueryBody(BaseModel):
    question: str = ""
    tool: str | None = None


class IngestBody(BaseModel):
    query: str
    sources: list[str] | None = None
    date_from: int | None = None
    date_to: int | None = None


class BenchmarkBody(BaseModel):
    modes: list[str] | None = None
    out_dir: str | None = None


def create_app(engine: Engine) -> FastAPI:
    app = FastAPI(title="litrev", version="0.1.0")
    state = {"last_report": None}

    @app.middleware("http")
    async def token_guard(request: Request, call_next):
        token = os.environ.get("LITREV_API_TOKEN", "")
        if token and request.headers.get("X-API-Token") != token:
            from fastapi.responses import JSONResponse

            return JSONResponse(status_code=401, content={"detail": "bad API token"})
        return await call_next(request)

    @app.get("/health")
    def health():
        return {"status": "ok", "loaded": engine.loaded}

    @app.post("/query")
    def query(body: QueryBody):
        if not body.question.strip():
            raise HTTPException(status_code=400, detail="question must be nonempty")
        if not engine.loaded:
            raise HTTPException(status_code=503, detail="no snapshot loaded")
        try:
            routed, trace_id = engine.handle_query(
                body.question, forced_tool=body.tool
            )
        except EngineError as exc:
            raise HTTPException(
                status_code=502,
                detail={"error": str(exc), "trace_id": exc.trace_id},
            ) from exc
        payload = routed.to_dict()
        payload["trace_id"] = trace_id
        return payload

    @app.post("/ingest")
    def ingest(body: IngestBody):
        req = SearchRequest(
            query=body.query,
            sources=body.sources or list(engine.config.sources),
            date_from=body.date_from,
            date_to=body.date_to,
        )
        try:
            snapshot, report = run_pipeline(req, engine.config)
        except InvalidRequest as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        # Swap in the freshly built snapshot atomically.
        engine.snapshot = snapshot
        engine.agent = engine._build_agent()
        snap_dir = Path(engine.config.snapshot_dir)
        snap_dir.mkdir(parents=True, exist_ok=True)
        path = snap_dir / "snapshot.json"
        snapshot.save(path)
        return {"snapshot": str(path), "report": report.to_dict()}

    @app.get("/graph/schema")
    def graph_schema():
        return {"schema": schema_text()}

    @app.post("/benchmark/run")
    def benchmark_run(body: BenchmarkBody):
        if not engine.loaded:
            raise HTTPException(status_code=503, detail="no snapshot loaded")
        out_dir = body.out_dir or str(Path(engine.config.snapshot_dir) / "benchmark")
        try:
            report = engine.run_benchmark(out_dir, modes=body.modes)
        except EngineError as exc:
            raise HTTPException(status_code=502, detail=str(exc)) from exc
        state["last_report"] = report
        return report

    @app.get("/benchmark/report")
    def benchmark_report():
        if state["last_report"] is not None:
            return state["last_report"]
        report_path = Path(engine.config.snapshot_dir) / "benchmark" / "report.json"
        if report_path.exists():
            import json

            return json.loads(report_path.read_text(encoding="utf-8"))
        raise HTTPException(status_code=404, detail="no benchmark report available")

    @app.get("/trace/{trace_id}")
    def trace(trace_id: str):
        found = engine.traces.get(trace_id)
        if found is None:
            raise HTTPException(status_code=404, detail=f"unknown trace {trace_id}")
        return found

    return app
