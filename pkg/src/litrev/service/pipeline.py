"""End-to-end ingestion: fetch -> normalize -> keywords -> filter -> full text
-> graph upserts + chunk/embed/index -> snapshot.

Full-text failures are soft (the paper stays in the graph without chunks);
stage counts land in the ingestion report.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from ..graph.model import PropertyGraph, upsert_paper
from ..ingest.filtering import relevance_filter
from ..ingest.fulltext import ExtractionFailed, NotAvailable, fetch_fulltext
from ..ingest.keywords import EmptyText, KeywordExtractor
from ..ingest.records import SearchRequest, normalize_and_dedup
from ..ingest.sources import fetch_records
from ..ingest.transport import FixtureTransport, HttpTransport, UrlTransport
from ..vector.bm25 import Bm25Index
from ..vector.chunking import chunk_document
from ..vector.dense import DenseIndex
from ..vector.embedding import HashingEmbedder, HttpEmbedder, embed
from .baseline import build_card_index, build_cards
from .config import PipelineConfig
from .snapshot import CorpusSnapshot

logger = logging.getLogger(__name__)


@dataclass
class IngestionReport:
    fetched: int = 0
    per_source: dict = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    after_normalize: int = 0
    after_filter: int = 0
    fulltext_ok: int = 0
    fulltext_failed: int = 0
    chunks: int = 0
    graph_nodes: int = 0
    graph_edges: int = 0

    def to_dict(self) -> dict:
        return {
            "fetched": self.fetched,
            "per_source": self.per_source,
            "warnings": self.warnings,
            "after_normalize": self.after_normalize,
            "after_filter": self.after_filter,
            "fulltext_ok": self.fulltext_ok,
            "fulltext_failed": self.fulltext_failed,
            "chunks": self.chunks,
            "graph_nodes": self.graph_nodes,
            "graph_edges": self.graph_edges,
        }


def make_transport(config: PipelineConfig) -> HttpTransport:
    if config.transport == "fixture":
        return FixtureTransport(config.fixture_root)
    return UrlTransport()


def make_embedder(config: PipelineConfig):
    if config.embedding_provider == "http":
        return HttpEmbedder(
            endpoint=config.embedding_endpoint,
            model=config.embedding_model,
            dim=config.embedding_dim,
        )
    return HashingEmbedder(dim=config.embedding_dim)


def run_pipeline(
    req: SearchRequest,
    config: PipelineConfig,
    transport: HttpTransport | None = None,
) -> tuple[CorpusSnapshot, IngestionReport]:
    config.validate()
    req.validate()
    transport = transport or make_transport(config)
    embedder = make_embedder(config)
    report = IngestionReport()

    fetch = fetch_records(
        req,
        transport,
        endpoints=config.source_endpoints,
        max_results=config.max_results_per_source,
    )
    report.fetched = len(fetch.records)
    for sr in fetch.reports:
        report.per_source[sr.source] = sr.count
        if not sr.ok:
            report.warnings.append(f"source {sr.source} failed: {sr.warning}")

    records = normalize_and_dedup(fetch.records)
    report.after_normalize = len(records)

    snapshot = CorpusSnapshot(config_hash=config.config_hash())
    if not records:
        report.warnings.append("no records survived normalization; snapshot is empty")
        snapshot.dense_index = DenseIndex(dim=config.embedding_dim)
        snapshot.bm25_index = Bm25Index(k1=config.bm25_k1, b=config.bm25_b).build([])
        snapshot.card_index = DenseIndex(dim=config.embedding_dim)
        return snapshot, report

    extractor = KeywordExtractor(records)
    keywords = {(r.doi, r.title): extractor.for_record(r) for r in records}
    try:
        query_kv = extractor.for_query(req.query)
    except EmptyText:
        query_kv = None
    if query_kv is None:
        retained = list(records)
        report.warnings.append("query produced no keywords; relevance filter skipped")
    else:
        retained = relevance_filter(records, keywords, query_kv)
        logger.info(
            "relevance filter retained %d/%d records", len(retained), len(records)
        )
    report.after_filter = len(retained)

    graph = PropertyGraph()
    chunks = []
    for rec in retained:
        text = None
        try:
            doc = fetch_fulltext(rec, transport)
            text = doc.text
            cited = doc.cited_dois
            report.fulltext_ok += 1
        except (NotAvailable, ExtractionFailed) as exc:
            cited = []
            report.fulltext_failed += 1
            report.warnings.append(f"fulltext unavailable for {rec.doi}: {exc}")
        upsert_paper(graph, rec, keywords[(rec.doi, rec.title)], cited)
        if text:
            chunks.extend(
                chunk_document(text, rec.doi, config.chunk_size, config.chunk_overlap)
            )

    report.chunks = len(chunks)
    report.graph_nodes, report.graph_edges = graph.counts()

    dense_index = DenseIndex(dim=config.embedding_dim)
    if chunks:
        vectors = embed([c.text for c in chunks], embedder)
        for chunk, vec in zip(chunks, vectors):
            dense_index.add(chunk.chunk_id, chunk.natural_key, vec)
    bm25_index = Bm25Index(k1=config.bm25_k1, b=config.bm25_b).build(
        [(c.chunk_id, c.natural_key, c.text) for c in chunks]
    )
    cards = build_cards(graph)
    card_index = build_card_index(cards, embedder)

    snapshot.records = retained
    snapshot.graph = graph
    snapshot.chunks = chunks
    snapshot.dense_index = dense_index
    snapshot.bm25_index = bm25_index
    snapshot.card_texts = cards
    snapshot.card_index = card_index
    return snapshot, report
