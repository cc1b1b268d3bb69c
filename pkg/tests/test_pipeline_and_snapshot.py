import json

import pytest

from litrev.ingest.records import SearchRequest
from litrev.ingest.transport import FixtureTransport
from litrev.service.config import PipelineConfig
from litrev.service.pipeline import run_pipeline
from litrev.service.snapshot import (
    CorpusSnapshot,
    CorruptSnapshot,
    SNAPSHOT_VERSION,
    VersionMismatch,
)

from conftest import E2E_QUERY
from oracles import q3_oracle

from litrev.ingest.filtering import relevance_scores
from litrev.ingest.keywords import KeywordExtractor
from litrev.ingest.records import normalize_and_dedup
from litrev.ingest.sources import fetch_records


def mini_config(fixtures_dir):
    return PipelineConfig(
        sources=["arxiv"],
        transport="fixture",
        fixture_root=str(fixtures_dir / "transport_mini"),
    )


def e2e_config(fixtures_dir):
    return PipelineConfig(
        sources=["arxiv"],
        transport="fixture",
        fixture_root=str(fixtures_dir / "transport"),
    )


def request():
    return SearchRequest(query=E2E_QUERY, sources=["arxiv"], date_from=2023, date_to=2025)


def test_mini_corpus_stage_counts_match_oracle(fixtures_dir):
    config = mini_config(fixtures_dir)
    snapshot, report = run_pipeline(request(), config)
    # 8 fetched; the 2 duplicate/missing-value rows fall out in normalization.
    assert report.fetched == 8
    assert report.after_normalize == 6

    # Independent retention oracle: recompute CS scores and count those > Q3.
    transport = FixtureTransport(config.fixture_root)
    records = normalize_and_dedup(fetch_records(request(), transport).records)
    extractor = KeywordExtractor(records)
    keywords = {(r.doi, r.title): extractor.for_record(r) for r in records}
    scores = relevance_scores(records, keywords, extractor.for_query(E2E_QUERY))
    expected_retained = sum(1 for s in scores if s > q3_oracle(scores))
    assert report.after_filter == expected_retained
    assert len(snapshot.records) == expected_retained
    assert report.fulltext_ok == expected_retained
    assert report.chunks == len(snapshot.chunks) > 0


def test_pipeline_builds_queryable_stores(fixtures_dir):
    snapshot, report = run_pipeline(request(), e2e_config(fixtures_dir))
    assert report.after_filter == 8
    assert len(snapshot.chunks) >= 20
    assert len(snapshot.dense_index) == len(snapshot.chunks)
    assert snapshot.bm25_index.n_chunks == len(snapshot.chunks)
    assert len(snapshot.card_texts) == 8
    nodes, edges = snapshot.graph.counts()
    assert nodes > 8 and edges > 8
    # cited DOIs were harvested into Citation nodes
    assert snapshot.graph.nodes_with_label("Citation")


class _EmptyTransport:
    def request(self, url, params=None):
        if "arxiv" in url:
            return (
                b'<?xml version="1.0"?>'
                b'<feed xmlns="http://www.w3.org/2005/Atom"></feed>'
            )
        raise AssertionError("unexpected request")


def test_empty_fetch_yields_valid_empty_snapshot_with_warning(fixtures_dir):
    config = e2e_config(fixtures_dir)
    snapshot, report = run_pipeline(request(), config, transport=_EmptyTransport())
    assert report.fetched == 0
    assert snapshot.records == [] and snapshot.chunks == []
    assert any("no records" in w for w in report.warnings)
    assert len(snapshot.dense_index) == 0


def test_rerun_is_deterministic_including_snapshot_bytes(fixtures_dir, tmp_path):
    config = e2e_config(fixtures_dir)
    snap_a, report_a = run_pipeline(request(), config)
    snap_b, report_b = run_pipeline(request(), config)
    assert report_a.to_dict() == report_b.to_dict()
    path_a, path_b = tmp_path / "a.json", tmp_path / "b.json"
    snap_a.save(path_a)
    snap_b.save(path_b)
    assert path_a.read_bytes() == path_b.read_bytes()
    assert snap_a.config_hash == config.config_hash()


def test_snapshot_save_load_round_trip_preserves_queries(fixtures_dir, tmp_path):
    snapshot, _ = run_pipeline(request(), e2e_config(fixtures_dir))
    path = tmp_path / "snap.json"
    snapshot.save(path)
    restored = CorpusSnapshot.load(path)
    assert restored.graph.to_dict() == snapshot.graph.to_dict()
    query_vec = None
    from litrev.vector.embedding import HashingEmbedder

    embedder = HashingEmbedder(dim=384)
    query_vec = embedder.embed_one("multimodal fusion healthcare")
    assert restored.dense_index.search(query_vec, 5) == snapshot.dense_index.search(
        query_vec, 5
    )
    assert restored.bm25_index.search("fusion healthcare", 5) == \
        snapshot.bm25_index.search("fusion healthcare", 5)
    from litrev.graph.cypher_parser import parse_cypher
    from litrev.graph.executor import execute

    q = parse_cypher("MATCH (p:Paper)-[:PUBLISHED_IN]->(y:Year) RETURN y.value, COUNT(p)")
    assert execute(q, restored.graph).rows == execute(q, snapshot.graph).rows


def test_truncated_snapshot_is_corrupt(fixtures_dir, tmp_path):
    snapshot, _ = run_pipeline(request(), mini_config(fixtures_dir))
    path = tmp_path / "snap.json"
    snapshot.save(path)
    data = path.read_bytes()
    path.write_bytes(data[: len(data) // 2])
    with pytest.raises(CorruptSnapshot):
        CorpusSnapshot.load(path)


def test_tampered_snapshot_fails_checksum(fixtures_dir, tmp_path):
    snapshot, _ = run_pipeline(request(), mini_config(fixtures_dir))
    path = tmp_path / "snap.json"
    snapshot.save(path)
    container = json.loads(path.read_text())
    container["data"]["config_hash"] = "feedfacefeedface"
    path.write_text(json.dumps(container))
    with pytest.raises(CorruptSnapshot):
        CorpusSnapshot.load(path)


def test_version_mismatch_names_both_versions(fixtures_dir, tmp_path):
    snapshot, _ = run_pipeline(request(), mini_config(fixtures_dir))
    path = tmp_path / "snap.json"
    snapshot.save(path)
    container = json.loads(path.read_text())
    container["version"] = 99
    path.write_text(json.dumps(container))
    with pytest.raises(VersionMismatch) as err:
        CorpusSnapshot.load(path)
    assert "99" in str(err.value) and str(SNAPSHOT_VERSION) in str(err.value)
