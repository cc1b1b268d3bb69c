import pytest

from litrev.ingest.records import InvalidRequest, SearchRequest
from litrev.ingest.sources import (
    AllSourcesFailed,
    fetch_records,
    parse_arxiv_feed,
    parse_pubmed_articles,
)
from litrev.ingest.transport import FixtureTransport, TransportError


@pytest.fixture
def adapters(fixtures_dir):
    return FixtureTransport(fixtures_dir / "transport_adapters")


def test_fixture_transport_unknown_route_raises(adapters):
    with pytest.raises(TransportError):
        adapters.request("https://nowhere.example.org/zzz")


def test_arxiv_fixture_round_trips_two_records(adapters):
    req = SearchRequest(query="anything", sources=["arxiv"])
    result = fetch_records(req, adapters)
    assert len(result.records) == 2
    assert all(r.source_db == "arxiv" for r in result.records)
    assert result.records[0].doi == "10.7777/fx000"
    assert result.records[0].authors and result.records[0].pdf_url
    assert [r.ok for r in result.reports] == [True]


def test_arxiv_date_filter_applies_client_side(adapters):
    req = SearchRequest(query="anything", sources=["arxiv"], date_from=2024, date_to=2024)
    result = fetch_records(req, adapters)
    assert all(r.year == 2024 for r in result.records)


def test_pubmed_two_step_fetch(adapters):
    req = SearchRequest(query="sepsis", sources=["pubmed"], date_from=2023, date_to=2025)
    result = fetch_records(req, adapters)
    assert len(result.records) == 2
    first, second = result.records
    assert first.doi == "10.8888/pm001"
    assert first.year == 2024
    assert first.authors == ["Priya Nair", "Marcus Webb"]
    assert "PMC9000001" in first.pdf_url
    assert second.year == 2023  # parsed from MedlineDate
    assert second.pdf_url == ""


def test_scholar_json_endpoint(adapters):
    req = SearchRequest(query="triage", sources=["scholar"])
    result = fetch_records(req, adapters)
    assert [r.doi for r in result.records] == ["10.9999/sc001", "10.9999/sc002"]
    assert all(r.source_db == "scholar" for r in result.records)


def test_empty_sources_is_invalid(adapters):
    with pytest.raises(InvalidRequest):
        fetch_records(SearchRequest(query="q", sources=[]), adapters)


class _FailingTransport:
    def request(self, url, params=None):
        raise TransportError("boom")


def test_all_sources_failed():
    req = SearchRequest(query="q", sources=["pubmed", "arxiv"])
    with pytest.raises(AllSourcesFailed):
        fetch_records(req, _FailingTransport())


class _PartialTransport:
    def __init__(self, inner):
        self.inner = inner

    def request(self, url, params=None):
        if "arxiv" in url:
            return self.inner.request(url, params)
        raise TransportError("pubmed down")


def test_partial_failure_keeps_surviving_source_and_warns(adapters):
    req = SearchRequest(query="q", sources=["pubmed", "arxiv"])
    result = fetch_records(req, _PartialTransport(adapters))
    assert len(result.records) == 2
    by_source = {r.source: r for r in result.reports}
    assert by_source["pubmed"].ok is False and by_source["pubmed"].warning
    assert by_source["arxiv"].ok is True


def test_parse_pubmed_handles_missing_doi():
    xml = b"""<?xml version="1.0"?><PubmedArticleSet><PubmedArticle>
      <MedlineCitation><Article>
        <Journal><JournalIssue><PubDate><Year>2022</Year></PubDate></JournalIssue></Journal>
        <ArticleTitle>T</ArticleTitle>
      </Article></MedlineCitation>
    </PubmedArticle></PubmedArticleSet>"""
    records = parse_pubmed_articles(xml)
    assert len(records) == 1
    assert records[0].doi == ""  # dropped later by normalization


def test_parse_arxiv_derives_doi_when_absent():
    xml = b"""<?xml version="1.0"?>
    <feed xmlns="http://www.w3.org/2005/Atom">
      <entry>
        <id>http://arxiv.org/abs/2401.00001</id>
        <title>T</title><summary>S</summary>
        <published>2024-01-01T00:00:00Z</published>
        <author><name>A B</name></author>
      </entry>
    </feed>"""
    records = parse_arxiv_feed(xml)
    assert records[0].doi == "10.48550/arXiv.2401.00001"
