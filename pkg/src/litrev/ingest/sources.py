"""Source adapters for PubMed E-utilities, the ArXiv Atom feed, and a
scholar-style JSON endpoint, plus the multi-source fetch entry point.

A source failure is soft: the fetch proceeds with whichever sources
answered and records a warning in the per-source report. Only when every
requested source fails does the call raise.
"""

from __future__ import annotations

import logging
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from .records import BibRecord, InvalidRequest, SearchRequest
from .transport import HttpTransport, TransportError

logger = logging.getLogger(__name__)

DEFAULT_ENDPOINTS = {
    "pubmed": "https://eutils.ncbi.nlm.nih.gov/entrez/eutils",
    "arxiv": "https://export.arxiv.org/api/query",
    "scholar": "https://scholar.example.org/api/search",
}

_ATOM_NS = {
    "atom": "http://www.w3.org/2005/Atom",
    "arxiv": "http://arxiv.org/schemas/atom",
}


class AllSourcesFailed(RuntimeError):
    """Every requested source errored."""


@dataclass
class SourceReport:
    source: str
    ok: bool
    count: int = 0
    warning: str = ""


@dataclass
class FetchResult:
    records: list[BibRecord] = field(default_factory=list)
    reports: list[SourceReport] = field(default_factory=list)


def _text(elem, default: str = "") -> str:
    return (elem.text or default).strip() if elem is not None else default


def parse_pubmed_ids(data: bytes) -> list[str]:
    root = ET.fromstring(data)
    return [_text(e) for e in root.findall(".//IdList/Id")]


def parse_pubmed_articles(data: bytes) -> list[BibRecord]:
    root = ET.fromstring(data)
    out = []
    for art in root.findall(".//PubmedArticle"):
        doi = ""
        pmc = ""
        for aid in art.findall(".//ArticleIdList/ArticleId"):
            if aid.get("IdType") == "doi":
                doi = _text(aid)
            elif aid.get("IdType") == "pmc":
                pmc = _text(aid)
        title = _text(art.find(".//ArticleTitle"))
        abstract = " ".join(
            _text(a) for a in art.findall(".//Abstract/AbstractText")
        ).strip()
        year_text = _text(art.find(".//JournalIssue/PubDate/Year"))
        if not year_text:
            # MedlineDate like "2023 Jan-Feb": take the leading year.
            year_text = _text(art.find(".//JournalIssue/PubDate/MedlineDate"))[:4]
        year = int(year_text) if year_text.isdigit() else 0
        authors = []
        for au in art.findall(".//AuthorList/Author"):
            last = _text(au.find("LastName"))
            fore = _text(au.find("ForeName"))
            name = f"{fore} {last}".strip()
            if name:
                authors.append(name)
        pdf_url = (
            f"https://www.ncbi.nlm.nih.gov/pmc/articles/{pmc}/pdf/" if pmc else ""
        )
        out.append(
            BibRecord(
                doi=doi,
                title=title,
                abstract=abstract,
                year=year,
                authors=authors,
                pdf_url=pdf_url,
                source_db="pubmed",
            )
        )
    return out


def fetch_pubmed(
    req: SearchRequest, transport: HttpTransport, base_url: str, max_results: int
) -> list[BibRecord]:
    params = {
        "db": "pubmed",
        "term": req.query,
        "retmax": str(max_results),
        "retmode": "xml",
    }
    if req.date_from is not None:
        params["mindate"] = str(req.date_from)
        params["datetype"] = "pdat"
    if req.date_to is not None:
        params["maxdate"] = str(req.date_to)
        params["datetype"] = "pdat"
    ids = parse_pubmed_ids(transport.request(f"{base_url}/esearch.fcgi", params))
    if not ids:
        return []
    data = transport.request(
        f"{base_url}/efetch.fcgi",
        {"db": "pubmed", "id": ",".join(ids), "retmode": "xml"},
    )
    return parse_pubmed_articles(data)


def parse_arxiv_feed(data: bytes) -> list[BibRecord]:
    root = ET.fromstring(data)
    out = []
    for entry in root.findall("atom:entry", _ATOM_NS):
        arxiv_id = _text(entry.find("atom:id", _ATOM_NS)).rsplit("/", 1)[-1]
        doi = _text(entry.find("arxiv:doi", _ATOM_NS))
        if not doi and arxiv_id:
            doi = f"10.48550/arXiv.{arxiv_id}"
        published = _text(entry.find("atom:published", _ATOM_NS))
        year = int(published[:4]) if published[:4].isdigit() else 0
        pdf_url = ""
        for link in entry.findall("atom:link", _ATOM_NS):
            if link.get("title") == "pdf" or link.get("type") == "application/pdf":
                pdf_url = link.get("href", "")
        out.append(
            BibRecord(
                doi=doi,
                title=_text(entry.find("atom:title", _ATOM_NS)),
                abstract=_text(entry.find("atom:summary", _ATOM_NS)),
                year=year,
                authors=[
                    _text(a.find("atom:name", _ATOM_NS))
                    for a in entry.findall("atom:author", _ATOM_NS)
                ],
                pdf_url=pdf_url,
                source_db="arxiv",
            )
        )
    return out


def fetch_arxiv(
    req: SearchRequest, transport: HttpTransport, base_url: str, max_results: int
) -> list[BibRecord]:
    data = transport.request(
        base_url,
        {"search_query": req.query, "start": "0", "max_results": str(max_results)},
    )
    records = parse_arxiv_feed(data)
    if req.date_from is not None:
        records = [r for r in records if r.year == 0 or r.year >= req.date_from]
    if req.date_to is not None:
        records = [r for r in records if r.year == 0 or r.year <= req.date_to]
    return records


def fetch_scholar(
    req: SearchRequest, transport: HttpTransport, base_url: str, max_results: int
) -> list[BibRecord]:
    import json

    params = {"q": req.query, "limit": str(max_results)}
    if req.date_from is not None:
        params["year_from"] = str(req.date_from)
    if req.date_to is not None:
        params["year_to"] = str(req.date_to)
    payload = json.loads(transport.request(base_url, params))
    out = []
    for item in payload.get("results", []):
        rec = BibRecord.from_dict(item)
        rec.source_db = "scholar"
        out.append(rec)
    return out


_FETCHERS = {
    "pubmed": fetch_pubmed,
    "arxiv": fetch_arxiv,
    "scholar": fetch_scholar,
}


def fetch_records(
    req: SearchRequest,
    transport: HttpTransport,
    endpoints: dict[str, str] | None = None,
    max_results: int = 100,
) -> FetchResult:
    """Fetch raw records from every requested source.

    Raises InvalidRequest on a bad request and AllSourcesFailed when no
    source answered; partial failures become warnings in the report.
    """
    req.validate()
    endpoints = {**DEFAULT_ENDPOINTS, **(endpoints or {})}
    result = FetchResult()
    failures = 0
    for source in req.sources:
        fetcher = _FETCHERS[source]
        try:
            records = fetcher(req, transport, endpoints[source], max_results)
        except (TransportError, ET.ParseError, ValueError, KeyError) as exc:
            failures += 1
            logger.warning("source %s failed: %s", source, exc)
            result.reports.append(
                SourceReport(source=source, ok=False, warning=str(exc))
            )
            continue
        result.records.extend(records)
        result.reports.append(SourceReport(source=source, ok=True, count=len(records)))
    if failures == len(req.sources):
        raise AllSourcesFailed(
            "; ".join(f"{r.source}: {r.warning}" for r in result.reports)
        )
    return result
