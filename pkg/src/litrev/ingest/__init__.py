"""Bibliometric ingestion: fetch, normalize, keyword-extract, and filter records."""

from .filtering import cosine_similarity, relevance_filter, relevance_scores
from .fulltext import ExtractionFailed, FullTextDocument, NotAvailable, fetch_fulltext
from .keywords import EmptyText, KeywordExtractor, KeywordVector, extract_keywords
from .records import (
    BibRecord,
    InvalidRequest,
    SearchRequest,
    normalize_and_dedup,
    read_records_jsonl,
    write_records_jsonl,
)
from .sources import AllSourcesFailed, FetchResult, SourceReport, fetch_records
from .transport import FixtureTransport, HttpTransport, TransportError, UrlTransport

__all__ = [
    "AllSourcesFailed",
    "BibRecord",
    "EmptyText",
    "ExtractionFailed",
    "FetchResult",
    "FixtureTransport",
    "FullTextDocument",
    "HttpTransport",
    "InvalidRequest",
    "KeywordExtractor",
    "KeywordVector",
    "NotAvailable",
    "SearchRequest",
    "SourceReport",
    "TransportError",
    "UrlTransport",
    "cosine_similarity",
    "extract_keywords",
    "fetch_fulltext",
    "fetch_records",
    "normalize_and_dedup",
    "read_records_jsonl",
    "relevance_filter",
    "relevance_scores",
    "write_records_jsonl",
]
