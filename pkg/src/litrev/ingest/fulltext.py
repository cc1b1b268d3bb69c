"""Full-text download, text extraction, and cited-DOI harvesting.

Extraction is pluggable: the built-in extractor handles plain text and
strips basic HTML; anything else (scanned PDFs, publisher formats) needs a
custom ``TextExtractor``. Cited DOIs are harvested by regex from the tail
30% of the text (the references region), falling back to a whole-text scan
when that finds nothing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from html.parser import HTMLParser
from typing import Protocol

from .records import BibRecord
from .transport import HttpTransport, TransportError

DOI_RE = re.compile(r"10\.\d{4,9}/[-._;()/:A-Za-z0-9]+")

_REFERENCES_TAIL_FRACTION = 0.3


class NotAvailable(RuntimeError):
    """Full text could not be downloaded (missing URL, paywall, transport error)."""


class ExtractionFailed(RuntimeError):
    """Downloaded bytes yielded no usable text layer."""


@dataclass
class FullTextDocument:
    text: str
    cited_dois: list[str]


class TextExtractor(Protocol):
    def extract(self, data: bytes) -> str: ...


class _TagStripper(HTMLParser):
    def __init__(self):
        super().__init__()
        self.parts: list[str] = []

    def handle_data(self, data):
        self.parts.append(data)


class DefaultExtractor:
    """Plain text passthrough; HTML gets its tags stripped; PDFs are refused."""

    def extract(self, data: bytes) -> str:
        if data.startswith(b"%PDF"):
            raise ExtractionFailed(
                "PDF input needs a dedicated extractor; plug one in via TextExtractor"
            )
        text = data.decode("utf-8", errors="replace")
        stripped = text.lstrip()
        if stripped.startswith("<"):
            parser = _TagStripper()
            parser.feed(text)
            text = " ".join(p.strip() for p in parser.parts if p.strip())
        return text


def harvest_dois(text: str) -> list[str]:
    """Cited DOIs, deduplicated in order of appearance.

    Scans the references-region heuristic window first (tail 30% of the
    text) and falls back to the whole text on zero hits.
    """
    tail = text[int(len(text) * (1.0 - _REFERENCES_TAIL_FRACTION)) :]
    hits = DOI_RE.findall(tail)
    if not hits:
        hits = DOI_RE.findall(text)
    seen: set[str] = set()
    out = []
    for doi in hits:
        if doi not in seen:
            seen.add(doi)
            out.append(doi)
    return out


def fetch_fulltext(
    record: BibRecord,
    transport: HttpTransport,
    extractor: TextExtractor | None = None,
) -> FullTextDocument:
    """Download record.pdf_url, extract plain text, and harvest cited DOIs."""
    if not record.pdf_url:
        raise NotAvailable(f"record {record.doi!r} has no pdf_url")
    try:
        data = transport.request(record.pdf_url)
    except TransportError as exc:
        raise NotAvailable(f"download failed for {record.doi!r}: {exc}") from exc
    text = (extractor or DefaultExtractor()).extract(data)
    if not text.strip():
        raise ExtractionFailed(f"no text layer in full text of {record.doi!r}")
    return FullTextDocument(text=text, cited_dois=harvest_dois(text))
