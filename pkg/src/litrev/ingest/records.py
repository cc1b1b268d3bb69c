"""Normalized publication records and the search request they answer."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

SOURCES = ("pubmed", "arxiv", "scholar")

_JSONL_KEYS = ("doi", "title", "abstract", "year", "authors", "pdf_url", "source_db")


class InvalidRequest(ValueError):
    """Search request violates its preconditions (empty sources, bad dates)."""


@dataclass
class BibRecord:
    """One publication as fetched from a bibliometric API.

    ``pdf_url`` may be empty before full-text validation; every other field
    must be present for the record to survive normalization.
    """

    doi: str
    title: str
    abstract: str
    year: int
    authors: list[str]
    pdf_url: str
    source_db: str

    def text(self) -> str:
        """Concatenated title + abstract, the keyword-extraction document."""
        return f"{self.title} {self.abstract}"

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in _JSONL_KEYS}

    @classmethod
    def from_dict(cls, d: dict) -> "BibRecord":
        return cls(
            doi=str(d.get("doi", "")),
            title=str(d.get("title", "")),
            abstract=str(d.get("abstract", "")),
            year=int(d.get("year") or 0),
            authors=[str(a) for a in d.get("authors", [])],
            pdf_url=str(d.get("pdf_url", "")),
            source_db=str(d.get("source_db", "")),
        )


@dataclass
class SearchRequest:
    query: str
    sources: list[str] = field(default_factory=lambda: list(SOURCES))
    date_from: int | None = None
    date_to: int | None = None

    def validate(self) -> None:
        if not self.query or not self.query.strip():
            raise InvalidRequest("query must be nonempty")
        if not self.sources:
            raise InvalidRequest("at least one source is required")
        unknown = [s for s in self.sources if s not in SOURCES]
        if unknown:
            raise InvalidRequest(f"unknown sources: {unknown}")
        if self.date_from is not None and self.date_to is not None:
            if self.date_from > self.date_to:
                raise InvalidRequest(
                    f"date_from {self.date_from} > date_to {self.date_to}"
                )


def _is_complete(rec: BibRecord) -> bool:
    if not rec.doi.strip() or not rec.title.strip() or not rec.abstract.strip():
        return False
    if rec.year <= 0:
        return False
    if not rec.authors or not all(a.strip() for a in rec.authors):
        return False
    if not rec.source_db.strip():
        return False
    return True


def normalize_and_dedup(records: list[BibRecord]) -> list[BibRecord]:
    """Strip whitespace, drop records with missing values, dedup on (doi, title).

    First occurrence wins; relative order is otherwise preserved. Idempotent.
    """
    out: list[BibRecord] = []
    seen: set[tuple[str, str]] = set()
    for rec in records:
        cleaned = BibRecord(
            doi=rec.doi.strip(),
            title=rec.title.strip(),
            abstract=rec.abstract.strip(),
            year=rec.year,
            authors=[a.strip() for a in rec.authors if a.strip()],
            pdf_url=rec.pdf_url.strip(),
            source_db=rec.source_db.strip(),
        )
        if not _is_complete(cleaned):
            continue
        key = (cleaned.doi, cleaned.title)
        if key in seen:
            continue
        seen.add(key)
        out.append(cleaned)
    return out


def write_records_jsonl(records: list[BibRecord], path: str | Path) -> None:
    """Corpus interchange format: one record per line, UTF-8, LF-terminated."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(json.dumps(rec.to_dict(), ensure_ascii=False))
            fh.write("\n")


def read_records_jsonl(path: str | Path) -> list[BibRecord]:
    records = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                records.append(BibRecord.from_dict(json.loads(line)))
    return records
