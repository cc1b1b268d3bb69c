"""Fixed-width character chunking of full texts.

Documents are cut into 2,024-character windows with a 50-character overlap
between consecutive chunks; the final chunk may be shorter. Offsets are
exact, so stripping the overlap from every chunk after the first
reconstructs the source text.
"""

from __future__ import annotations

from dataclasses import dataclass

DEFAULT_CHUNK_SIZE = 2024
DEFAULT_OVERLAP = 50


class EmptyDocument(ValueError):
    """Raised when asked to chunk an empty text."""


@dataclass(frozen=True)
class Chunk:
    chunk_id: str
    doc_doi: str
    seq: int
    start_offset: int
    end_offset: int
    text: str

    @property
    def natural_key(self) -> tuple[str, int]:
        return (self.doc_doi, self.seq)

    def to_dict(self) -> dict:
        return {
            "chunk_id": self.chunk_id,
            "doc_doi": self.doc_doi,
            "seq": self.seq,
            "start_offset": self.start_offset,
            "end_offset": self.end_offset,
            "text": self.text,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Chunk":
        return cls(
            chunk_id=d["chunk_id"],
            doc_doi=d["doc_doi"],
            seq=d["seq"],
            start_offset=d["start_offset"],
            end_offset=d["end_offset"],
            text=d["text"],
        )


def chunk_document(
    text: str,
    doc_doi: str,
    size: int = DEFAULT_CHUNK_SIZE,
    overlap: int = DEFAULT_OVERLAP,
) -> list[Chunk]:
    """Slide a ``size``-wide window with stride ``size - overlap`` over ``text``.

    Raises EmptyDocument for empty input; smaller texts yield one chunk.
    """
    if not text:
        raise EmptyDocument("cannot chunk an empty document")
    if overlap < 0 or overlap >= size:
        raise ValueError(f"overlap must satisfy 0 <= overlap < size, got {overlap}/{size}")

    stride = size - overlap
    chunks: list[Chunk] = []
    start = 0
    seq = 0
    while True:
        end = min(start + size, len(text))
        chunks.append(
            Chunk(
                chunk_id=f"{doc_doi}#{seq}",
                doc_doi=doc_doi,
                seq=seq,
                start_offset=start,
                end_offset=end,
                text=text[start:end],
            )
        )
        if end == len(text):
            break
        start += stride
        seq += 1
    return chunks


def reconstruct(chunks: list[Chunk], overlap: int = DEFAULT_OVERLAP) -> str:
    """Inverse of chunk_document: drop the overlap from all chunks after the first."""
    if not chunks:
        return ""
    parts = [chunks[0].text]
    parts.extend(c.text[overlap:] for c in chunks[1:])
    return "".join(parts)
