"""Versioned, checksummed corpus snapshots.

A snapshot is one JSON container holding the normalized records, the graph,
the chunk table, both index blobs, the baseline card index, and the config
hash. Serialization is canonical (sorted keys), so identical stores produce
byte-identical files, and loading restores stores that answer queries
exactly as before saving.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from ..graph.model import PropertyGraph
from ..ingest.records import BibRecord
from ..vector.bm25 import Bm25Index
from ..vector.chunking import Chunk
from ..vector.dense import DenseIndex

SNAPSHOT_VERSION = 1


class SnapshotWriteFailed(RuntimeError):
    pass


class VersionMismatch(RuntimeError):
    pass


class CorruptSnapshot(RuntimeError):
    pass


@dataclass
class CorpusSnapshot:
    records: list[BibRecord] = field(default_factory=list)
    graph: PropertyGraph = field(default_factory=PropertyGraph)
    chunks: list[Chunk] = field(default_factory=list)
    dense_index: DenseIndex | None = None
    bm25_index: Bm25Index | None = None
    card_texts: dict = field(default_factory=dict)  # card_id -> text
    card_index: DenseIndex | None = None
    config_hash: str = ""
    version: int = SNAPSHOT_VERSION

    def chunk_texts(self) -> dict:
        return {c.chunk_id: c.text for c in self.chunks}

    def _payload(self) -> dict:
        return {
            "records": [r.to_dict() for r in self.records],
            "graph": self.graph.to_dict(),
            "chunks": [c.to_dict() for c in self.chunks],
            "dense_index": self.dense_index.to_dict() if self.dense_index else None,
            "bm25_index": self.bm25_index.to_dict() if self.bm25_index else None,
            "card_texts": self.card_texts,
            "card_index": self.card_index.to_dict() if self.card_index else None,
            "config_hash": self.config_hash,
        }

    def save(self, path: str | Path) -> None:
        body = json.dumps(self._payload(), sort_keys=True, ensure_ascii=False)
        checksum = hashlib.sha256(body.encode("utf-8")).hexdigest()
        container = (
            '{"version": %d, "sha256": "%s", "data": %s}'
            % (SNAPSHOT_VERSION, checksum, body)
        )
        try:
            Path(path).write_text(container, encoding="utf-8")
        except OSError as exc:
            raise SnapshotWriteFailed(f"cannot write snapshot to {path}: {exc}") from exc

    @classmethod
    def load(cls, path: str | Path) -> "CorpusSnapshot":
        raw = Path(path).read_text(encoding="utf-8")
        try:
            container = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise CorruptSnapshot(f"snapshot is not valid JSON: {exc}") from exc
        version = container.get("version")
        if version != SNAPSHOT_VERSION:
            raise VersionMismatch(
                f"snapshot version {version} != supported version {SNAPSHOT_VERSION}"
            )
        data = container.get("data")
        body = json.dumps(data, sort_keys=True, ensure_ascii=False)
        checksum = hashlib.sha256(body.encode("utf-8")).hexdigest()
        if checksum != container.get("sha256"):
            raise CorruptSnapshot("snapshot checksum mismatch")
        snap = cls(
            records=[BibRecord.from_dict(d) for d in data["records"]],
            graph=PropertyGraph.from_dict(data["graph"]),
            chunks=[Chunk.from_dict(d) for d in data["chunks"]],
            dense_index=(
                DenseIndex.from_dict(data["dense_index"]) if data["dense_index"] else None
            ),
            bm25_index=(
                Bm25Index.from_dict(data["bm25_index"]) if data["bm25_index"] else None
            ),
            card_texts=dict(data.get("card_texts", {})),
            card_index=(
                DenseIndex.from_dict(data["card_index"]) if data.get("card_index") else None
            ),
            config_hash=data.get("config_hash", ""),
            version=version,
        )
        return snap
