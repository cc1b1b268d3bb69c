"""Dual retrieval: BM25 and dense L2 each return their top-k, then merge."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..vector.bm25 import Bm25Index
from ..vector.dense import DenseIndex
from ..vector.embedding import EmbeddingProvider, embed

DEFAULT_K_EACH = 5


@dataclass
class CandidateSet:
    """Top candidates from both retrievers plus their deduplicated union.

    ``merged`` preserves first-seen order (dense list, then unseen sparse
    hits); per-source ranks stay available in the hit lists.
    """

    dense_hits: list[tuple[str, float]] = field(default_factory=list)
    sparse_hits: list[tuple[str, float]] = field(default_factory=list)
    merged: list[str] = field(default_factory=list)

    def provenance(self, chunk_id: str) -> str:
        in_dense = any(cid == chunk_id for cid, _ in self.dense_hits)
        in_sparse = any(cid == chunk_id for cid, _ in self.sparse_hits)
        if in_dense and in_sparse:
            return "both"
        if in_dense:
            return "dense"
        if in_sparse:
            return "sparse"
        return "none"


def ensemble_retrieve(
    query: str,
    dense_index: DenseIndex,
    bm25_index: Bm25Index,
    embedder: EmbeddingProvider,
    k_each: int = DEFAULT_K_EACH,
) -> CandidateSet:
    """Run both retrievers with the same k and merge their candidate lists."""
    query_vec = embed([query], embedder)[0]
    dense_hits = dense_index.search(query_vec, k_each)
    sparse_hits = bm25_index.search(query, k_each)
    merged: list[str] = []
    seen: set[str] = set()
    for cid, _ in [*dense_hits, *sparse_hits]:
        if cid not in seen:
            seen.add(cid)
            merged.append(cid)
    return CandidateSet(dense_hits=dense_hits, sparse_hits=sparse_hits, merged=merged)
