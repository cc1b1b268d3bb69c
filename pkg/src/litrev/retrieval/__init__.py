"""VectorRAG ensemble: merged sparse+dense candidates with pluggable reranking."""

from .ensemble import CandidateSet, ensemble_retrieve
from .rerank import (
    HttpReranker,
    RankedContext,
    Reranker,
    RerankerUnavailable,
    rerank,
    rrf_fuse,
)

__all__ = [
    "CandidateSet",
    "HttpReranker",
    "RankedContext",
    "Reranker",
    "RerankerUnavailable",
    "ensemble_retrieve",
    "rerank",
    "rrf_fuse",
]
