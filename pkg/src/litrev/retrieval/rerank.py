"""Candidate reranking: external cross-encoder adapter with an RRF fallback.

When a reranker is configured, its scores order the output verbatim. When
none is configured (or the adapter fails), candidates are fused by
Reciprocal Rank Fusion over the two source rank lists:

    score(c) = sum over lists containing c of 1 / (k0 + rank_c)

with 1-based ranks and k0 = 60. Output is truncated to the configured
context size. Either path only permutes (a subset of) the merged
candidates; nothing unseen is introduced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol, Sequence

from .ensemble import CandidateSet

DEFAULT_RRF_K0 = 60
DEFAULT_CONTEXT_SIZE = 5


class RerankerUnavailable(RuntimeError):
    """The external reranker could not score the candidates."""


class Reranker(Protocol):
    reranker_id: str

    def score(self, query: str, passages: Sequence[str]) -> list[float]:
        """Relevance score per passage, in input order."""
        ...


class HttpReranker:
    """Adapter for a hosted reranking endpoint.

    Request: POST ``{"model": ..., "query": ..., "passages": [...]}``;
    response: ``{"scores": [...]}`` aligned with the input passages.
    """

    def __init__(self, endpoint: str, model: str, timeout: float = 30.0):
        self.endpoint = endpoint
        self.model = model
        self.timeout = timeout
        self.reranker_id = f"http:{model}"

    def score(self, query: str, passages: Sequence[str]) -> list[float]:
        import requests

        try:
            resp = requests.post(
                self.endpoint,
                json={"model": self.model, "query": query, "passages": list(passages)},
                timeout=self.timeout,
            )
            resp.raise_for_status()
            scores = resp.json()["scores"]
        except Exception as exc:  # noqa: BLE001 - adapter boundary
            raise RerankerUnavailable(f"rerank endpoint failed: {exc}") from exc
        if len(scores) != len(passages):
            raise RerankerUnavailable("rerank endpoint returned misaligned scores")
        return [float(s) for s in scores]


@dataclass
class RankedContext:
    """Final ordered contexts: (chunk_id, relevance_score, provenance)."""

    items: list[tuple[str, float, str]] = field(default_factory=list)
    fused_by: str = "rrf_fallback"

    @property
    def chunk_ids(self) -> list[str]:
        return [cid for cid, _, _ in self.items]


def rrf_fuse(
    rank_lists: Sequence[Sequence[str]], k0: int = DEFAULT_RRF_K0
) -> list[tuple[str, float]]:
    """Reciprocal Rank Fusion over id lists.

    Ties break by id so the fusion is invariant under exchanging the input
    lists, not just deterministic.
    """
    scores: dict[str, float] = {}
    for ranked in rank_lists:
        for rank, cid in enumerate(ranked, start=1):
            scores[cid] = scores.get(cid, 0.0) + 1.0 / (k0 + rank)
    return sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))


def rerank(
    query: str,
    candidates: CandidateSet,
    reranker: Reranker | None,
    texts: dict[str, str],
    context_size: int = DEFAULT_CONTEXT_SIZE,
    rrf_k0: int = DEFAULT_RRF_K0,
) -> RankedContext:
    """Order merged candidates by reranker scores, or by RRF when unavailable."""
    if not candidates.merged:
        raise ValueError("candidates.merged must be nonempty")

    if reranker is not None:
        try:
            passages = [texts[cid] for cid in candidates.merged]
            scores = reranker.score(query, passages)
        except RerankerUnavailable:
            return _fallback(candidates, context_size, rrf_k0)
        ranked = sorted(
            zip(candidates.merged, scores), key=lambda pair: -pair[1]
        )  # stable: input order breaks ties
        items = [
            (cid, float(s), candidates.provenance(cid))
            for cid, s in ranked[:context_size]
        ]
        return RankedContext(items=items, fused_by=f"reranker:{reranker.reranker_id}")

    return _fallback(candidates, context_size, rrf_k0)


def _fallback(candidates: CandidateSet, context_size: int, rrf_k0: int) -> RankedContext:
    fused = rrf_fuse(
        [
            [cid for cid, _ in candidates.dense_hits],
            [cid for cid, _ in candidates.sparse_hits],
        ],
        k0=rrf_k0,
    )
    items = [
        (cid, score, candidates.provenance(cid))
        for cid, score in fused[:context_size]
    ]
    return RankedContext(items=items, fused_by="rrf_fallback")
