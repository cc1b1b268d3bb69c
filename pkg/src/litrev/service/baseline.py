"""Non-agentic baseline: joint semantic search over chunks and graph cards.

Each Paper node is serialized with its 1-hop neighborhood into a text card;
cards get their own dense index. A baseline query embeds the question,
takes top-k from the chunk index and top-k from the card index, fuses the
two lists with RRF, and hands the fused contexts to the generator. No
routing, no Cypher.
"""

from __future__ import annotations

from ..graph.model import PropertyGraph
from ..retrieval.ensemble import CandidateSet
from ..retrieval.rerank import rrf_fuse
from ..vector.dense import DenseIndex
from ..vector.embedding import EmbeddingProvider, embed


def build_cards(graph: PropertyGraph) -> dict[str, str]:
    """One deterministic text card per Paper node (id "card:<doi>")."""
    cards: dict[str, str] = {}
    for paper in graph.nodes_with_label("Paper"):
        lines = [
            f"Paper: {paper.properties['title']}",
            f"Abstract: {paper.properties['abstract']}",
        ]
        groups = {
            "HAS_AUTHOR": ("Authors", []),
            "PUBLISHED_IN": ("Year", []),
            "INDEXED_IN": ("Database", []),
            "HAS_KEYWORD": ("Keywords", []),
            "CITES": ("Cites", []),
        }
        for etype, dst in graph.out_neighbors(paper.id):
            groups[etype][1].append(str(graph.nodes[dst].natural_key))
        for etype in ("HAS_AUTHOR", "PUBLISHED_IN", "INDEXED_IN", "HAS_KEYWORD", "CITES"):
            name, values = groups[etype]
            if values:
                lines.append(f"{name}: {', '.join(values)}")
        cards[f"card:{paper.natural_key}"] = "\n".join(lines)
    return cards


def build_card_index(cards: dict[str, str], embedder: EmbeddingProvider) -> DenseIndex:
    index = DenseIndex(dim=embedder.dim)
    card_ids = sorted(cards)
    if card_ids:
        vectors = embed([cards[cid] for cid in card_ids], embedder)
        for cid, vec in zip(card_ids, vectors):
            index.add(cid, ("card", cid), vec)
    return index


def joint_search(
    question: str,
    chunk_index: DenseIndex,
    card_index: DenseIndex,
    embedder: EmbeddingProvider,
    k_each: int = 5,
    context_size: int = 5,
    rrf_k0: int = 60,
) -> tuple[list[tuple[str, float]], CandidateSet]:
    """Fused (id, score) list over chunk hits and card hits, plus the raw sets."""
    query_vec = embed([question], embedder)[0]
    chunk_hits = chunk_index.search(query_vec, k_each) if len(chunk_index) else []
    card_hits = card_index.search(query_vec, k_each) if len(card_index) else []
    fused = rrf_fuse(
        [[cid for cid, _ in chunk_hits], [cid for cid, _ in card_hits]], k0=rrf_k0
    )
    candidates = CandidateSet(
        dense_hits=chunk_hits, sparse_hits=card_hits, merged=[c for c, _ in fused]
    )
    return fused[:context_size], candidates
