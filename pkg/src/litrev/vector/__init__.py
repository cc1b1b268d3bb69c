"""Chunking, embedding, and exact sparse/dense retrieval over text chunks."""

from .bm25 import Bm25Index
from .chunking import Chunk, EmptyDocument, chunk_document
from .dense import DenseIndex, EmptyIndex
from .embedding import (
    DimensionMismatch,
    EmbeddingProvider,
    HashingEmbedder,
    HttpEmbedder,
    InvalidInput,
    ProviderUnavailable,
    embed,
)

__all__ = [
    "Bm25Index",
    "Chunk",
    "DenseIndex",
    "DimensionMismatch",
    "EmbeddingProvider",
    "EmptyDocument",
    "EmptyIndex",
    "HashingEmbedder",
    "HttpEmbedder",
    "InvalidInput",
    "ProviderUnavailable",
    "chunk_document",
    "embed",
]
