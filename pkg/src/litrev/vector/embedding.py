"""Embedding providers.

Two adapters share one interface: an HTTP inference endpoint for a real
sentence-embedding model, and a deterministic feature-hashing embedder that
needs no network or model files. The hashing embedder maps token unigrams
and bigrams into a fixed number of signed buckets and scales the result to
unit norm, so equal texts always embed identically.
"""

from __future__ import annotations

import hashlib
import re
from typing import Protocol, Sequence

import numpy as np

DEFAULT_DIM = 384  # output size of the default MiniLM-class sentence encoder

_TOKEN_RE = re.compile(r"[a-z0-9]+")


class ProviderUnavailable(RuntimeError):
    """The embedding provider could not serve the request."""


class DimensionMismatch(ValueError):
    """A vector's dimension disagrees with the index/provider dimension."""


class InvalidInput(ValueError):
    """Rejected before reaching the provider (e.g. empty string)."""


class EmbeddingProvider(Protocol):
    dim: int

    def embed_batch(self, texts: Sequence[str]) -> list[np.ndarray]: ...


class HashingEmbedder:
    """Deterministic fallback embedder: hashed unigrams+bigrams, unit norm."""

    def __init__(self, dim: int = DEFAULT_DIM):
        if dim <= 0:
            raise ValueError("dim must be positive")
        self.dim = dim

    def _features(self, text: str) -> list[str]:
        tokens = _TOKEN_RE.findall(text.lower())
        feats = list(tokens)
        feats.extend(f"{a} {b}" for a, b in zip(tokens, tokens[1:]))
        return feats

    def embed_one(self, text: str) -> np.ndarray:
        vec = np.zeros(self.dim, dtype=np.float64)
        for feat in self._features(text):
            h = int.from_bytes(hashlib.md5(feat.encode("utf-8")).digest()[:8], "big")
            sign = 1.0 if (h >> 63) & 1 == 0 else -1.0
            vec[h % self.dim] += sign
        norm = float(np.linalg.norm(vec))
        if norm > 0.0:
            vec /= norm
        return vec

    def embed_batch(self, texts: Sequence[str]) -> list[np.ndarray]:
        return [self.embed_one(t) for t in texts]


class HttpEmbedder:
    """Adapter for an HTTP inference endpoint.

    Request: POST ``{"model": ..., "texts": [...]}``; response:
    ``{"vectors": [[...], ...]}`` with one vector per input, in order.
    """

    def __init__(self, endpoint: str, model: str, dim: int = DEFAULT_DIM, timeout: float = 30.0):
        self.endpoint = endpoint
        self.model = model
        self.dim = dim
        self.timeout = timeout

    def embed_batch(self, texts: Sequence[str]) -> list[np.ndarray]:
        import requests

        try:
            resp = requests.post(
                self.endpoint,
                json={"model": self.model, "texts": list(texts)},
                timeout=self.timeout,
            )
            resp.raise_for_status()
            payload = resp.json()
        except Exception as exc:  # noqa: BLE001 - adapter boundary
            raise ProviderUnavailable(f"embedding endpoint failed: {exc}") from exc
        vectors = payload.get("vectors")
        if not isinstance(vectors, list) or len(vectors) != len(texts):
            raise ProviderUnavailable("embedding endpoint returned a malformed payload")
        out = []
        for v in vectors:
            arr = np.asarray(v, dtype=np.float64)
            if arr.shape != (self.dim,):
                raise DimensionMismatch(
                    f"provider returned dim {arr.shape}, expected ({self.dim},)"
                )
            out.append(arr)
        return out


def embed(texts: Sequence[str], provider: EmbeddingProvider) -> list[np.ndarray]:
    """Embed a batch of texts, enforcing the provider's declared dimension."""
    for i, t in enumerate(texts):
        if not isinstance(t, str) or not t:
            raise InvalidInput(f"text at position {i} is empty")
    vectors = provider.embed_batch(texts)
    for v in vectors:
        if v.shape != (provider.dim,):
            raise DimensionMismatch(f"vector dim {v.shape} != provider dim {provider.dim}")
        if not np.all(np.isfinite(v)):
            raise ProviderUnavailable("provider returned non-finite values")
    return vectors
