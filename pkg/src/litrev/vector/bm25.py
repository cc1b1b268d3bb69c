"""Okapi BM25 over text chunks.

Score of chunk C for query Q:

    sum over distinct w in Q of
        IDF(w) * f(w,C) * (k1 + 1) / (f(w,C) + k1 * (1 - b + b * |C| / avgdl))

with IDF(w) = ln(1 + (N - n_w + 0.5) / (n_w + 0.5)), n_w the number of
chunks containing w. Tokenization is lowercase split on non-alphanumerics
with no stemming, keeping the sparse side lexically exact. Query terms are
deduplicated before summation.
"""

from __future__ import annotations

import math
import re

import numpy as np

from . import kernels
from .dense import EmptyIndex

DEFAULT_K1 = 1.5
DEFAULT_B = 0.75

_TOKEN_RE = re.compile(r"[a-z0-9]+")


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text.lower())


class Bm25Index:
    """Inverted index with per-term posting arrays ready for the scoring kernel."""

    def __init__(self, k1: float = DEFAULT_K1, b: float = DEFAULT_B):
        if k1 <= 0 or b < 0 or b > 1:
            raise ValueError(f"invalid BM25 params k1={k1} b={b}")
        self.k1 = k1
        self.b = b
        self._ids: list[str] = []
        self._keys: list[tuple] = []
        self._postings: dict[str, tuple[np.ndarray, np.ndarray]] = {}
        self._doc_len: np.ndarray = np.zeros(0, dtype=np.float64)
        self._norms: np.ndarray = np.zeros(0, dtype=np.float64)
        self.avgdl = 0.0

    @property
    def n_chunks(self) -> int:
        return len(self._ids)

    @property
    def vocabulary(self) -> set[str]:
        return set(self._postings)

    def build(self, entries: list[tuple[str, tuple, str]]) -> "Bm25Index":
        """Build from (chunk_id, natural_key, text) triples. Replaces any content."""
        self._ids = [cid for cid, _, _ in entries]
        self._keys = [tuple(key) for _, key, _ in entries]
        raw: dict[str, list[tuple[int, float]]] = {}
        lengths = np.zeros(len(entries), dtype=np.float64)
        for i, (_, _, text) in enumerate(entries):
            tokens = tokenize(text)
            lengths[i] = len(tokens)
            counts: dict[str, int] = {}
            for t in tokens:
                counts[t] = counts.get(t, 0) + 1
            for term, tf in counts.items():
                raw.setdefault(term, []).append((i, float(tf)))
        self._doc_len = lengths
        self.avgdl = float(lengths.mean()) if len(entries) else 0.0
        # Length normalizer k1*(1 - b + b*|C|/avgdl), precomputed per chunk.
        if self.avgdl > 0:
            self._norms = self.k1 * (1.0 - self.b + self.b * lengths / self.avgdl)
        else:
            self._norms = self.k1 * np.ones_like(lengths)
        self._postings = {
            term: (
                np.asarray([i for i, _ in plist], dtype=np.int64),
                np.asarray([tf for _, tf in plist], dtype=np.float64),
            )
            for term, plist in raw.items()
        }
        return self

    def idf(self, term: str) -> float:
        if term not in self._postings:
            return 0.0
        n_w = len(self._postings[term][0])
        n = self.n_chunks
        return math.log(1.0 + (n - n_w + 0.5) / (n_w + 0.5))

    def scores(self, query: str) -> np.ndarray:
        """BM25 score of every chunk for ``query`` (zeros where nothing matches)."""
        out = np.zeros(self.n_chunks, dtype=np.float64)
        for term in sorted(set(tokenize(query))):
            posting = self._postings.get(term)
            if posting is None:
                continue
            idxs, tfs = posting
            kernels.bm25_accumulate(out, idxs, tfs, self._norms, self.idf(term), self.k1)
        return out

    def search(self, query: str, k: int) -> list[tuple[str, float]]:
        """Ranked (chunk_id, score), descending; ties and all-zero scores fall back
        to natural-key order and are still returned, truncated to k."""
        if k <= 0:
            raise ValueError("k must be positive")
        if not self._ids:
            raise EmptyIndex("BM25 index holds no chunks")
        s = self.scores(query)
        order = sorted(range(len(self._ids)), key=lambda i: (-s[i], self._keys[i]))
        return [(self._ids[i], float(s[i])) for i in order[:k]]

    def to_dict(self) -> dict:
        return {
            "k1": self.k1,
            "b": self.b,
            "ids": list(self._ids),
            "keys": [list(k) for k in self._keys],
            "doc_len": self._doc_len.tolist(),
            "postings": {
                term: [idxs.tolist(), tfs.tolist()]
                for term, (idxs, tfs) in sorted(self._postings.items())
            },
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Bm25Index":
        idx = cls(k1=d["k1"], b=d["b"])
        idx._ids = list(d["ids"])
        idx._keys = [tuple(k) for k in d["keys"]]
        idx._doc_len = np.asarray(d["doc_len"], dtype=np.float64)
        idx.avgdl = float(idx._doc_len.mean()) if len(idx._ids) else 0.0
        if idx.avgdl > 0:
            idx._norms = idx.k1 * (1.0 - idx.b + idx.b * idx._doc_len / idx.avgdl)
        else:
            idx._norms = idx.k1 * np.ones_like(idx._doc_len)
        idx._postings = {
            term: (np.asarray(p[0], dtype=np.int64), np.asarray(p[1], dtype=np.float64))
            for term, p in d["postings"].items()
        }
        return idx
