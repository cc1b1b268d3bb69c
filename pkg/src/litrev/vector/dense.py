"""Exact dense retrieval by Euclidean (L2) distance.

The index is a flat matrix scanned in full on every query: results are the
exact top-k by ascending L2 distance, with ties broken by the chunk's
natural key so rankings are stable across rebuilds and backends.
"""

from __future__ import annotations

import math

import numpy as np

from . import kernels
from .embedding import DimensionMismatch


class EmptyIndex(RuntimeError):
    """Search against an index with no vectors."""


class DenseIndex:
    def __init__(self, dim: int):
        if dim <= 0:
            raise ValueError("dim must be positive")
        self.dim = dim
        self._ids: list[str] = []
        self._keys: list[tuple] = []
        self._rows: list[np.ndarray] = []
        self._matrix: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self._ids)

    def add(self, chunk_id: str, natural_key: tuple, vector: np.ndarray) -> None:
        vec = np.asarray(vector, dtype=np.float64)
        if vec.shape != (self.dim,):
            raise DimensionMismatch(f"vector dim {vec.shape} != index dim ({self.dim},)")
        self._ids.append(chunk_id)
        self._keys.append(tuple(natural_key))
        self._rows.append(vec)
        self._matrix = None

    def _ensure_matrix(self) -> np.ndarray:
        if self._matrix is None:
            self._matrix = np.ascontiguousarray(np.vstack(self._rows))
        return self._matrix

    def search(self, query_vec: np.ndarray, k: int) -> list[tuple[str, float]]:
        """Top-k (chunk_id, l2_distance) by ascending distance; min(k, n) results."""
        if k <= 0:
            raise ValueError("k must be positive")
        if not self._ids:
            raise EmptyIndex("dense index holds no vectors")
        query = np.ascontiguousarray(np.asarray(query_vec, dtype=np.float64))
        if query.shape != (self.dim,):
            raise DimensionMismatch(f"query dim {query.shape} != index dim ({self.dim},)")
        d2 = kernels.l2_sq_distances(self._ensure_matrix(), query)
        order = sorted(range(len(self._ids)), key=lambda i: (d2[i], self._keys[i]))
        return [(self._ids[i], math.sqrt(d2[i])) for i in order[:k]]

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "ids": list(self._ids),
            "keys": [list(k) for k in self._keys],
            "vectors": [row.tolist() for row in self._rows],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DenseIndex":
        idx = cls(dim=d["dim"])
        for cid, key, vec in zip(d["ids"], d["keys"], d["vectors"]):
            idx.add(cid, tuple(key), np.asarray(vec, dtype=np.float64))
        return idx
