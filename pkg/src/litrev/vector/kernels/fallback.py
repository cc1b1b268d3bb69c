"""Numpy implementations of the search kernels (no compiled extension needed)."""

import numpy as np


def l2_sq_distances(matrix: np.ndarray, query: np.ndarray) -> np.ndarray:
    """Squared L2 distance of every row of ``matrix`` to ``query``."""
    diff = matrix - query
    return np.einsum("ij,ij->i", diff, diff)


def bm25_accumulate(
    scores: np.ndarray,
    idxs: np.ndarray,
    tfs: np.ndarray,
    norms: np.ndarray,
    idf: float,
    k1: float,
) -> None:
    """Add one term's contribution ``idf * tf*(k1+1)/(tf + norm)`` into ``scores``.

    ``idxs`` holds each posting's row index; a row appears at most once per
    term, so fancy-index addition is safe.
    """
    scores[idxs] += idf * (tfs * (k1 + 1.0)) / (tfs + norms[idxs])
