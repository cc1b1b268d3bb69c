"""Cosine-similarity relevance filtering against the search query's keywords.

Each record's keyword vector is compared to the query's keyword vector as
TF-IDF-weighted bags over the union of their terms:

    CS(X, Y) = (X . Y) / (||X|| ||Y||)

Records scoring strictly above the third quartile of the score distribution
(linear-interpolation quantile) are retained, i.e. the top 25% when scores
are distinct. All-zero vectors score 0 rather than erroring.
"""

from __future__ import annotations

import math

from .keywords import KeywordVector
from .records import BibRecord


def cosine_similarity(a: KeywordVector, b: KeywordVector) -> float:
    """CS over the union vocabulary of the two keyword vectors; 0.0 on zero norm."""
    wa = a.as_dict()
    wb = b.as_dict()
    vocab = set(wa) | set(wb)
    dot = sum(wa.get(t, 0.0) * wb.get(t, 0.0) for t in vocab)
    na = math.sqrt(sum(w * w for w in wa.values()))
    nb = math.sqrt(sum(w * w for w in wb.values()))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return dot / (na * nb)


def quantile_linear(values: list[float], q: float) -> float:
    """Linear-interpolation quantile of ``values`` (the numpy default rule)."""
    if not values:
        raise ValueError("quantile of empty list")
    if not 0.0 <= q <= 1.0:
        raise ValueError("q must be in [0, 1]")
    s = sorted(values)
    pos = q * (len(s) - 1)
    lo = math.floor(pos)
    hi = math.ceil(pos)
    if lo == hi:
        return s[lo]
    frac = pos - lo
    return s[lo] * (1.0 - frac) + s[hi] * frac


def relevance_scores(
    records: list[BibRecord],
    keywords: dict[tuple[str, str], KeywordVector],
    query_kv: KeywordVector,
) -> list[float]:
    """CS score per record, in input order. Keyed by (doi, title)."""
    scores = []
    for rec in records:
        kv = keywords.get((rec.doi, rec.title))
        if kv is None:
            raise KeyError(f"no keyword vector for record {rec.doi!r}")
        scores.append(cosine_similarity(kv, query_kv))
    return scores


def relevance_filter(
    records: list[BibRecord],
    keywords: dict[tuple[str, str], KeywordVector],
    query_kv: KeywordVector,
) -> list[BibRecord]:
    """Keep records with CS strictly above Q3, sorted by CS descending.

    Ties in the descending sort keep input order (stable sort).
    """
    if not records:
        return []
    scores = relevance_scores(records, keywords, query_kv)
    q3 = quantile_linear(scores, 0.75)
    retained = [(s, rec) for s, rec in zip(scores, records) if s > q3]
    retained.sort(key=lambda pair: -pair[0])
    return [rec for _, rec in retained]
