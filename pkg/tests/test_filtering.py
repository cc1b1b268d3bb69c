import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from litrev.ingest.filtering import (
    cosine_similarity,
    quantile_linear,
    relevance_filter,
    relevance_scores,
)
from litrev.ingest.keywords import KeywordVector
from litrev.ingest.records import BibRecord

from oracles import q3_oracle


def kv(pairs) -> KeywordVector:
    terms, weights = zip(*pairs) if pairs else ((), ())
    return KeywordVector(terms=tuple(terms), weights=tuple(weights))


def rec(i: int) -> BibRecord:
    return BibRecord(
        doi=f"10.1/{i}", title=f"T{i}", abstract="a", year=2024,
        authors=["A"], pdf_url="", source_db="arxiv",
    )


def test_identical_vectors_score_one():
    a = kv([("alpha", 2.0), ("beta", 1.0)])
    assert cosine_similarity(a, a) == pytest.approx(1.0, abs=1e-12)


def test_disjoint_vocabulary_scores_zero():
    a = kv([("alpha", 2.0)])
    b = kv([("beta", 3.0)])
    assert cosine_similarity(a, b) == 0.0


def test_zero_vector_scores_zero_not_error():
    a = kv([("alpha", 0.0)])
    b = kv([("alpha", 1.0)])
    assert cosine_similarity(a, b) == 0.0


def test_hand_cosine_value():
    a = kv([("x", 1.0), ("y", 1.0)])
    b = kv([("y", 1.0), ("z", 1.0)])
    assert cosine_similarity(a, b) == pytest.approx(0.5, abs=1e-12)


_weighted = st.lists(
    st.tuples(st.sampled_from("abcdefgh"), st.floats(0, 10, allow_nan=False)),
    min_size=1,
    max_size=5,
    unique_by=lambda p: p[0],
)


@given(_weighted, _weighted)
def test_cosine_symmetric_and_in_unit_range(pa, pb):
    a, b = kv(pa), kv(pb)
    s1, s2 = cosine_similarity(a, b), cosine_similarity(b, a)
    assert s1 == pytest.approx(s2, abs=1e-12)
    assert -1e-12 <= s1 <= 1.0 + 1e-12


def test_quantile_matches_numpy_reference():
    rng = random.Random(3)
    for n in (1, 2, 3, 4, 7, 100):
        values = [rng.random() for _ in range(n)]
        assert quantile_linear(values, 0.75) == pytest.approx(
            q3_oracle(values), abs=1e-12
        )


def _run_filter(scores):
    records = [rec(i) for i in range(len(scores))]
    keywords = {}
    for record, s in zip(records, scores):
        # cos( (s, sqrt(1-s^2)), (1, 0) ) == s against the query vector below.
        keywords[(record.doi, record.title)] = kv(
            [("q", s), ("other", math.sqrt(max(0.0, 1 - s * s)))]
        )
    query = kv([("q", 1.0)])
    got_scores = relevance_scores(records, keywords, query)
    assert got_scores == pytest.approx(scores, abs=1e-9)
    return relevance_filter(records, keywords, query), records


def test_hundred_distinct_scores_retain_exactly_25():
    rng = random.Random(11)
    scores = sorted({rng.uniform(0.01, 0.99) for _ in range(200)})[:100]
    rng.shuffle(scores)
    assert len(scores) == 100
    kept, _ = _run_filter(scores)
    assert len(kept) == 25
    q3 = q3_oracle(scores)
    expected = {i for i, s in enumerate(scores) if s > q3}
    assert {int(r.doi.split("/")[1]) for r in kept} == expected


@pytest.mark.parametrize("k", [1, 2, 5])
def test_4k_distinct_scores_retain_exactly_k(k):
    rng = random.Random(k)
    scores = [(i + 1) / (4 * k + 1) for i in range(4 * k)]
    rng.shuffle(scores)
    kept, _ = _run_filter(scores)
    assert len(kept) == k


def test_retained_sorted_descending():
    rng = random.Random(5)
    scores = [rng.uniform(0.01, 0.99) for _ in range(40)]
    kept, records = _run_filter(scores)
    by_doi = {r.doi: s for r, s in zip(records, scores)}
    kept_scores = [by_doi[r.doi] for r in kept]
    assert kept_scores == sorted(kept_scores, reverse=True)


def test_all_equal_scores_retain_nothing():
    kept, _ = _run_filter([0.5] * 8)
    assert kept == []
