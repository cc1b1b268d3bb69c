import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from litrev.vector.chunking import Chunk, EmptyDocument, chunk_document, reconstruct


def test_5000_char_text_produces_the_three_expected_windows():
    chunks = chunk_document("x" * 5000, "10.1/d")
    spans = [(c.start_offset, c.end_offset) for c in chunks]
    assert spans == [(0, 2024), (1974, 3998), (3948, 5000)]
    assert [c.seq for c in chunks] == [0, 1, 2]


def test_short_text_is_one_full_chunk():
    chunks = chunk_document("y" * 1000, "10.1/d")
    assert len(chunks) == 1
    assert chunks[0].text == "y" * 1000
    assert (chunks[0].start_offset, chunks[0].end_offset) == (0, 1000)


def test_empty_text_raises():
    with pytest.raises(EmptyDocument):
        chunk_document("", "10.1/d")


def test_exact_window_boundary_has_no_degenerate_tail():
    # With stride 1974, a 3998-char text ends exactly at the second window.
    chunks = chunk_document("z" * 3998, "10.1/d")
    assert [(c.start_offset, c.end_offset) for c in chunks] == [(0, 2024), (1974, 3998)]


def _check_invariants(text: str, chunks: list[Chunk]):
    assert all(len(c.text) <= 2024 for c in chunks)
    for a, b in zip(chunks, chunks[1:]):
        assert a.end_offset - b.start_offset == 50  # exact 50-char overlap
        assert a.text[-50:] == b.text[:50]
    assert reconstruct(chunks) == text
    assert all(text[c.start_offset : c.end_offset] == c.text for c in chunks)


def test_invariants_on_seeded_random_lengths():
    rng = random.Random(99)
    for _ in range(100):
        n = rng.randint(1, 10_000)
        text = "".join(rng.choice("abcdef \n") for _ in range(n))
        _check_invariants(text, chunk_document(text, "10.1/d"))


@given(st.text(min_size=1, max_size=6000))
def test_reconstruction_property(text):
    _check_invariants(text, chunk_document(text, "10.1/d"))


def test_chunk_ids_and_keys():
    chunks = chunk_document("a" * 5000, "10.9/z")
    assert [c.chunk_id for c in chunks] == ["10.9/z#0", "10.9/z#1", "10.9/z#2"]
    assert chunks[1].natural_key == ("10.9/z", 1)


def test_bad_overlap_rejected():
    with pytest.raises(ValueError):
        chunk_document("abc", "d", size=10, overlap=10)
