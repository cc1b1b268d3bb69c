from __future__ import annotations

import re
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from litrev.graph.model import PropertyGraph, upsert_paper
from litrev.ingest.keywords import KeywordVector
from litrev.ingest.records import BibRecord

FIXTURES_DIR = Path(__file__).parent / "fixtures"

E2E_QUERY = (
    '("Multimodal Large Language Model" OR MLLM OR "Information Fusion" OR '
    '"Multimodal Learning") AND (Healthcare OR Medicine OR Health)'
)


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES_DIR


def _kv(*terms: str) -> KeywordVector:
    weights = tuple(float(len(terms) - i) for i in range(len(terms)))
    return KeywordVector(terms=tuple(terms), weights=weights)


GOLDEN_PAPERS = [
    (
        BibRecord(
            doi="10.1000/42",
            title="Deep Learning for Sepsis Prediction",
            abstract="We study sepsis prediction with deep learning and imaging biomarkers.",
            year=2023,
            authors=["Jane Doe", "John Smith"],
            pdf_url="",
            source_db="pubmed",
        ),
        _kv("sepsis", "deep", "learn", "model", "healthcare"),
        ["10.5555/ref7", "10.5555/ref9"],
    ),
    (
        BibRecord(
            doi="10.1000/200",
            title="Graph Methods in Biology",
            abstract="Graph methods support biology workflows and imaging pipelines.",
            year=2024,
            authors=["John Smith", "Mei Chen"],
            pdf_url="",
            source_db="arxiv",
        ),
        _kv("graph", "biology", "workflow", "network", "fusion"),
        ["10.5555/ref9", "10.5555/ref3"],
    ),
    (
        BibRecord(
            doi="10.1000/5",
            title="Transformers in Radiology",
            abstract="Transformers for radiology image analysis.",
            year=2023,
            authors=["Jane Doe"],
            pdf_url="",
            source_db="arxiv",
        ),
        _kv("transformer", "radiology", "imaging", "attention", "fusion"),
        ["10.5555/ref3"],
    ),
    (
        BibRecord(
            doi="10.1000/77",
            title="Sensor Fusion for Triage",
            abstract="Multimodal sensor fusion for emergency triage.",
            year=2025,
            authors=["Aiko Tanaka", "Mei Chen"],
            pdf_url="",
            source_db="scholar",
        ),
        _kv("sensor", "fusion", "triage", "multimodal", "agent"),
        [],
    ),
    (
        BibRecord(
            doi="10.1000/88",
            title="Contrastive Text Models",
            abstract="Contrastive learning for clinical text.",
            year=2024,
            authors=["Omar Haddad"],
            pdf_url="",
            source_db="pubmed",
        ),
        _kv("contrastive", "text", "clinical", "model", "embedding"),
        ["10.5555/ref7"],
    ),
]


def build_golden_graph() -> PropertyGraph:
    graph = PropertyGraph()
    for record, kv, cited in GOLDEN_PAPERS:
        upsert_paper(graph, record, kv, cited)
    return graph


@pytest.fixture
def golden_graph() -> PropertyGraph:
    return build_golden_graph()


QUESTION_RE = re.compile(r"Question: (.*)$", re.MULTILINE)


def last_question(prompt: str) -> str:
    """The final 'Question:' line of a few-shot prompt."""
    hits = QUESTION_RE.findall(prompt)
    return hits[-1].strip() if hits else ""
