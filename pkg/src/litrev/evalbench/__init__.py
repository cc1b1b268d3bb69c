"""Synthetic benchmark generation, RAG quality metrics, and bootstrap margins."""

from .benchmark import (
    BenchmarkItem,
    InsufficientChunks,
    InsufficientGraph,
    answer_from_table,
    gen_kg_questions,
    gen_vs_questions,
    read_benchmark_jsonl,
    write_benchmark_jsonl,
)
from .bootstrap import BootstrapReport, BootstrapStat, InsufficientResults, bootstrap
from .judge import Judge, LlmJudge, OverlapJudge
from .metrics import (
    GenerationFailed,
    NoStatements,
    answer_relevance,
    context_precision,
    context_recall,
    cp_from_relevance,
    faithfulness,
)

__all__ = [
    "BenchmarkItem",
    "BootstrapReport",
    "BootstrapStat",
    "GenerationFailed",
    "InsufficientChunks",
    "InsufficientGraph",
    "InsufficientResults",
    "Judge",
    "LlmJudge",
    "NoStatements",
    "OverlapJudge",
    "answer_from_table",
    "answer_relevance",
    "bootstrap",
    "context_precision",
    "context_recall",
    "cp_from_relevance",
    "faithfulness",
    "gen_kg_questions",
    "gen_vs_questions",
    "read_benchmark_jsonl",
    "write_benchmark_jsonl",
]
