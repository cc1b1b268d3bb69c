"""The four RAG quality metrics.

* Faithfulness      F  = |supported answer statements| / |answer statements|
* Answer relevance  AR = mean cosine between the question and questions
                         regenerated from the answer alone
* Context precision CP = sum_k(Precision@k * v_k) / |relevant in top K|,
                         Precision@k = (sum_{i<=k} v_i) / k
* Context recall    CR = |supported ground-truth statements| / |ground-truth statements|

All verdicts (statement support, context relevance) come from a pluggable
judge; the arithmetic here is exact.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..agent.llm import LlmClient, LlmError
from ..vector.embedding import EmbeddingProvider, embed
from .judge import Judge

DEFAULT_N_AUX = 3


class NoStatements(ValueError):
    """Text decomposed to zero statements; the score is undefined, not 0."""


class GenerationFailed(RuntimeError):
    """Auxiliary question generation failed."""


def faithfulness(answer: str, contexts: Sequence[str], judge: Judge) -> float:
    """Fraction of answer statements supported by the contexts."""
    if not answer.strip():
        raise NoStatements("empty answer")
    statements = judge.statements(answer)
    if not statements:
        raise NoStatements("answer decomposed to zero statements")
    supported = sum(1 for s in statements if judge.supports(s, contexts))
    return supported / len(statements)


def context_recall(contexts: Sequence[str], ground_truth: str, judge: Judge) -> float:
    """Fraction of ground-truth statements supported by the contexts."""
    if not ground_truth.strip():
        raise NoStatements("empty ground truth")
    statements = judge.statements(ground_truth)
    if not statements:
        raise NoStatements("ground truth decomposed to zero statements")
    supported = sum(1 for s in statements if judge.supports(s, contexts))
    return supported / len(statements)


def cp_from_relevance(relevance: Sequence[int]) -> float:
    """Rank-weighted context precision from a 0/1 relevance vector.

    Zero relevant items yields 0.0 by convention (the formula's 0/0 case).
    """
    if not relevance:
        raise ValueError("relevance vector must be nonempty")
    if any(v not in (0, 1) for v in relevance):
        raise ValueError("relevance entries must be 0 or 1")
    total_relevant = sum(relevance)
    if total_relevant == 0:
        return 0.0
    acc = 0.0
    hits = 0
    for k, v in enumerate(relevance, start=1):
        hits += v
        precision_at_k = hits / k
        acc += precision_at_k * v
    return acc / total_relevant


def context_precision(
    contexts: Sequence[str], ground_truth: str, judge: Judge
) -> float:
    """CP over judge-labeled relevance of each ranked context."""
    if not contexts:
        raise ValueError("contexts must be nonempty")
    relevance = [1 if judge.relevant(c, ground_truth) else 0 for c in contexts]
    return cp_from_relevance(relevance)


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


def build_aux_question_prompt(answer: str, n_aux: int) -> str:
    return (
        f"Write {n_aux} short questions that the following answer directly "
        "answers. One question per line, nothing else.\n\n"
        f"Answer: {answer}\n"
        "Questions:"
    )


def answer_relevance(
    question: str,
    answer: str,
    llm: LlmClient,
    embedder: EmbeddingProvider,
    n_aux: int = DEFAULT_N_AUX,
) -> float:
    """Mean cosine between the question and questions regenerated from the answer."""
    try:
        reply = llm.complete(build_aux_question_prompt(answer, n_aux))
    except LlmError as exc:
        raise GenerationFailed(f"auxiliary question generation failed: {exc}") from exc
    aux = [ln.strip() for ln in reply.splitlines() if ln.strip()][:n_aux]
    if not aux:
        raise GenerationFailed("no auxiliary questions produced")
    vectors = embed([question, *aux], embedder)
    q_vec = vectors[0]
    sims = [cosine(q_vec, v) for v in vectors[1:]]
    return float(sum(sims) / len(sims))
