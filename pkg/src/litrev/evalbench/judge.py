"""Semantic judgments behind the quality metrics.

Metrics need three verdicts: split a text into statements, decide whether a
statement is supported by any context, and decide whether a retrieved
context is relevant to a reference answer. The deterministic fallback judge
splits on terminal punctuation and calls a statement supported when at
least 60% of its content tokens (lowercased, stopwords removed) appear in
one context; the LLM judge delegates the same verdicts to a model and is
the configuration that mirrors a hosted-judge setup.
"""

from __future__ import annotations

import re
from typing import Protocol, Sequence

from ..agent.llm import LlmClient, LlmError
from ..ingest.keywords import STOPWORDS

_SENTENCE_SPLIT_RE = re.compile(r"(?<=[.!?])\s+")
_WORD_RE = re.compile(r"[a-z0-9]+")

DEFAULT_OVERLAP_THRESHOLD = 0.6


class Judge(Protocol):
    def statements(self, text: str) -> list[str]: ...

    def supports(self, statement: str, contexts: Sequence[str]) -> bool: ...

    def relevant(self, context: str, reference: str) -> bool: ...


def _content_tokens(text: str) -> set[str]:
    return {t for t in _WORD_RE.findall(text.lower()) if t not in STOPWORDS}


def split_sentences(text: str) -> list[str]:
    parts = [p.strip() for p in _SENTENCE_SPLIT_RE.split(text.strip())]
    return [p for p in parts if p]


class OverlapJudge:
    """Deterministic fallback: sentence split + token-overlap support test."""

    def __init__(self, threshold: float = DEFAULT_OVERLAP_THRESHOLD):
        self.threshold = threshold

    def statements(self, text: str) -> list[str]:
        return split_sentences(text)

    def _covered(self, claim: str, source: str) -> bool:
        claim_tokens = _content_tokens(claim)
        if not claim_tokens:
            return False
        source_tokens = _content_tokens(source)
        ratio = len(claim_tokens & source_tokens) / len(claim_tokens)
        return ratio >= self.threshold

    def supports(self, statement: str, contexts: Sequence[str]) -> bool:
        return any(self._covered(statement, ctx) for ctx in contexts)

    def relevant(self, context: str, reference: str) -> bool:
        # A context is relevant when it covers the reference's content.
        return self._covered(reference, context)


class LlmJudge:
    """Delegates verdicts to an LLM; replies are parsed for a yes/no token."""

    def __init__(self, llm: LlmClient):
        self.llm = llm

    def statements(self, text: str) -> list[str]:
        prompt = (
            "Split the following text into its atomic factual statements, "
            "one per line, nothing else.\n\n" + text
        )
        try:
            reply = self.llm.complete(prompt)
        except LlmError:
            return split_sentences(text)
        lines = [ln.strip("- ").strip() for ln in reply.splitlines()]
        return [ln for ln in lines if ln] or split_sentences(text)

    def _yes(self, prompt: str) -> bool:
        try:
            reply = self.llm.complete(prompt)
        except LlmError:
            return False
        return bool(re.search(r"\byes\b", reply, re.IGNORECASE))

    def supports(self, statement: str, contexts: Sequence[str]) -> bool:
        ctx = "\n---\n".join(contexts)
        return self._yes(
            "Context:\n"
            f"{ctx}\n\n"
            f"Statement: {statement}\n"
            "Is the statement supported by the context? Answer yes or no."
        )

    def relevant(self, context: str, reference: str) -> bool:
        return self._yes(
            f"Reference answer: {reference}\n\n"
            f"Retrieved context: {context}\n"
            "Is the context relevant to the reference answer? Answer yes or no."
        )
