"""Natural-language to Cypher translation with one error-feedback repair round."""

from __future__ import annotations

import re

from ..graph.cypher_ast import CypherQuery
from ..graph.cypher_parser import ParseError, UnsupportedFeature, parse_cypher
from .bundles import CypherBundle, load_cypher_bundle
from .llm import LlmClient, LlmError


class TranslationFailed(RuntimeError):
    """Both translation attempts produced invalid Cypher; raw outputs attached."""

    def __init__(self, message: str, raw_outputs: list[str]):
        super().__init__(message)
        self.raw_outputs = raw_outputs


_FENCE_RE = re.compile(r"```(?:cypher)?\s*(.*?)```", re.DOTALL)


def extract_query_text(reply: str) -> str:
    """Pull the query out of a reply, tolerating code fences and chatter."""
    m = _FENCE_RE.search(reply)
    if m:
        return m.group(1).strip()
    for line in reply.splitlines():
        if line.strip().upper().startswith("MATCH"):
            return line.strip()
    return reply.strip()


def build_translation_prompt(
    question: str, schema: str, bundle: CypherBundle, error: str | None = None
) -> str:
    parts = [bundle.instruction, "", "Schema:", schema, ""]
    for q, c in bundle.examples:
        parts.append(f"Question: {q}")
        parts.append(f"Cypher: {c}")
        parts.append("")
    parts.append(f"Question: {question}")
    if error:
        parts.append(f"The previous attempt failed with: {error}")
        parts.append("Produce a corrected query.")
    parts.append("Cypher:")
    return "\n".join(parts)


def translate_to_cypher(
    question: str,
    schema: str,
    llm: LlmClient,
    bundle: CypherBundle | None = None,
    trace_sink: dict | None = None,
) -> CypherQuery:
    """Translate ``question`` into a parsed query, or raise TranslationFailed.

    ``trace_sink``, when given, receives prompts and raw replies for the
    per-answer trace record.
    """
    if llm is None:
        raise TranslationFailed("no LLM configured for translation", [])
    bundle = bundle or load_cypher_bundle()
    raw_outputs: list[str] = []
    prompts: list[str] = []
    error: str | None = None
    try:
        for _ in range(2):
            prompt = build_translation_prompt(question, schema, bundle, error)
            prompts.append(prompt)
            try:
                reply = llm.complete(prompt)
            except LlmError as exc:
                raw_outputs.append(f"<error: {exc}>")
                error = str(exc)
                continue
            raw_outputs.append(reply)
            try:
                return parse_cypher(extract_query_text(reply))
            except (ParseError, UnsupportedFeature) as exc:
                error = str(exc)
        raise TranslationFailed(
            f"both translation attempts failed; last error: {error}", raw_outputs
        )
    finally:
        if trace_sink is not None:
            trace_sink["prompts"] = prompts
            trace_sink["replies"] = raw_outputs
