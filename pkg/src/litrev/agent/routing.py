"""Per-question choice between the graph tool and the vector tool.

With an LLM configured, the routing prompt carries the 10 few-shot
examples and the question, and the tool token is parsed from the reply
(one retry on an unparseable reply). Without one, a cue-word heuristic
decides: metadata vocabulary (authors, years, keywords, databases,
citations, counts) routes to the graph, everything else to vector search.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .bundles import RoutingBundle, load_routing_bundle
from .llm import LlmClient, LlmError


class RoutingFailed(RuntimeError):
    """LLM reply unparseable twice and the heuristic fallback is disabled."""


@dataclass(frozen=True)
class ToolChoice:
    tool: str  # "graph" | "vector"
    rationale: str
    decided_by: str  # "llm" | "heuristic_fallback" | "forced"

    def to_dict(self) -> dict:
        return {"tool": self.tool, "rationale": self.rationale, "decided_by": self.decided_by}


_GRAPH_CUES = (
    "author",
    "authors",
    "year",
    "years",
    "published",
    "publish",
    "publication",
    "cited",
    "cites",
    "cite",
    "citation",
    "citations",
    "keyword",
    "keywords",
    "database",
    "databases",
    "indexed",
    "related",
    "connected",
    "doi",
)
_GRAPH_PHRASES = ("how many",)

_TOOL_TOKEN_RE = re.compile(r"\b(graphrag|vectorrag|graph|vector)\b", re.IGNORECASE)


def heuristic_route(question: str) -> str:
    lowered = question.lower()
    if any(phrase in lowered for phrase in _GRAPH_PHRASES):
        return "graph"
    words = set(re.findall(r"[a-z]+", lowered))
    if words.intersection(_GRAPH_CUES):
        return "graph"
    return "vector"


def build_routing_prompt(question: str, bundle: RoutingBundle) -> str:
    parts = [bundle.instruction, ""]
    for ex in bundle.examples:
        parts.append(f"Question: {ex.question}")
        parts.append(f"Tool: {ex.tool}")
        parts.append(f"Retrieved context: {ex.retrieved_context}")
        parts.append(f"Final answer: {ex.final_answer}")
        parts.append("")
    parts.append(f"Question: {question}")
    parts.append("Tool:")
    return "\n".join(parts)


def parse_tool_token(reply: str) -> str | None:
    m = _TOOL_TOKEN_RE.search(reply)
    if m is None:
        return None
    token = m.group(1).lower()
    return "graph" if token.startswith("graph") else "vector"


def route(
    question: str,
    llm: LlmClient | None = None,
    bundle: RoutingBundle | None = None,
    fallback_enabled: bool = True,
    trace_sink: dict | None = None,
) -> ToolChoice:
    """Decide the retrieval tool for ``question``; see module docstring.

    ``trace_sink``, when given, receives the prompt and raw replies for the
    per-answer trace record.
    """
    if llm is None:
        return ToolChoice(
            tool=heuristic_route(question),
            rationale="cue-word heuristic (no LLM configured)",
            decided_by="heuristic_fallback",
        )
    bundle = bundle or load_routing_bundle()
    prompt = build_routing_prompt(question, bundle)
    if trace_sink is not None:
        trace_sink["prompt"] = prompt
    replies = []
    for attempt in range(2):
        try:
            reply = llm.complete(
                prompt
                if attempt == 0
                else prompt + "\nReply with exactly one word: graph or vector."
            )
        except LlmError as exc:
            replies.append(f"<error: {exc}>")
            continue
        replies.append(reply)
        tool = parse_tool_token(reply)
        if tool is not None:
            if trace_sink is not None:
                trace_sink["replies"] = replies
            return ToolChoice(tool=tool, rationale=reply.strip(), decided_by="llm")
    if trace_sink is not None:
        trace_sink["replies"] = replies
    if fallback_enabled:
        return ToolChoice(
            tool=heuristic_route(question),
            rationale=f"heuristic after unparseable LLM replies: {replies!r}",
            decided_by="heuristic_fallback",
        )
    raise RoutingFailed(f"unparseable routing replies: {replies!r}")
