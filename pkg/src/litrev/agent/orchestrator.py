"""The answer pipeline: route, retrieve through one tool, generate grounded text.

The generator is only ever shown the question plus the retrieved contexts
(inspectable in the recorded trace), and any Cypher reaching the executor
has gone through the parser. Empty retrieval yields a fixed abstention
answer instead of an ungrounded generation.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..graph.executor import execute
from ..graph.model import PropertyGraph
from ..graph.schema import schema_text
from ..retrieval.ensemble import ensemble_retrieve
from ..retrieval.rerank import Reranker, rerank
from ..vector.bm25 import Bm25Index
from ..vector.dense import DenseIndex
from ..vector.embedding import EmbeddingProvider
from .bundles import CypherBundle, RoutingBundle, load_cypher_bundle, load_routing_bundle
from .llm import LlmClient
from .routing import ToolChoice, route
from .translate import translate_to_cypher

ABSTENTION_ANSWER = "No supporting context was retrieved for this question."


@dataclass(frozen=True)
class ContextItem:
    text: str
    provenance: str  # chunk id, or "graph" for a rendered result table

    def to_dict(self) -> dict:
        return {"text": self.text, "provenance": self.provenance}


@dataclass
class RoutedAnswer:
    question: str
    choice: ToolChoice
    contexts: list[ContextItem]
    answer: str
    generator_id: str

    def to_dict(self) -> dict:
        return {
            "question": self.question,
            "choice": self.choice.to_dict(),
            "contexts": [c.to_dict() for c in self.contexts],
            "answer": self.answer,
            "generator_id": self.generator_id,
        }


@dataclass
class Trace:
    question: str
    choice: dict = field(default_factory=dict)
    prompts: dict = field(default_factory=dict)
    raw_replies: dict = field(default_factory=dict)
    contexts: list = field(default_factory=list)
    cypher: str | None = None
    timings_ms: dict = field(default_factory=dict)
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "question": self.question,
            "choice": self.choice,
            "prompts": self.prompts,
            "raw_replies": self.raw_replies,
            "contexts": self.contexts,
            "cypher": self.cypher,
            "timings_ms": self.timings_ms,
            "error": self.error,
        }


def build_generation_prompt(question: str, contexts: list[str]) -> str:
    blocks = "\n\n".join(f"[{i + 1}] {c}" for i, c in enumerate(contexts))
    return (
        "Answer the question using only the context below.\n\n"
        f"Context:\n{blocks}\n\n"
        f"Question: {question}\n"
        "Answer:"
    )


class Agent:
    """Wires the stores, the LLM clients, and the few-shot bundles together."""

    def __init__(
        self,
        graph: PropertyGraph,
        dense_index: DenseIndex,
        bm25_index: Bm25Index,
        embedder: EmbeddingProvider,
        generator: LlmClient,
        chunk_texts: dict[str, str],
        router_llm: LlmClient | None = None,
        reranker: Reranker | None = None,
        routing_bundle: RoutingBundle | None = None,
        cypher_bundle: CypherBundle | None = None,
        k_each: int = 5,
        context_size: int = 5,
        rrf_k0: int = 60,
    ):
        self.graph = graph
        self.dense_index = dense_index
        self.bm25_index = bm25_index
        self.embedder = embedder
        self.generator = generator
        self.chunk_texts = chunk_texts
        self.router_llm = router_llm
        self.reranker = reranker
        self.routing_bundle = routing_bundle or load_routing_bundle()
        self.cypher_bundle = cypher_bundle or load_cypher_bundle()
        self.k_each = k_each
        self.context_size = context_size
        self.rrf_k0 = rrf_k0

    def answer(
        self,
        question: str,
        forced_tool: str | None = None,
        cypher_override: str | None = None,
    ) -> tuple[RoutedAnswer, Trace]:
        """Route, retrieve, generate. ``cypher_override`` skips translation on the
        graph path (the override still goes through the parser)."""
        trace = Trace(question=question)
        t0 = time.perf_counter()
        if forced_tool is not None:
            choice = ToolChoice(tool=forced_tool, rationale="forced by caller", decided_by="forced")
        else:
            sink: dict = {}
            choice = route(question, self.router_llm, self.routing_bundle, trace_sink=sink)
            if sink.get("prompt"):
                trace.prompts["routing"] = sink["prompt"]
            if sink.get("replies"):
                trace.raw_replies["routing"] = sink["replies"]
        trace.choice = choice.to_dict()
        trace.timings_ms["route"] = round((time.perf_counter() - t0) * 1000, 3)

        try:
            if choice.tool == "graph":
                contexts = self._graph_contexts(question, trace, cypher_override)
            else:
                contexts = self._vector_contexts(question, trace)
        except Exception as exc:
            trace.error = f"{type(exc).__name__}: {exc}"
            raise
        trace.contexts = [c.to_dict() for c in contexts]

        if not contexts:
            answer = ABSTENTION_ANSWER
        else:
            prompt = build_generation_prompt(question, [c.text for c in contexts])
            trace.prompts["generation"] = prompt
            t1 = time.perf_counter()
            answer = self.generator.complete(prompt)
            trace.raw_replies["generation"] = answer
            trace.timings_ms["generate"] = round((time.perf_counter() - t1) * 1000, 3)
        routed = RoutedAnswer(
            question=question,
            choice=choice,
            contexts=contexts,
            answer=answer,
            generator_id=self.generator.model_id,
        )
        return routed, trace

    def _graph_contexts(
        self, question: str, trace: Trace, cypher_override: str | None = None
    ) -> list[ContextItem]:
        if not self.graph.nodes:
            return []
        t0 = time.perf_counter()
        if cypher_override is not None:
            from ..graph.cypher_parser import parse_cypher

            ast = parse_cypher(cypher_override)
            trace.prompts["translation"] = "<cypher override>"
        else:
            sink: dict = {}
            ast = translate_to_cypher(
                question,
                schema_text(self.graph),
                self.router_llm,
                self.cypher_bundle,
                trace_sink=sink,
            )
            if sink.get("prompts"):
                trace.prompts["translation"] = sink["prompts"]
            if sink.get("replies"):
                trace.raw_replies["translation"] = sink["replies"]
        from ..graph.cypher_ast import render

        trace.cypher = render(ast)
        table = execute(ast, self.graph)
        trace.timings_ms["graph_retrieve"] = round((time.perf_counter() - t0) * 1000, 3)
        if not table.rows:
            return []
        return [ContextItem(text=table.render_tsv(), provenance="graph")]

    def _vector_contexts(self, question: str, trace: Trace) -> list[ContextItem]:
        if len(self.dense_index) == 0 or self.bm25_index.n_chunks == 0:
            return []
        t0 = time.perf_counter()
        candidates = ensemble_retrieve(
            question, self.dense_index, self.bm25_index, self.embedder, self.k_each
        )
        ranked = rerank(
            question,
            candidates,
            self.reranker,
            self.chunk_texts,
            context_size=self.context_size,
            rrf_k0=self.rrf_k0,
        )
        trace.timings_ms["vector_retrieve"] = round((time.perf_counter() - t0) * 1000, 3)
        trace.prompts["fused_by"] = ranked.fused_by
        return [
            ContextItem(text=self.chunk_texts[cid], provenance=cid)
            for cid, _, _ in ranked.items
        ]
