"""Engine: a loaded snapshot plus clients, serving queries and benchmarks.

Offline determinism: when no HTTP model endpoints are configured, routing
falls back to the cue heuristic, benchmark Cypher comes from each item's
stored template, the generator echoes the top retrieved context, and the
auxiliary-question model derives questions from the answer text. Every
offline substitute is deterministic, so seeded runs are byte-identical.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from ..agent.llm import HttpLlmClient, LlmClient
from ..agent.orchestrator import (
    ABSTENTION_ANSWER,
    Agent,
    ContextItem,
    RoutedAnswer,
    Trace,
    build_generation_prompt,
)
from ..agent.routing import ToolChoice
from ..evalbench.benchmark import (
    BenchmarkItem,
    gen_kg_questions,
    gen_vs_questions,
    read_benchmark_jsonl,
    write_benchmark_jsonl,
)
from ..evalbench.bootstrap import METRICS, bootstrap
from ..evalbench.judge import LlmJudge, OverlapJudge
from ..evalbench.metrics import (
    GenerationFailed,
    NoStatements,
    answer_relevance,
    context_precision,
    context_recall,
    faithfulness,
)
from ..ingest.keywords import STOPWORDS
from ..retrieval.rerank import HttpReranker
from .baseline import joint_search
from .config import PipelineConfig
from .pipeline import make_embedder
from .snapshot import CorpusSnapshot

_WORD_RE = re.compile(r"[a-z0-9]+")


class EngineError(RuntimeError):
    def __init__(self, message: str, trace_id: str | None = None):
        super().__init__(message)
        self.trace_id = trace_id


def _extract_between(text: str, start: str, end: str) -> str | None:
    i = text.find(start)
    if i < 0:
        return None
    j = text.find(end, i + len(start))
    if j < 0:
        return None
    return text[i + len(start) : j]


class EchoGenerator(LlmClient):
    """Offline generator: answers with the first retrieved context block."""

    model_id = "offline-echo"

    def complete(self, prompt: str) -> str:
        body = _extract_between(prompt, "Context:\n", "\n\nQuestion:")
        if body is None:
            return prompt.strip().splitlines()[-1] if prompt.strip() else ""
        first_block = body.split("\n\n")[0]
        return re.sub(r"^\[\d+\]\s*", "", first_block).strip()


def _salient_tokens(text: str, n: int = 4) -> list[str]:
    tokens = [t for t in _WORD_RE.findall(text.lower()) if t not in STOPWORDS]
    seen: list[str] = []
    for t in tokens:
        if len(t) > 3 and t not in seen:
            seen.append(t)
        if len(seen) == n:
            break
    return seen


class OfflineQuestionLlm(LlmClient):
    """Offline substitute for question-generation prompts.

    Benchmark prompts get a content question built from the context's
    leading distinctive tokens; auxiliary-question prompts get the answer
    text back as a single question line.
    """

    model_id = "offline-questions"

    def complete(self, prompt: str) -> str:
        ctx = _extract_between(prompt, "Context:\n", "\n\nQuestion:")
        if ctx is not None:
            tokens = _salient_tokens(ctx)
            topic = " ".join(tokens) if tokens else "this topic"
            return f"What does the passage explain regarding {topic}?"
        answer = _extract_between(prompt, "Answer: ", "\nQuestions:")
        if answer is not None:
            return answer.strip().splitlines()[0] if answer.strip() else "What is stated?"
        return "What is stated?"


@dataclass
class _BenchmarkRow:
    item: BenchmarkItem
    answer: str
    tool: str
    contexts: list[str] = field(default_factory=list)
    trace_id: str = ""
    scores: dict = field(default_factory=dict)


class Engine:
    def __init__(
        self,
        config: PipelineConfig,
        snapshot: CorpusSnapshot | None = None,
        router_llm: LlmClient | None = None,
        generator: LlmClient | None = None,
        dpo_generator: LlmClient | None = None,
        question_llm: LlmClient | None = None,
        judge=None,
    ):
        self.config = config
        self.snapshot = snapshot
        self.traces: dict[str, dict] = {}
        self._query_counter = 0

        self.router_llm = router_llm if router_llm is not None else self._client(
            config.router_provider, config.router_endpoint, config.router_model
        )
        self.generator = generator if generator is not None else (
            self._client(
                config.generator_provider, config.generator_endpoint, config.generator_model
            )
            or EchoGenerator()
        )
        self.dpo_generator = dpo_generator if dpo_generator is not None else self._client(
            config.dpo_generator_provider,
            config.dpo_generator_endpoint,
            config.dpo_generator_model,
        )
        self.question_llm = question_llm or self.router_llm or OfflineQuestionLlm()
        if judge is not None:
            self.judge = judge
        elif config.judge_provider == "llm" and self.router_llm is not None:
            self.judge = LlmJudge(self.router_llm)
        else:
            self.judge = OverlapJudge()
        self.embedder = make_embedder(config)
        self.reranker = None
        if config.reranker_provider == "http":
            self.reranker = HttpReranker(config.reranker_endpoint, config.reranker_model)
        self.agent = self._build_agent() if snapshot is not None else None

    @staticmethod
    def _client(provider: str, endpoint: str, model: str) -> LlmClient | None:
        if provider == "http":
            return HttpLlmClient(endpoint=endpoint, model=model)
        if provider == "echo":
            return EchoGenerator()
        return None

    def _build_agent(self) -> Agent:
        snap = self.snapshot
        return Agent(
            graph=snap.graph,
            dense_index=snap.dense_index,
            bm25_index=snap.bm25_index,
            embedder=self.embedder,
            generator=self.generator,
            chunk_texts=snap.chunk_texts(),
            router_llm=self.router_llm,
            reranker=self.reranker,
            k_each=self.config.k_each,
            context_size=self.config.context_size,
            rrf_k0=self.config.rrf_k0,
        )

    @property
    def loaded(self) -> bool:
        return self.snapshot is not None and self.agent is not None

    def load_snapshot(self, path: str | Path) -> None:
        self.snapshot = CorpusSnapshot.load(path)
        self.agent = self._build_agent()

    # -- queries -------------------------------------------------------------

    def _next_trace_id(self, question: str) -> str:
        self._query_counter += 1
        digest = hashlib.sha1(question.encode("utf-8")).hexdigest()[:8]
        prefix = self.snapshot.config_hash[:8] if self.snapshot else "unloaded"
        return f"{prefix}-{self._query_counter:04d}-{digest}"

    def handle_query(
        self,
        question: str,
        forced_tool: str | None = None,
        cypher_override: str | None = None,
    ) -> tuple[RoutedAnswer, str]:
        if not self.loaded:
            raise EngineError("no snapshot loaded")
        trace_id = self._next_trace_id(question)
        try:
            routed, trace = self.agent.answer(
                question, forced_tool=forced_tool, cypher_override=cypher_override
            )
        except Exception as exc:
            trace = Trace(question=question, error=f"{type(exc).__name__}: {exc}")
            self.traces[trace_id] = trace.to_dict()
            raise EngineError(str(exc), trace_id=trace_id) from exc
        self.traces[trace_id] = trace.to_dict()
        return routed, trace_id

    # -- benchmark -----------------------------------------------------------

    def generate_benchmark(self) -> list[BenchmarkItem]:
        if not self.loaded:
            raise EngineError("no snapshot loaded")
        items = gen_kg_questions(
            self.snapshot.graph,
            per_type=self.config.benchmark_kg_per_type,
            rng_seed=self.config.seed,
        )
        items.extend(
            gen_vs_questions(
                self.snapshot.chunks,
                llm=self.question_llm,
                n=self.config.benchmark_vs_questions,
                rng_seed=self.config.seed,
            )
        )
        return items

    def _baseline_answer(self, item: BenchmarkItem) -> tuple[RoutedAnswer, str]:
        snap = self.snapshot
        fused, _ = joint_search(
            item.question,
            snap.dense_index,
            snap.card_index,
            self.embedder,
            k_each=self.config.k_each,
            context_size=self.config.context_size,
            rrf_k0=self.config.rrf_k0,
        )
        texts = snap.chunk_texts()
        contexts = [
            ContextItem(
                text=texts.get(cid) or snap.card_texts.get(cid, ""), provenance=cid
            )
            for cid, _ in fused
        ]
        if contexts:
            prompt = build_generation_prompt(item.question, [c.text for c in contexts])
            answer = self.generator.complete(prompt)
        else:
            answer = ABSTENTION_ANSWER
        routed = RoutedAnswer(
            question=item.question,
            choice=ToolChoice(
                tool="vector",
                rationale="non-agentic joint semantic search over chunks and graph cards",
                decided_by="forced",
            ),
            contexts=contexts,
            answer=answer,
            generator_id=self.generator.model_id,
        )
        trace_id = self._next_trace_id(item.question)
        self.traces[trace_id] = {
            "question": item.question,
            "mode": "baseline",
            "contexts": [c.to_dict() for c in contexts],
        }
        return routed, trace_id

    def _agentic_answer(
        self, item: BenchmarkItem, generator: LlmClient
    ) -> tuple[RoutedAnswer, str]:
        saved = self.agent.generator
        self.agent.generator = generator
        try:
            override = item.cypher if self.router_llm is None else None
            routed, trace_id = self.handle_query(
                item.question, cypher_override=override
            )
        finally:
            self.agent.generator = saved
        return routed, trace_id

    def _score_row(self, item: BenchmarkItem, routed: RoutedAnswer, trace_id: str) -> _BenchmarkRow:
        contexts = [c.text for c in routed.contexts]
        row = _BenchmarkRow(
            item=item, answer=routed.answer, tool=routed.choice.tool,
            contexts=contexts, trace_id=trace_id,
        )
        try:
            row.scores["faithfulness"] = faithfulness(routed.answer, contexts, self.judge)
        except NoStatements:
            row.scores["faithfulness"] = None
        try:
            ar = answer_relevance(
                item.question, routed.answer, self.question_llm, self.embedder
            )
            row.scores["answer_relevance"] = min(1.0, max(0.0, ar))
        except GenerationFailed:
            row.scores["answer_relevance"] = None
        if contexts:
            row.scores["context_precision"] = context_precision(
                contexts, item.ground_truth, self.judge
            )
        else:
            row.scores["context_precision"] = 0.0
        try:
            row.scores["context_recall"] = context_recall(
                contexts, item.ground_truth, self.judge
            )
        except NoStatements:
            row.scores["context_recall"] = None
        return row

    def _aggregate(self, rows: list[_BenchmarkRow]) -> dict:
        def scope_rows(scope: str):
            if scope == "overall":
                return rows
            tool = "graph" if scope == "kg" else "vector"
            return [r for r in rows if r.item.target_tool == tool]

        scopes = {}
        for scope in ("kg", "vs", "overall"):
            rs = scope_rows(scope)
            metrics = {}
            for metric in METRICS:
                values = [
                    r.scores[metric] for r in rs if r.scores.get(metric) is not None
                ]
                metrics[metric] = sum(values) / len(values) if values else None
            scopes[scope] = {"n_items": len(rs), "metrics": metrics}
        return scopes

    def run_benchmark(
        self,
        out_dir: str | Path,
        benchmark_path: str | Path | None = None,
        modes: list[str] | None = None,
    ) -> dict:
        """Generate/load the benchmark, answer it per mode, score, bootstrap, write."""
        if not self.loaded:
            raise EngineError("no snapshot loaded")
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        if benchmark_path is not None:
            items = read_benchmark_jsonl(benchmark_path)
        else:
            items = self.generate_benchmark()
        write_benchmark_jsonl(items, out_dir / "benchmark.jsonl")

        available = {"baseline", "agentic"}
        if self.dpo_generator is not None:
            available.add("agentic_dpo")
        run_modes = [m for m in (modes or sorted(available)) if m in available]
        notes = {}
        if "agentic_dpo" not in available:
            notes["agentic_dpo"] = (
                "external preference-tuned generator endpoint not configured; skipped"
            )

        report: dict = {
            "version": 1,
            "config_hash": self.config.config_hash(),
            "seed": self.config.seed,
            "benchmark": {
                "total": len(items),
                "kg": sum(1 for i in items if i.target_tool == "graph"),
                "vs": sum(1 for i in items if i.target_tool == "vector"),
            },
            "modes": {},
            "notes": notes,
        }
        for mode in run_modes:
            rows = []
            for item in items:
                try:
                    if mode == "baseline":
                        routed, trace_id = self._baseline_answer(item)
                    elif mode == "agentic":
                        routed, trace_id = self._agentic_answer(item, self.generator)
                    else:
                        routed, trace_id = self._agentic_answer(item, self.dpo_generator)
                except EngineError as exc:
                    # A failed tool call scores as an unsupported abstention
                    # instead of aborting the whole run.
                    routed = RoutedAnswer(
                        question=item.question,
                        choice=ToolChoice(
                            tool=item.target_tool,
                            rationale=f"tool error: {exc}",
                            decided_by="forced",
                        ),
                        contexts=[],
                        answer=ABSTENTION_ANSWER,
                        generator_id=self.generator.model_id,
                    )
                    trace_id = exc.trace_id or ""
                rows.append(self._score_row(item, routed, trace_id))
            boot = bootstrap(
                [
                    {"target_tool": r.item.target_tool, **r.scores}
                    for r in rows
                ],
                b=self.config.bootstrap_b,
                sample_size=self.config.bootstrap_sample_size,
                alpha=self.config.bootstrap_alpha,
                rng_seed=self.config.seed,
            )
            report["modes"][mode] = {
                "scopes": self._aggregate(rows),
                "bootstrap": boot.to_dict(),
                "items": [
                    {
                        "question": r.item.question,
                        "qtype": r.item.qtype,
                        "target_tool": r.item.target_tool,
                        "tool": r.tool,
                        "answer": r.answer,
                        "contexts": r.contexts,
                        "ground_truth": r.item.ground_truth,
                        "scores": r.scores,
                        "trace_id": r.trace_id,
                    }
                    for r in rows
                ],
            }

        report_path = out_dir / "report.json"
        report_path.write_text(
            json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
            encoding="utf-8",
        )
        (out_dir / "report.tsv").write_text(self.report_tsv(report), encoding="utf-8")
        return report

    @staticmethod
    def report_tsv(report: dict) -> str:
        """Flat TSV summary (mode, scope, metric, mean, margin_of_error)."""
        lines = ["mode\tscope\tmetric\tmean\tmargin_of_error"]
        for mode in sorted(report["modes"]):
            mode_block = report["modes"][mode]
            for scope in ("kg", "vs", "overall"):
                scope_block = mode_block["scopes"][scope]
                boot_scope = mode_block["bootstrap"]["scopes"].get(scope, {})
                for metric in METRICS:
                    mean = scope_block["metrics"].get(metric)
                    me = boot_scope.get(metric, {}).get("margin_of_error")
                    lines.append(
                        f"{mode}\t{scope}\t{metric}\t"
                        f"{'' if mean is None else f'{mean:.6f}'}\t"
                        f"{'' if me is None else f'{me:.6f}'}"
                    )
        return "\n".join(lines) + "\n"
