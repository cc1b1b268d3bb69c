"""Pipeline configuration: one JSON file, env variables only for secrets.

Defaults pin the published constants: 2,024-char chunks with 50 overlap,
top-5 per retriever, BM25 k1=1.5 b=0.75, 384-dim embeddings, 12 bootstrap
resamples at alpha=0.05, and the hosted model names as plain strings.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path


class ConfigError(ValueError):
    """Configuration violates an invariant (e.g. overlap >= chunk size)."""


@dataclass
class PipelineConfig:
    # ingestion
    sources: list[str] = field(default_factory=lambda: ["pubmed", "arxiv", "scholar"])
    source_endpoints: dict = field(default_factory=dict)
    transport: str = "http"  # "http" | "fixture"
    fixture_root: str = ""
    max_results_per_source: int = 100

    # chunking / embedding
    chunk_size: int = 2024
    chunk_overlap: int = 50
    embedding_provider: str = "hashing"  # "hashing" | "http"
    embedding_endpoint: str = ""
    embedding_model: str = "all-MiniLM-L6-v2"
    embedding_dim: int = 384

    # sparse retrieval
    bm25_k1: float = 1.5
    bm25_b: float = 0.75

    # retrieval ensemble
    k_each: int = 5
    context_size: int = 5
    rrf_k0: int = 60
    reranker_provider: str = "rrf"  # "rrf" | "http"
    reranker_endpoint: str = ""
    reranker_model: str = "rerank-english-v3.0"

    # LLM slots (provider: "none" | "http" | "echo")
    router_provider: str = "none"
    router_endpoint: str = ""
    router_model: str = "llama-3.3-70b-versatile"
    generator_provider: str = "echo"
    generator_endpoint: str = ""
    generator_model: str = "mistral-7b-instruct-v0.3"
    dpo_generator_provider: str = "none"
    dpo_generator_endpoint: str = ""
    dpo_generator_model: str = ""

    # evaluation
    judge_provider: str = "overlap"  # "overlap" | "llm"
    benchmark_vs_questions: int = 20
    benchmark_kg_per_type: int = 4
    bootstrap_b: int = 12
    bootstrap_sample_size: int = 20
    bootstrap_alpha: float = 0.05

    # operations
    snapshot_dir: str = "snapshots"
    seed: int = 42

    def validate(self) -> None:
        if self.chunk_overlap < 0 or self.chunk_overlap >= self.chunk_size:
            raise ConfigError(
                f"chunk_overlap must be in [0, chunk_size); got "
                f"{self.chunk_overlap}/{self.chunk_size}"
            )
        if not self.sources:
            raise ConfigError("at least one source must be enabled")
        if self.embedding_dim <= 0:
            raise ConfigError("embedding_dim must be positive")
        if self.bm25_k1 <= 0 or not 0 <= self.bm25_b <= 1:
            raise ConfigError("BM25 params must satisfy k1 > 0 and 0 <= b <= 1")
        if self.bootstrap_b < 2:
            raise ConfigError("bootstrap_b must be at least 2")
        if not 0 < self.bootstrap_alpha < 1:
            raise ConfigError("bootstrap_alpha must be in (0, 1)")
        if self.transport == "fixture" and not self.fixture_root:
            raise ConfigError("fixture transport needs fixture_root")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "PipelineConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(d) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**d)
        cfg.validate()
        return cfg

    @classmethod
    def load(cls, path: str | Path) -> "PipelineConfig":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )

    def config_hash(self) -> str:
        """Hash of the semantic configuration.

        Deployment locations (snapshot_dir, fixture_root) are excluded so the
        same logical run hashes identically regardless of where it lives.
        """
        semantic = {
            k: v
            for k, v in self.to_dict().items()
            if k not in ("snapshot_dir", "fixture_root")
        }
        canonical = json.dumps(semantic, sort_keys=True)
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]
