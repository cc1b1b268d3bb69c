"""Operational layer: configuration, pipeline, snapshots, HTTP API, CLI."""

from .config import ConfigError, PipelineConfig
from .engine import Engine
from .pipeline import IngestionReport, run_pipeline
from .snapshot import (
    SNAPSHOT_VERSION,
    CorpusSnapshot,
    CorruptSnapshot,
    SnapshotWriteFailed,
    VersionMismatch,
)

__all__ = [
    "ConfigError",
    "CorpusSnapshot",
    "CorruptSnapshot",
    "Engine",
    "IngestionReport",
    "PipelineConfig",
    "SNAPSHOT_VERSION",
    "SnapshotWriteFailed",
    "VersionMismatch",
    "run_pipeline",
]
