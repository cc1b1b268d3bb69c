"""Bootstrap uncertainty for the per-question metric table.

Each of the B resamples draws, with replacement, half its questions from
the vector-target pool and half from the graph-target pool (10 + 10 at the
default sample size of 20). Means are collected per resample for the kg,
vs, and overall scopes, and the margin of error uses the two-tailed
t-distribution:

    ME = t_{alpha/2, df} * s / sqrt(n),  df = n - 1

with n the number of resamples and s the sample standard deviation of the
resample means.
"""

from __future__ import annotations

import math
import random
import statistics
from dataclasses import dataclass, field

from scipy.stats import t as t_dist

DEFAULT_B = 12
DEFAULT_SAMPLE_SIZE = 20
DEFAULT_ALPHA = 0.05

METRICS = ("faithfulness", "answer_relevance", "context_precision", "context_recall")
SCOPES = ("kg", "vs", "overall")


class InsufficientResults(ValueError):
    """Too few graph-target or vector-target rows to stratify the resamples."""


def t_critical(alpha: float, df: int) -> float:
    """Two-tailed t critical value at significance ``alpha``."""
    return float(t_dist.ppf(1.0 - alpha / 2.0, df))


@dataclass
class BootstrapStat:
    mean: float
    std: float
    n: int
    df: int
    alpha: float
    t_critical: float
    margin_of_error: float

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "std": self.std,
            "n": self.n,
            "df": self.df,
            "alpha": self.alpha,
            "t_critical": self.t_critical,
            "margin_of_error": self.margin_of_error,
        }


@dataclass
class BootstrapReport:
    """Per-scope, per-metric bootstrap statistics plus the run parameters."""

    scopes: dict = field(default_factory=dict)  # scope -> metric -> BootstrapStat
    b: int = DEFAULT_B
    sample_size: int = DEFAULT_SAMPLE_SIZE
    alpha: float = DEFAULT_ALPHA
    seed: int = 0

    def to_dict(self) -> dict:
        return {
            "b": self.b,
            "sample_size": self.sample_size,
            "alpha": self.alpha,
            "seed": self.seed,
            "scopes": {
                scope: {m: stat.to_dict() for m, stat in metrics.items()}
                for scope, metrics in self.scopes.items()
            },
        }


def _mean_of(rows: list[dict], metric: str) -> float | None:
    values = [r[metric] for r in rows if r.get(metric) is not None]
    if not values:
        return None
    return sum(values) / len(values)


def _stat(resample_means: list[float], alpha: float) -> BootstrapStat:
    n = len(resample_means)  # normally == b; smaller if a metric was skipped
    mean = sum(resample_means) / n
    std = statistics.stdev(resample_means) if n > 1 else 0.0
    df = n - 1 if n > 1 else 1
    t_crit = t_critical(alpha, df)
    me = t_crit * std / math.sqrt(n)
    return BootstrapStat(
        mean=mean,
        std=std,
        n=n,
        df=df,
        alpha=alpha,
        t_critical=t_crit,
        margin_of_error=me,
    )


def bootstrap(
    results: list[dict],
    b: int = DEFAULT_B,
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    alpha: float = DEFAULT_ALPHA,
    rng_seed: int = 0,
) -> BootstrapReport:
    """Stratified bootstrap over per-question metric rows.

    Each row carries ``target_tool`` plus metric values (None marks a
    skipped metric). Raises InsufficientResults when a stratum is smaller
    than its per-resample draw count.
    """
    vs_rows = [r for r in results if r.get("target_tool") == "vector"]
    kg_rows = [r for r in results if r.get("target_tool") == "graph"]
    half_vs = sample_size // 2
    half_kg = sample_size - half_vs
    if len(vs_rows) < half_vs or len(kg_rows) < half_kg:
        raise InsufficientResults(
            f"need >= {half_vs} vector and >= {half_kg} graph rows, "
            f"have {len(vs_rows)} and {len(kg_rows)}"
        )
    rng = random.Random(rng_seed)
    means: dict[tuple[str, str], list[float]] = {
        (scope, metric): [] for scope in SCOPES for metric in METRICS
    }
    for _ in range(b):
        vs_draw = rng.choices(vs_rows, k=half_vs)
        kg_draw = rng.choices(kg_rows, k=half_kg)
        pools = {"kg": kg_draw, "vs": vs_draw, "overall": kg_draw + vs_draw}
        for scope, rows in pools.items():
            for metric in METRICS:
                value = _mean_of(rows, metric)
                if value is not None:
                    means[(scope, metric)].append(value)
    report = BootstrapReport(b=b, sample_size=sample_size, alpha=alpha, seed=rng_seed)
    for scope in SCOPES:
        report.scopes[scope] = {}
        for metric in METRICS:
            series = means[(scope, metric)]
            if series:
                report.scopes[scope][metric] = _stat(series, alpha)
    return report
