#!/usr/bin/env python3
"""Benchmark the compiled search kernels against the numpy fallback.

Times the L2 distance scan and BM25 posting accumulation on synthetic data
for every loadable backend, and verifies both produce identical rankings.

    python3 benchmarks/bench_kernels.py [--chunks 20000] [--dim 384] [--queries 50]
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from litrev.vector import kernels
from litrev.vector.bm25 import Bm25Index
from litrev.vector.dense import DenseIndex


def time_l2(backend, matrix, queries) -> float:
    t0 = time.perf_counter()
    for q in queries:
        backend.l2_sq_distances(matrix, q)
    return time.perf_counter() - t0


def time_bm25(backend, index: Bm25Index, queries: list[str]) -> float:
    saved = kernels.bm25_accumulate
    kernels.bm25_accumulate = backend.bm25_accumulate
    try:
        t0 = time.perf_counter()
        for q in queries:
            index.scores(q)
        return time.perf_counter() - t0
    finally:
        kernels.bm25_accumulate = saved


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--chunks", type=int, default=20_000)
    parser.add_argument("--dim", type=int, default=384)
    parser.add_argument("--queries", type=int, default=50)
    args = parser.parse_args()

    backends = kernels.available_backends()
    print(f"active backend: {kernels.BACKEND_NAME}; available: {backends}")

    rng = np.random.default_rng(0)
    matrix = np.ascontiguousarray(rng.normal(size=(args.chunks, args.dim)))
    l2_queries = [np.ascontiguousarray(rng.normal(size=args.dim)) for _ in range(args.queries)]

    word_rng = random.Random(0)
    vocab = [f"term{i}" for i in range(2000)]
    entries = [
        (
            f"c{i}",
            ("d", i),
            " ".join(word_rng.choice(vocab) for _ in range(word_rng.randint(50, 300))),
        )
        for i in range(args.chunks // 4)
    ]
    bm25 = Bm25Index().build(entries)
    text_queries = [
        " ".join(word_rng.choice(vocab) for _ in range(4)) for _ in range(args.queries)
    ]

    print(f"\nL2 scan: {args.chunks} x {args.dim}, {args.queries} queries")
    times = {}
    for name in backends:
        backend = kernels.get_backend(name)
        times[name] = time_l2(backend, matrix, l2_queries)
        per_query = times[name] / args.queries * 1000
        print(f"  {name:10s} {times[name]:8.3f}s total  {per_query:8.3f} ms/query")
    if len(times) == 2:
        print(f"  speedup native vs fallback: {times['fallback'] / times['native']:.2f}x")

    print(f"\nBM25 scoring: {len(entries)} chunks, {args.queries} queries")
    times = {}
    for name in backends:
        backend = kernels.get_backend(name)
        times[name] = time_bm25(backend, bm25, text_queries)
        per_query = times[name] / args.queries * 1000
        print(f"  {name:10s} {times[name]:8.3f}s total  {per_query:8.3f} ms/query")
    if len(times) == 2:
        print(f"  speedup native vs fallback: {times['fallback'] / times['native']:.2f}x")

    # Cross-check: identical rankings from both backends.
    if len(backends) == 2:
        dense = DenseIndex(dim=args.dim)
        for i in range(500):
            dense.add(f"c{i}", ("d", i), matrix[i])
        results = {}
        for name in backends:
            saved = kernels.l2_sq_distances
            kernels.l2_sq_distances = kernels.get_backend(name).l2_sq_distances
            try:
                results[name] = [dense.search(q, 10) for q in l2_queries[:10]]
            finally:
                kernels.l2_sq_distances = saved
        ranks_equal = all(
            [c for c, _ in a] == [c for c, _ in b]
            for a, b in zip(results["native"], results["fallback"])
        )
        print(f"\nrank agreement on 10 spot-check queries: {ranks_equal}")


if __name__ == "__main__":
    main()
