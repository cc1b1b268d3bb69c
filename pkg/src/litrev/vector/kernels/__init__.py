"""Scoring kernels with a compiled fast path and a numpy fallback.

The compiled extension (``_native``, built from Cython) and the fallback
expose the same two functions:

* ``l2_sq_distances(matrix, query)`` -- squared Euclidean distance of every
  row against the query vector.
* ``bm25_accumulate(scores, idxs, tfs, norms, idf, k1)`` -- add one query
  term's BM25 contribution into a running score array.

Selection happens once at import: the extension if it built, else the
fallback. Set ``LITREV_PURE_PYTHON=1`` to force the fallback (used by the
kernel benchmark and by tests that must cover both paths).
"""

import os

from . import fallback as _fallback

if os.environ.get("LITREV_PURE_PYTHON"):
    _backend = _fallback
else:
    try:
        from . import _native as _backend  # type: ignore[no-redef]
    except ImportError:
        _backend = _fallback

BACKEND_NAME = "native" if _backend is not _fallback else "fallback"

l2_sq_distances = _backend.l2_sq_distances
bm25_accumulate = _backend.bm25_accumulate


def available_backends():
    """Names of loadable backends, for benchmarks and tests."""
    names = ["fallback"]
    try:
        from . import _native  # noqa: F401

        names.insert(0, "native")
    except ImportError:
        pass
    return names


def get_backend(name):
    if name == "fallback":
        return _fallback
    if name == "native":
        from . import _native

        return _native
    raise ValueError(f"unknown kernel backend: {name!r}")
