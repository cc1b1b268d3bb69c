import numpy as np
import pytest

from litrev.vector import kernels


def test_fallback_is_always_available():
    assert "fallback" in kernels.available_backends()


@pytest.mark.parametrize("name", kernels.available_backends())
def test_l2_kernel_matches_naive_loop(name):
    backend = kernels.get_backend(name)
    rng = np.random.default_rng(7)
    matrix = np.ascontiguousarray(rng.normal(size=(50, 24)))
    query = np.ascontiguousarray(rng.normal(size=24))
    got = backend.l2_sq_distances(matrix, query)
    want = [float(((matrix[i] - query) ** 2).sum()) for i in range(50)]
    assert np.asarray(got) == pytest.approx(want, abs=1e-9)


@pytest.mark.parametrize("name", kernels.available_backends())
def test_bm25_kernel_accumulates_expected_contributions(name):
    backend = kernels.get_backend(name)
    scores = np.zeros(5)
    idxs = np.asarray([0, 2, 4], dtype=np.int64)
    tfs = np.asarray([1.0, 2.0, 3.0], dtype=np.float64)
    norms = np.asarray([1.0, 1.1, 1.2, 1.3, 1.4], dtype=np.float64)
    backend.bm25_accumulate(scores, idxs, tfs, norms, idf=0.5, k1=1.5)
    want = np.zeros(5)
    for i, tf in zip([0, 2, 4], [1.0, 2.0, 3.0]):
        want[i] = 0.5 * tf * 2.5 / (tf + norms[i])
    assert scores == pytest.approx(want, abs=1e-12)


@pytest.mark.skipif(
    "native" not in kernels.available_backends(), reason="compiled kernel absent"
)
def test_backends_agree_on_random_input():
    native = kernels.get_backend("native")
    fallback = kernels.get_backend("fallback")
    rng = np.random.default_rng(11)
    matrix = np.ascontiguousarray(rng.normal(size=(64, 32)))
    query = np.ascontiguousarray(rng.normal(size=32))
    assert np.asarray(native.l2_sq_distances(matrix, query)) == pytest.approx(
        np.asarray(fallback.l2_sq_distances(matrix, query)), rel=1e-12, abs=1e-12
    )
