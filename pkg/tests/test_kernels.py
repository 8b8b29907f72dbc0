import random

import numpy as np
import pytest

from lemcoref import _kernels_py
from lemcoref._backend import BACKEND

try:
    from lemcoref import _kernels
except ImportError:
    _kernels = None


def random_csr(rng, n_rows, vocab):
    offsets = [0]
    flat = []
    for _ in range(n_rows):
        row = sorted(rng.sample(range(vocab), k=rng.randint(0, min(vocab, 9))))
        flat.extend(row)
        offsets.append(len(flat))
    return (np.asarray(offsets, dtype=np.int32), np.asarray(flat, dtype=np.int32))


def reference_score(offsets, ids, a, b, mode):
    sa = set(ids[offsets[a]:offsets[a + 1]].tolist())
    sb = set(ids[offsets[b]:offsets[b + 1]].tolist())
    inter = len(sa & sb)
    denom = min(len(sa), len(sb)) if mode == 1 else len(sa) + len(sb) - inter
    return inter / denom if denom else 0.0


@pytest.mark.parametrize("mode", [0, 1])
def test_pure_python_kernel_matches_reference(mode):
    rng = random.Random(501)
    offsets, ids = random_csr(rng, 40, 25)
    a_rows = np.asarray([rng.randrange(40) for _ in range(300)], dtype=np.int32)
    b_rows = np.asarray([rng.randrange(40) for _ in range(300)], dtype=np.int32)
    got = _kernels_py.overlap_scores(offsets, ids, a_rows, b_rows, mode)
    for k in range(len(a_rows)):
        assert got[k] == reference_score(offsets, ids, a_rows[k], b_rows[k], mode)


@pytest.mark.skipif(_kernels is None, reason="compiled kernel not built")
@pytest.mark.parametrize("mode", [0, 1])
def test_backends_bit_identical(mode):
    rng = random.Random(502)
    for trial in range(20):
        offsets, ids = random_csr(rng, rng.randint(1, 50), rng.randint(1, 30))
        n_rows = len(offsets) - 1
        n_pairs = rng.randint(0, 200)
        a_rows = np.asarray([rng.randrange(n_rows) for _ in range(n_pairs)], dtype=np.int32)
        b_rows = np.asarray([rng.randrange(n_rows) for _ in range(n_pairs)], dtype=np.int32)
        compiled = _kernels.overlap_scores(offsets, ids, a_rows, b_rows, mode)
        pure = _kernels_py.overlap_scores(offsets, ids, a_rows, b_rows, mode)
        assert np.array_equal(compiled, pure)


def test_empty_inputs():
    offsets = np.asarray([0, 0], dtype=np.int32)
    ids = np.asarray([], dtype=np.int32)
    empty = _kernels_py.overlap_scores(offsets, ids,
                                       np.asarray([], dtype=np.int32),
                                       np.asarray([], dtype=np.int32), 0)
    assert empty.shape == (0,)
    self_pair = _kernels_py.overlap_scores(offsets, ids,
                                           np.asarray([0], dtype=np.int32),
                                           np.asarray([0], dtype=np.int32), 0)
    assert self_pair[0] == 0.0


def test_backend_reported():
    assert BACKEND in ("cython", "python")
