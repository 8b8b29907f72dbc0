"""Compare the compiled overlap kernel against its pure-Python twin.

Run:  python benchmarks/bench_kernels.py [--pairs 2000000] [--mentions 20000]

The workload mirrors the classify stage: batched Jaccard overlap over
interned sentence-lemma sets for a large candidate-pair list.
"""

import argparse
import random
import time

import numpy as np

from lemcoref import _kernels_py

try:
    from lemcoref import _kernels
except ImportError:
    _kernels = None


def build_workload(n_mentions: int, n_pairs: int, seed: int = 0):
    rng = random.Random(seed)
    vocab = 5000
    offsets = [0]
    flat = []
    for _ in range(n_mentions):
        row = sorted(rng.sample(range(vocab), k=rng.randint(4, 16)))
        flat.extend(row)
        offsets.append(len(flat))
    a = np.asarray([rng.randrange(n_mentions) for _ in range(n_pairs)], dtype=np.int32)
    b = np.asarray([rng.randrange(n_mentions) for _ in range(n_pairs)], dtype=np.int32)
    return (np.asarray(offsets, dtype=np.int32), np.asarray(flat, dtype=np.int32), a, b)


def time_backend(kernels, offsets, ids, a, b, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        kernels.overlap_scores(offsets, ids, a, b, 0)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--mentions", type=int, default=20_000)
    parser.add_argument("--pairs", type=int, default=2_000_000)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    offsets, ids, a, b = build_workload(args.mentions, args.pairs)
    print(f"workload: {args.mentions} mentions, {args.pairs} pairs")

    # correctness cross-check on a slice before timing
    small = slice(0, min(50_000, args.pairs))
    pure_scores = _kernels_py.overlap_scores(offsets, ids, a[small], b[small], 0)
    if _kernels is not None:
        compiled_scores = _kernels.overlap_scores(offsets, ids, a[small], b[small], 0)
        assert np.array_equal(pure_scores, compiled_scores), "backends disagree"

    pure = time_backend(_kernels_py, offsets, ids, a, b, args.repeats)
    print(f"python kernel: {pure:8.3f} s  ({args.pairs / pure / 1e6:6.2f} M pairs/s)")
    if _kernels is None:
        print("cython kernel: not built (pip install -e . with Cython available)")
        return 0
    compiled = time_backend(_kernels, offsets, ids, a, b, args.repeats)
    print(f"cython kernel: {compiled:8.3f} s  ({args.pairs / compiled / 1e6:6.2f} M pairs/s)")
    print(f"speedup: {pure / compiled:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
