"""Pure-Python twin of the compiled overlap kernel.

Selected at import when the Cython extension is unavailable (or when
LEMCOREF_PURE=1). Semantics are bit-identical: both compute the same
integer counts and perform a single float64 division per pair.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

JACCARD = 0
MIN_OVERLAP = 1


def overlap_scores(offsets, ids, a_rows, b_rows, mode: int):
    """Overlap score per (a_rows[k], b_rows[k]) row pair; see _kernels.pyx."""
    offs = np.ascontiguousarray(offsets, dtype=np.int32)
    flat = np.ascontiguousarray(ids, dtype=np.int32)
    row_sets = [
        frozenset(flat[offs[r]:offs[r + 1]].tolist()) for r in range(len(offs) - 1)
    ]
    out = np.empty(len(a_rows), dtype=np.float64)
    for k, (a, b) in enumerate(zip(a_rows, b_rows)):
        sa, sb = row_sets[a], row_sets[b]
        inter = len(sa & sb)
        if mode == MIN_OVERLAP:
            denom = min(len(sa), len(sb))
        else:
            denom = len(sa) + len(sb) - inter
        out[k] = inter / denom if denom else 0.0
    return out
