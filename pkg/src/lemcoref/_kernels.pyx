# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loop: batched sentence-lemma overlap over interned id sets.

Mirrors lemcoref._kernels_py exactly; both operate on a CSR layout of
sorted, deduplicated int32 lemma ids (one row per mention).
"""

import numpy as np

BACKEND = "cython"

JACCARD = 0
MIN_OVERLAP = 1


cdef Py_ssize_t _intersect_sorted(const int[:] ids,
                                  Py_ssize_t a_lo, Py_ssize_t a_hi,
                                  Py_ssize_t b_lo, Py_ssize_t b_hi) nogil:
    cdef Py_ssize_t i = a_lo, j = b_lo, n = 0
    while i < a_hi and j < b_hi:
        if ids[i] == ids[j]:
            n += 1
            i += 1
            j += 1
        elif ids[i] < ids[j]:
            i += 1
        else:
            j += 1
    return n


def overlap_scores(offsets, ids, a_rows, b_rows, int mode):
    """Overlap score per (a_rows[k], b_rows[k]) row pair.

    mode 0: Jaccard |A&B|/|A|B| union (0.0 when both rows empty);
    mode 1: |A&B|/min(|A|,|B|) (0.0 when either row is empty).
    """
    cdef const int[:] offs = np.ascontiguousarray(offsets, dtype=np.int32)
    cdef const int[:] flat = np.ascontiguousarray(ids, dtype=np.int32)
    cdef const int[:] rows_a = np.ascontiguousarray(a_rows, dtype=np.int32)
    cdef const int[:] rows_b = np.ascontiguousarray(b_rows, dtype=np.int32)

    cdef Py_ssize_t n_pairs = rows_a.shape[0]
    out_arr = np.empty(n_pairs, dtype=np.float64)
    cdef double[:] out = out_arr

    cdef Py_ssize_t k, a, b, a_lo, a_hi, b_lo, b_hi, inter, size_a, size_b, union_
    with nogil:
        for k in range(n_pairs):
            a = rows_a[k]
            b = rows_b[k]
            a_lo = offs[a]
            a_hi = offs[a + 1]
            b_lo = offs[b]
            b_hi = offs[b + 1]
            size_a = a_hi - a_lo
            size_b = b_hi - b_lo
            inter = _intersect_sorted(flat, a_lo, a_hi, b_lo, b_hi)
            if mode == 1:  # MIN_OVERLAP
                if size_a == 0 or size_b == 0:
                    out[k] = 0.0
                else:
                    out[k] = inter / <double>(size_a if size_a < size_b else size_b)
            else:
                union_ = size_a + size_b - inter
                if union_ == 0:
                    out[k] = 0.0
                else:
                    out[k] = inter / <double>union_
    return out_arr
