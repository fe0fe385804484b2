# cython: language_level=3
# cython: boundscheck=False, wraparound=False
"""Compiled edit-distance kernel (two-row dynamic program)."""

from libc.stdlib cimport free, malloc


def levenshtein(str a, str b):
    """Unit-cost insert/delete/substitute distance; inputs are used as-is."""
    cdef Py_ssize_t la = len(a)
    cdef Py_ssize_t lb = len(b)
    if la == 0:
        return lb
    if lb == 0:
        return la
    if a == b:
        return 0
    if la < lb:
        a, b = b, a
        la, lb = lb, la

    cdef int *prev = <int *> malloc((lb + 1) * sizeof(int))
    cdef int *cur = <int *> malloc((lb + 1) * sizeof(int))
    if prev == NULL or cur == NULL:
        if prev != NULL:
            free(prev)
        if cur != NULL:
            free(cur)
        raise MemoryError()

    cdef Py_ssize_t i, j
    cdef int best, diag
    cdef Py_UCS4 ca
    cdef int *tmp
    cdef int result
    try:
        for j in range(lb + 1):
            prev[j] = <int> j
        for i in range(la):
            ca = a[i]
            cur[0] = <int> i + 1
            for j in range(1, lb + 1):
                diag = prev[j - 1] + (0 if ca == <Py_UCS4> b[j - 1] else 1)
                best = prev[j] + 1
                if cur[j - 1] + 1 < best:
                    best = cur[j - 1] + 1
                if diag < best:
                    best = diag
                cur[j] = best
            tmp = prev
            prev = cur
            cur = tmp
        result = prev[lb]
    finally:
        free(prev)
        free(cur)
    return result
