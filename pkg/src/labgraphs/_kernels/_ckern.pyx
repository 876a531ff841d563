# cython: language_level=3
"""Compiled bitset kernels; same contract as ``pure.py``.

Masks are limited to 64-bit words here, so callers must route graphs with
more than 63 vertices to the pure backend (the dispatcher in ``__init__``
does this automatically).
"""

from libc.stdlib cimport free, malloc

cdef extern from *:
    int __builtin_ctzll(unsigned long long)

BACKEND = "c"


def step_masks(int nv, int nletters, edges):
    cdef list step = [[0] * nv for _ in range(nletters)]
    cdef int s, d, a
    for s, d, a in edges:
        step[a][s] = (<unsigned long long> step[a][s]) | (1ULL << d)
    return step


def apply_word(step, mask, word):
    cdef unsigned long long m, out, cur
    cdef int v, a
    cdef list row
    cur = mask
    for a in word:
        row = step[a]
        out = 0
        m = cur
        while m:
            v = __builtin_ctzll(m)
            out |= <unsigned long long> row[v]
            m &= m - 1
        cur = out
        if cur == 0:
            break
    return cur


def path_word_tables(int nv, out_adj, int maxlen):
    """Enumerate paths up to ``maxlen`` and collect per-source range masks
    keyed by the path's word."""
    tables = {}
    cdef list stack, row
    cdef int v0, v, a, w
    cdef tuple word, nw
    for v0 in range(nv):
        stack = [(v0, ())]
        while stack:
            v, word = stack.pop()
            if len(word) == maxlen:
                continue
            for a, w in out_adj[v]:
                nw = word + (a,)
                row = <list> tables.get(nw)
                if row is None:
                    row = [0] * nv
                    tables[nw] = row
                row[v0] = (<unsigned long long> row[v0]) | (1ULL << w)
                stack.append((w, nw))
    return tables


def distributivity_witness(int nv, tables):
    cdef int size = 1 << nv
    cdef unsigned long long *arr = <unsigned long long *> malloc(
        size * sizeof(unsigned long long))
    if arr == NULL:
        raise MemoryError()
    cdef int t, low, i
    cdef unsigned long long m, ra
    cdef unsigned long long a_mask, b_mask
    cdef list row
    try:
        for t in range(len(tables)):
            row = tables[t]
            arr[0] = 0
            for i in range(1, size):
                low = __builtin_ctzll(<unsigned long long> i)
                arr[i] = arr[i ^ (1 << low)] | (<unsigned long long> row[low])
            for a_mask in range(1, size):
                ra = arr[a_mask]
                for b_mask in range(a_mask + 1, size):
                    if arr[a_mask & b_mask] != (ra & arr[b_mask]):
                        return (t, <object> a_mask, <object> b_mask)
        return None
    finally:
        free(arr)
