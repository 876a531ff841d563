"""Pure-Python bitset kernels.

Vertex sets are integer bitmasks over a frozen vertex ordering.  These four
functions are the hot loops of the library: relative-range sweeps, the
definitional word tables used by the brute-force oracles, and the all-pairs
intersection-distributivity scan.  The compiled backend in ``_ckern.pyx``
implements the same contract.
"""

from __future__ import annotations

BACKEND = "pure"


def step_masks(nv, nletters, edges):
    """Per-letter successor masks: ``step[a][v]`` is the set of endpoints of
    a-labeled edges leaving vertex ``v``.

    ``edges`` is a flat sequence of (src_index, dst_index, letter_index).
    """
    step = [[0] * nv for _ in range(nletters)]
    for s, d, a in edges:
        step[a][s] |= 1 << d
    return step


def apply_word(step, mask, word):
    """Iterated single-letter relative range of ``mask`` along ``word``
    (a sequence of letter indices)."""
    for a in word:
        row = step[a]
        out = 0
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            out |= row[v]
            m &= m - 1
        mask = out
        if not mask:
            break
    return mask


def path_word_tables(nv, out_adj, maxlen):
    """Definitional word tables built by enumerating actual paths.

    ``out_adj[v]`` is a list of (letter_index, dst_index) pairs.  Returns a
    dict mapping each realized word (tuple of letter indices, length 1 to
    ``maxlen``) to a per-source list of range masks:
    ``tables[word][v] = {endpoints of word-labeled paths starting at v}``.

    Deliberately independent of :func:`apply_word`: this is the oracle side
    of the fast/brute dual route, so it walks edges path by path.
    """
    tables: dict[tuple, list] = {}
    for v0 in range(nv):
        # stack of (current_vertex, word_so_far)
        stack = [(v0, ())]
        while stack:
            v, word = stack.pop()
            if len(word) == maxlen:
                continue
            for a, w in out_adj[v]:
                nw = word + (a,)
                row = tables.get(nw)
                if row is None:
                    row = [0] * nv
                    tables[nw] = row
                row[v0] |= 1 << w
                stack.append((w, nw))
    return tables


def distributivity_witness(nv, tables):
    """Scan every subset pair against every word table for a failure of
    ``r(A & B) == r(A) & r(B)``.

    ``tables`` is a list of per-source mask lists (one entry per word).
    Returns (table_index, maskA, maskB) for the first failure in
    deterministic order, or None if the identity holds throughout.
    """
    size = 1 << nv
    for t, row in enumerate(tables):
        # ranges of every subset, by dynamic programming over low bits
        arr = [0] * size
        for m in range(1, size):
            low = m & -m
            arr[m] = arr[m ^ low] | row[low.bit_length() - 1]
        for a_mask in range(1, size):
            ra = arr[a_mask]
            for b_mask in range(a_mask + 1, size):
                if arr[a_mask & b_mask] != ra & arr[b_mask]:
                    return (t, a_mask, b_mask)
    return None
