"""Bitset kernel backend selection.

The compiled backend is used when the extension built and the graph fits in
a 64-bit mask; otherwise calls fall through to the pure-Python backend.
Setting ``LABGRAPHS_PURE_KERNELS=1`` forces the pure backend (used by the
benchmark and the backend-parity tests).
"""

from __future__ import annotations

import os

from . import pure as _pure

_compiled = None
if os.environ.get("LABGRAPHS_PURE_KERNELS") != "1":
    try:
        from . import _ckern as _compiled  # type: ignore[attr-defined]
    except ImportError:
        _compiled = None

#: Largest vertex count the compiled backend can represent in one mask.
_C_MAX_NV = 63


def backend_name() -> str:
    return "c" if _compiled is not None else "pure"


def _pick(nv: int):
    if _compiled is not None and nv <= _C_MAX_NV:
        return _compiled
    return _pure


def step_masks(nv, nletters, edges):
    return _pick(nv).step_masks(nv, nletters, edges)


def apply_word(nv, step, mask, word):
    return _pick(nv).apply_word(step, mask, word)


def path_word_tables(nv, out_adj, maxlen):
    return _pick(nv).path_word_tables(nv, out_adj, maxlen)


def distributivity_witness(nv, tables):
    return _pick(nv).distributivity_witness(nv, tables)
