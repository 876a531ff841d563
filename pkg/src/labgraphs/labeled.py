"""Labeled graphs: labelings, labeled path spaces, relative ranges and the
resolving properties, with the fast checks and their definitional oracles."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Mapping

from . import _kernels
from .errors import NotALabeledPath, PreconditionError
from .graph import DirectedGraph, Path, paths_of_length

Word = tuple[str, ...]


@dataclass(frozen=True)
class Check:
    """Boolean verdict with an optional witness for the failing case."""

    ok: bool
    witness: Any = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.ok


class LabeledGraph:
    """A directed graph with a total edge labeling into a finite alphabet.

    The labeling is kept surjective: letters outside the image are dropped
    at construction and recorded in ``dropped_letters``.
    """

    __slots__ = ("graph", "alphabet", "labeling", "dropped_letters",
                 "__dict__")

    def __init__(self, graph: DirectedGraph, labeling: Mapping[str, str],
                 alphabet: Iterable[str] | None = None):
        self.graph = graph
        missing = [e.eid for e in graph.edges if e.eid not in labeling]
        if missing:
            raise PreconditionError(
                "PARTIAL_LABELING", f"unlabeled edges: {', '.join(missing)}")
        extra = sorted(set(labeling) - {e.eid for e in graph.edges})
        if extra:
            raise PreconditionError(
                "UNKNOWN_EDGE", f"labeling mentions unknown edges: {', '.join(extra)}")
        image = {labeling[e.eid] for e in graph.edges}
        if alphabet is None:
            dropped: tuple[str, ...] = ()
        else:
            declared = set(alphabet)
            outside = sorted(image - declared)
            if outside:
                raise PreconditionError(
                    "LETTER_NOT_IN_ALPHABET", ", ".join(outside))
            dropped = tuple(sorted(declared - image))
        self.alphabet: tuple[str, ...] = tuple(sorted(image))
        self.labeling: dict[str, str] = {e.eid: labeling[e.eid] for e in graph.edges}
        self.dropped_letters = dropped

    # -- basic accessors -------------------------------------------------

    def label(self, eid: str) -> str:
        return self.labeling[eid]

    def label_word(self, path: Path) -> Word:
        return tuple(self.labeling[eid] for eid in path.edges)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.graph.vertices

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return (self.graph == other.graph and self.alphabet == other.alphabet
                and self.labeling == other.labeling)

    def __hash__(self) -> int:
        return hash((self.graph, self.alphabet, tuple(sorted(self.labeling.items()))))

    def __repr__(self) -> str:
        return (f"LabeledGraph({len(self.vertices)} vertices, "
                f"{len(self.graph.edges)} edges, alphabet {list(self.alphabet)})")

    # -- bitmask plumbing -------------------------------------------------

    @cached_property
    def _vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _letter_index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.alphabet)}

    @cached_property
    def _step(self) -> list[list[int]]:
        vi, li = self._vertex_index, self._letter_index
        flat = [(vi[e.src], vi[e.dst], li[self.labeling[e.eid]])
                for e in self.graph.edges]
        return _kernels.step_masks(len(self.vertices), len(self.alphabet), flat)

    def mask_of(self, vertices: Iterable[str]) -> int:
        vi = self._vertex_index
        mask = 0
        for v in vertices:
            if v not in vi:
                raise PreconditionError("UNKNOWN_VERTEX", v)
            mask |= 1 << vi[v]
        return mask

    def set_of(self, mask: int) -> frozenset[str]:
        vs = self.vertices
        out = set()
        while mask:
            i = (mask & -mask).bit_length() - 1
            out.add(vs[i])
            mask &= mask - 1
        return frozenset(out)

    def full_mask(self) -> int:
        return (1 << len(self.vertices)) - 1

    def word_indices(self, word: Word) -> tuple[int, ...] | None:
        """Letter indices for ``word``; None if a letter is unknown (such a
        word has no representative, so its relative range is empty)."""
        li = self._letter_index
        try:
            return tuple(li[a] for a in word)
        except KeyError:
            return None

    def range_mask(self, mask: int, word: Word) -> int:
        idx = self.word_indices(word)
        if idx is None:
            return 0
        return _kernels.apply_word(len(self.vertices), self._step, mask, idx)


# -- labeled path space ----------------------------------------------------


def labeled_paths(lg: LabeledGraph, n: int) -> tuple[Word, ...]:
    """All length-``n`` words realized by at least one path, sorted."""
    if n < 1:
        raise PreconditionError("ZERO_LENGTH_PATH", "labeled paths have length >= 1")
    words = {lg.label_word(p) for p in paths_of_length(lg.graph, n)}
    return tuple(sorted(words))


def representatives(lg: LabeledGraph, word: Word) -> tuple[Path, ...]:
    """All paths carrying ``word``, in lexicographic edge-id order.  Empty
    exactly when the word is not a labeled path of the graph."""
    if len(word) < 1:
        raise PreconditionError("ZERO_LENGTH_PATH", "words have length >= 1")
    g = lg.graph
    partial: list[tuple[str, ...]] = []
    for e in g.edges:
        if lg.labeling[e.eid] == word[0]:
            partial.append((e.eid,))
    for a in word[1:]:
        nxt = []
        for ids in partial:
            tail = g.edge(ids[-1]).dst
            for e in g.out_edges(tail):
                if lg.labeling[e.eid] == a:
                    nxt.append(ids + (e.eid,))
        partial = nxt
        if not partial:
            break
    return tuple(Path(ids) for ids in sorted(partial))


def relative_range(lg: LabeledGraph, vertices: Iterable[str], word: Word) -> frozenset[str]:
    """Endpoints of ``word``-labeled paths starting in ``vertices``,
    computed one letter at a time."""
    if len(word) < 1:
        raise PreconditionError("ZERO_LENGTH_PATH", "words have length >= 1")
    return lg.set_of(lg.range_mask(lg.mask_of(vertices), word))


def range_and_source(lg: LabeledGraph, word: Word) -> tuple[frozenset[str], frozenset[str]]:
    """(range, source) of a labeled path; fails if the word has no
    representative."""
    reps = representatives(lg, word)
    if not reps:
        raise NotALabeledPath(f"word {''.join(word)!r} has no representative")
    g = lg.graph
    return (frozenset(g.path_dst(p) for p in reps),
            frozenset(g.path_src(p) for p in reps))


def label_set(lg: LabeledGraph, vertices: Iterable[str], n: int) -> tuple[Word, ...]:
    """Words of length ``n`` whose source set meets ``vertices``."""
    if n < 1:
        raise PreconditionError("ZERO_LENGTH_PATH", "labeled paths have length >= 1")
    wanted = frozenset(vertices)
    for v in wanted:
        if not lg.graph.has_vertex(v):
            raise PreconditionError("UNKNOWN_VERTEX", v)
    out = set()
    for p in paths_of_length(lg.graph, n):
        if lg.graph.path_src(p) in wanted:
            out.add(lg.label_word(p))
    return tuple(sorted(out))


# -- resolving properties ----------------------------------------------------


def is_left_resolving(lg: LabeledGraph) -> Check:
    """No vertex may receive two distinct edges carrying the same label."""
    for v in lg.vertices:
        seen: dict[str, str] = {}
        for e in lg.graph.in_edges(v):
            a = lg.labeling[e.eid]
            if a in seen:
                return Check(False, (v, seen[a], e.eid))
            seen[a] = e.eid
    return Check(True)


def is_weakly_left_resolving(lg: LabeledGraph) -> Check:
    """Fast check: single-letter ranges of distinct single vertices are
    disjoint.  Equivalent to the all-subsets, all-words condition by
    induction on words; the equivalence is enforced against the
    definitional oracle in the test suite."""
    step = lg._step
    nv = len(lg.vertices)
    for ai, a in enumerate(lg.alphabet):
        row = step[ai]
        for i in range(nv):
            if not row[i]:
                continue
            for j in range(i + 1, nv):
                if row[i] & row[j]:
                    return Check(False, (a, lg.vertices[i], lg.vertices[j]))
    return Check(True)


def weakly_left_resolving_bruteforce(lg: LabeledGraph, max_word_len: int = 4) -> Check:
    """Definitional oracle: enumerate actual paths to build range tables,
    then test ``r(A & B, w) == r(A, w) & r(B, w)`` over every subset pair
    and every realized word up to ``max_word_len``."""
    nv = len(lg.vertices)
    vi = lg._vertex_index
    li = lg._letter_index
    out_adj: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
    for e in lg.graph.edges:
        out_adj[vi[e.src]].append((li[lg.labeling[e.eid]], vi[e.dst]))
    tables = _kernels.path_word_tables(nv, out_adj, max_word_len)
    words = sorted(tables)
    rows = [tables[w] for w in words]
    hit = _kernels.distributivity_witness(nv, rows)
    if hit is None:
        return Check(True)
    t, mask_a, mask_b = hit
    word = tuple(lg.alphabet[i] for i in words[t])
    return Check(False, (word, lg.set_of(mask_a), lg.set_of(mask_b)))
