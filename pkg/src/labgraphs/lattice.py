"""Accommodating collections of vertex sets, their relative-complement
closure, normal forms over range leaves, and the set-level labeled-space
report."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import NotAMember, PreconditionError, VerificationError
from .graph import require_valid
from .labeled import (Check, LabeledGraph, Word, is_weakly_left_resolving,
                      labeled_paths, representatives)

# Derivation expressions: leaves are ranges of words; inner nodes reference
# other members by mask.
#   ("range", word)         r(word)
#   ("step", mask, letter)  r(member, letter)
#   ("and" | "or" | "diff", mask, mask)
Derivation = tuple


@dataclass(frozen=True)
class SetCollection:
    """A family of nonempty vertex subsets (as bitmasks over the graph's
    vertex order), each with the derivation that first produced it.

    The empty set is never stored: operations that would produce it flag
    the result instead (see the report's ``empty_set_convention``).
    """

    lg: LabeledGraph
    members: tuple[int, ...]
    derivations: Mapping[int, Derivation]
    claimed_closures: tuple[str, ...] = ()

    def __contains__(self, mask: int) -> bool:
        return mask in self.derivations

    def __len__(self) -> int:
        return len(self.members)

    def sets(self) -> tuple[frozenset[str], ...]:
        return tuple(self.lg.set_of(m) for m in self.members)

    def mask_of(self, vertices: Iterable[str]) -> int:
        return self.lg.mask_of(vertices)

    def closure_status(self) -> dict[str, bool]:
        """Re-check the closure laws from scratch."""
        lg = self.lg
        members = set(self.members)
        ok = {"relative_ranges": True, "intersections": True,
              "unions": True, "relative_complements": True}
        for a in lg.alphabet:
            for m in self.members:
                r = lg.range_mask(m, (a,))
                if r and r not in members:
                    ok["relative_ranges"] = False
        for i, m1 in enumerate(self.members):
            for m2 in self.members[i + 1:]:
                inter = m1 & m2
                if inter and inter not in members:
                    ok["intersections"] = False
                if (m1 | m2) not in members:
                    ok["unions"] = False
                big, small = (m1, m2) if m1 | m2 == m1 else (m2, m1)
                if big & small == small and big != small:
                    if (big & ~small) and (big & ~small) not in members:
                        ok["relative_complements"] = False
        return ok


class _Closure:
    """Worklist closure engine over bitmasks with derivation tracking."""

    def __init__(self, lg: LabeledGraph, rel_complements: bool,
                 order_seed: int | None):
        self.lg = lg
        self.rel_complements = rel_complements
        self.rng = random.Random(order_seed) if order_seed is not None else None
        self.derivations: dict[int, Derivation] = {}
        self.worklist: list[int] = []

    def add(self, mask: int, deriv: Derivation) -> None:
        if mask and mask not in self.derivations:
            self.derivations[mask] = deriv
            self.worklist.append(mask)

    def run(self) -> None:
        lg = self.lg
        letters = lg.alphabet
        while self.worklist:
            if self.rng is not None:
                i = self.rng.randrange(len(self.worklist))
                self.worklist[i], self.worklist[-1] = (self.worklist[-1],
                                                       self.worklist[i])
            a_mask = self.worklist.pop()
            for letter in letters:
                stepped = lg.range_mask(a_mask, (letter,))
                if stepped and stepped not in self.derivations:
                    prev = self.derivations[a_mask]
                    if prev[0] == "range":
                        deriv: Derivation = ("range", prev[1] + (letter,))
                    else:
                        deriv = ("step", a_mask, letter)
                    self.add(stepped, deriv)
            for b_mask in list(self.derivations):
                inter = a_mask & b_mask
                if inter and inter not in self.derivations:
                    self.add(inter, ("and", a_mask, b_mask))
                union = a_mask | b_mask
                if union not in self.derivations:
                    self.add(union, ("or", a_mask, b_mask))
                if self.rel_complements:
                    for big, small in ((a_mask, b_mask), (b_mask, a_mask)):
                        if big & small == small and big != small:
                            diff = big & ~small
                            if diff and diff not in self.derivations:
                                self.add(diff, ("diff", big, small))


def smallest_accommodating(lg: LabeledGraph,
                           order_seed: int | None = None) -> SetCollection:
    """Least family containing every range r(w), closed under single-letter
    relative ranges and finite intersections and unions.

    Single-letter steps generate all multi-letter ranges because
    r(A, wa) = r(r(A, w), a); the reduction is validated against direct
    enumeration in the test suite.  ``order_seed`` shuffles the worklist to
    exercise order independence; the resulting family is always the same.
    """
    require_valid(lg.graph, "smallest_accommodating")
    eng = _Closure(lg, rel_complements=False, order_seed=order_seed)
    full = lg.full_mask()
    for a in lg.alphabet:
        eng.add(lg.range_mask(full, (a,)), ("range", (a,)))
    eng.run()
    members = tuple(sorted(eng.derivations))
    return SetCollection(lg, members, dict(eng.derivations),
                         ("relative_ranges", "intersections", "unions"))


def relative_complement_closure(col: SetCollection) -> SetCollection:
    """Close additionally under A \\ B for strict member pairs A > B; the
    result still satisfies the accommodating laws."""
    eng = _Closure(col.lg, rel_complements=True, order_seed=None)
    for mask in col.members:
        eng.add(mask, col.derivations[mask])
    eng.run()
    members = tuple(sorted(eng.derivations))
    return SetCollection(col.lg, members, dict(eng.derivations),
                         ("relative_ranges", "intersections", "unions",
                          "relative_complements"))


def smallest_accommodating_oracle(lg: LabeledGraph,
                                  word_bound: int = 5) -> frozenset[int]:
    """Exhaustive fixpoint over the powerset: seed with the ranges of every
    realized word up to ``word_bound`` computed from actual representatives,
    then run full passes of all closure rules until stable.  Used to check
    the worklist fixpoint and its single-letter reduction."""
    require_valid(lg.graph, "smallest_accommodating_oracle")
    members: set[int] = set()
    for n in range(1, word_bound + 1):
        for word in labeled_paths(lg, n):
            mask = 0
            for p in representatives(lg, word):
                mask |= lg.mask_of([lg.graph.path_dst(p)])
            if mask:
                members.add(mask)
    changed = True
    while changed:
        changed = False
        snapshot = list(members)
        for m in snapshot:
            for a in lg.alphabet:
                r = lg.range_mask(m, (a,))
                if r and r not in members:
                    members.add(r)
                    changed = True
        snapshot = list(members)
        for i, m1 in enumerate(snapshot):
            for m2 in snapshot[i + 1:]:
                for candidate in (m1 & m2, m1 | m2):
                    if candidate and candidate not in members:
                        members.add(candidate)
                        changed = True
    return frozenset(members)


# -- normal forms ------------------------------------------------------------


@dataclass(frozen=True)
class Factor:
    """One factor r(alpha) or r(alpha) \\ r(beta) of an intersection term."""

    alpha: Word
    beta: Word | None = None

    def evaluate(self, lg: LabeledGraph) -> int:
        full = lg.full_mask()
        value = lg.range_mask(full, self.alpha)
        if self.beta is not None:
            value &= ~lg.range_mask(full, self.beta)
        return value

    def render(self) -> str:
        if self.beta is None:
            return f"r({''.join(self.alpha)})"
        return f"r({''.join(self.alpha)})\\r({''.join(self.beta)})"


@dataclass(frozen=True)
class NormalForm:
    """Union of intersections of range differences."""

    terms: tuple[tuple[Factor, ...], ...]

    def evaluate(self, lg: LabeledGraph) -> frozenset[str]:
        return lg.set_of(self.evaluate_mask(lg))

    def evaluate_mask(self, lg: LabeledGraph) -> int:
        total = 0
        for term in self.terms:
            value = lg.full_mask()
            for f in term:
                value &= f.evaluate(lg)
            total |= value
        return total

    def render(self) -> str:
        parts = []
        for term in self.terms:
            inner = " & ".join(f.render() for f in term)
            parts.append(f"({inner})" if len(term) > 1 else inner)
        return " | ".join(parts)


_Cube = tuple[frozenset, frozenset]  # (positive words, negative words)


def _expr_to_cubes(col: SetCollection, mask: int,
                   memo: dict[int, list[_Cube]]) -> list[_Cube]:
    if mask in memo:
        return memo[mask]
    kind = col.derivations[mask][0]
    expr = col.derivations[mask]
    if kind == "range":
        cubes = [(frozenset([expr[1]]), frozenset())]
    elif kind == "step":
        inner = _expr_to_cubes(col, expr[1], memo)
        letter = expr[2]
        cubes = [(frozenset(w + (letter,) for w in pos),
                  frozenset(w + (letter,) for w in neg))
                 for pos, neg in inner]
    elif kind == "and":
        left = _expr_to_cubes(col, expr[1], memo)
        right = _expr_to_cubes(col, expr[2], memo)
        cubes = [(p1 | p2, n1 | n2) for p1, n1 in left for p2, n2 in right]
    elif kind == "or":
        cubes = (_expr_to_cubes(col, expr[1], memo)
                 + _expr_to_cubes(col, expr[2], memo))
    elif kind == "diff":
        cubes = _expr_to_cubes(col, expr[1], memo)
        for p2, n2 in _expr_to_cubes(col, expr[2], memo):
            nxt: list[_Cube] = []
            for pos, neg in cubes:
                # c \ (P \ N) = (c \ P) | (c & N)
                for w in sorted(p2):
                    nxt.append((pos, neg | {w}))
                for w in sorted(n2):
                    nxt.append((pos | {w}, neg))
            cubes = nxt
    else:  # pragma: no cover - defensive
        raise VerificationError("unknown derivation node", kind)
    memo[mask] = cubes
    return cubes


def _word_value_table(lg: LabeledGraph, bound: int) -> dict[Word, int]:
    table: dict[Word, int] = {}
    full = lg.full_mask()
    for n in range(1, bound + 1):
        for word in labeled_paths(lg, n):
            table[word] = lg.range_mask(full, word)
    return table


def _search_normal_form(lg: LabeledGraph, target: int,
                        word_bound: int = 5) -> NormalForm | None:
    """Breadth-first reachability over set values: factors are ranges and
    strict range differences; close under intersections, then unions."""
    words = _word_value_table(lg, word_bound)
    by_value: dict[int, Word] = {}
    for word in sorted(words):
        by_value.setdefault(words[word], word)
    factors: dict[int, Factor] = {}
    for v1, w1 in sorted(by_value.items()):
        factors.setdefault(v1, Factor(w1))
        for v2, w2 in sorted(by_value.items()):
            if v2 and v1 & v2 == v2 and v1 != v2:
                factors.setdefault(v1 & ~v2, Factor(w1, w2))
    factors.pop(0, None)
    # intersections of factors
    terms: dict[int, tuple[Factor, ...]] = {v: (f,) for v, f in factors.items()}
    frontier = list(terms)
    while frontier:
        nxt = []
        for v1 in frontier:
            for v2, f in list(factors.items()):
                v = v1 & v2
                if v and v not in terms:
                    terms[v] = terms[v1] + (f,)
                    nxt.append(v)
        frontier = nxt
    # unions of intersection terms
    unions: dict[int, tuple[tuple[Factor, ...], ...]] = {
        v: (t,) for v, t in terms.items()}
    frontier = list(unions)
    while frontier:
        if target in unions:
            break
        nxt = []
        for v1 in frontier:
            for v2, t in list(terms.items()):
                v = v1 | v2
                if v not in unions:
                    unions[v] = unions[v1] + (t,)
                    nxt.append(v)
        frontier = nxt
    if target not in unions:
        return None
    return NormalForm(unions[target])


def normal_form(col: SetCollection, vertices: Iterable[str] | int) -> NormalForm:
    """Rewrite a member as a union of intersections of range differences
    ``r(alpha) \\ r(beta)`` (strict containment, beta optional), derived
    from the stored derivation tree.  Requires a weakly left-resolving
    graph: the rewrite pushes relative-range steps through intersections
    and differences, which is exactly what that property licenses."""
    lg = col.lg
    mask = vertices if isinstance(vertices, int) else lg.mask_of(vertices)
    if mask not in col.derivations:
        raise NotAMember(f"{sorted(lg.set_of(mask))!r} is not in the collection")
    if not is_weakly_left_resolving(lg):
        raise PreconditionError(
            "NOT_WEAKLY_LEFT_RESOLVING",
            "normal forms require a weakly left-resolving graph")
    full = lg.full_mask()

    def value(word: Word) -> int:
        return lg.range_mask(full, word)

    cubes = _expr_to_cubes(col, mask, {})
    terms: list[tuple[Factor, ...]] = []
    fallback = False
    for pos, neg in cubes:
        pos_value = full
        for w in pos:
            pos_value &= value(w)
        cube_value = pos_value
        for w in neg:
            cube_value &= ~value(w)
        if not cube_value:
            continue
        keep_neg = [w for w in sorted(neg) if value(w) & pos_value]
        pos_sorted = sorted(pos)
        factors: list[Factor] = []
        used: set[Word] = set()
        for w_neg in keep_neg:
            host = next((w for w in pos_sorted if w not in used
                         and value(w_neg) & value(w) == value(w_neg)
                         and value(w_neg) != value(w)), None)
            if host is None:
                host = next((w for w in pos_sorted
                             if value(w_neg) & value(w) == value(w_neg)
                             and value(w_neg) != value(w)), None)
            if host is None:
                fallback = True
                break
            factors.append(Factor(host, w_neg))
            used.add(host)
        if fallback:
            break
        for w in pos_sorted:
            if w not in used:
                factors.append(Factor(w))
        terms.append(tuple(factors))
    if not fallback:
        nf = NormalForm(tuple(terms))
        if nf.evaluate_mask(lg) == mask:
            return nf
    searched = _search_normal_form(lg, mask)
    if searched is None:
        raise VerificationError("no normal form found", lg.set_of(mask))
    if searched.evaluate_mask(lg) != mask:  # pragma: no cover - defensive
        raise VerificationError("normal form evaluation mismatch", searched.render())
    return searched


# -- labeled space report ----------------------------------------------------


@dataclass(frozen=True)
class LabeledSpaceReport:
    set_finite: bool
    label_counts: Mapping[frozenset, int]
    weakly_left_resolving: Check
    ck1a_pairs: int
    ck1a_disjoint_pairs: int
    ck1b_intersections_closed: Check
    ck1b_unions_closed: Check
    ck1b_differences_closed: Check
    ck4: Check
    empty_set_convention: str = "the empty set is excluded from collections"

    @property
    def ok(self) -> bool:
        return (self.set_finite and bool(self.weakly_left_resolving)
                and bool(self.ck1b_intersections_closed)
                and bool(self.ck1b_unions_closed) and bool(self.ck4))

    def to_json(self) -> dict:
        return {
            "set_finite": self.set_finite,
            "label_counts": {",".join(sorted(k)): v
                             for k, v in sorted(self.label_counts.items(),
                                                key=lambda kv: sorted(kv[0]))},
            "weakly_left_resolving": bool(self.weakly_left_resolving),
            "ck1a_pairs": self.ck1a_pairs,
            "ck1a_disjoint_pairs": self.ck1a_disjoint_pairs,
            "ck1b_intersections_closed": bool(self.ck1b_intersections_closed),
            "ck1b_unions_closed": bool(self.ck1b_unions_closed),
            "ck1b_differences_closed": bool(self.ck1b_differences_closed),
            "ck4": bool(self.ck4),
            "empty_set_convention": self.empty_set_convention,
            "ok": self.ok,
        }


def labeled_space_report(lg: LabeledGraph, col: SetCollection,
                         word_bound: int = 4) -> LabeledSpaceReport:
    """Set-level preconditions of the generator relations: label-set sizes,
    weak left-resolving, disjointness of ranges, lattice closure of range
    intersections/unions/strict differences, and the partition identity
    (every member vertex emits, and single-letter relative ranges are the
    letter fibers recomputed by direct edge scan)."""
    label_counts: dict[frozenset, int] = {}
    for mask in col.members:
        vs = lg.set_of(mask)
        letters = {lg.labeling[e.eid] for v in vs for e in lg.graph.out_edges(v)}
        label_counts[vs] = len(letters)
    wlr = is_weakly_left_resolving(lg)

    ranges = sorted({v for v in _word_value_table(lg, word_bound).values() if v})
    pairs = 0
    disjoint = 0
    inter_ok: Check = Check(True)
    union_ok: Check = Check(True)
    diff_ok: Check = Check(True)
    members = set(col.members)
    for i, r1 in enumerate(ranges):
        for r2 in ranges[i + 1:]:
            pairs += 1
            if not r1 & r2:
                disjoint += 1
            if r1 & r2 and (r1 & r2) not in members and inter_ok:
                inter_ok = Check(False, (lg.set_of(r1), lg.set_of(r2)))
            if (r1 | r2) not in members and union_ok:
                union_ok = Check(False, (lg.set_of(r1), lg.set_of(r2)))
            for big, small in ((r1, r2), (r2, r1)):
                if big & small == small and big != small:
                    if (big & ~small) not in members and diff_ok:
                        diff_ok = Check(False, (lg.set_of(big), lg.set_of(small)))

    ck4: Check = Check(True)
    for mask in col.members:
        vs = sorted(lg.set_of(mask))
        for v in vs:
            if not lg.graph.out_edges(v):
                ck4 = Check(False, (frozenset(vs), v), "vertex emits no edge")
                break
        if not ck4:
            break
        letters = sorted({lg.labeling[e.eid] for v in vs
                          for e in lg.graph.out_edges(v)})
        for a in letters:
            fiber = 0
            for v in vs:
                for e in lg.graph.out_edges(v):
                    if lg.labeling[e.eid] == a:
                        fiber |= lg.mask_of([e.dst])
            stepped = lg.range_mask(mask, (a,))
            if stepped != fiber or not stepped:
                ck4 = Check(False, (frozenset(vs), a), "letter fiber mismatch")
                break
        if not ck4:
            break
    return LabeledSpaceReport(
        set_finite=True,
        label_counts=label_counts,
        weakly_left_resolving=wlr,
        ck1a_pairs=pairs,
        ck1a_disjoint_pairs=disjoint,
        ck1b_intersections_closed=inter_ok,
        ck1b_unions_closed=union_ok,
        ck1b_differences_closed=diff_ok,
        ck4=ck4,
    )
