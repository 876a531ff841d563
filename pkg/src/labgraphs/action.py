"""Labeled graph actions, freeness, quotients, unique path lifting,
fundamental domains and label consistency."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterable, Mapping

from .errors import (PreconditionError, SearchSpaceExceeded,
                     VerificationError, WellDefinednessError)
from .graph import DirectedGraph, Edge
from .groups import Element, Group
from .labeled import Check, LabeledGraph
from .morphism import (LabeledGraphMorphism, is_surjective, verify_morphism)

VERTEX, EDGE, LETTER = "vertex", "edge", "letter"
_KINDS = (VERTEX, EDGE, LETTER)


class LabeledGraphAction:
    """A group acting on a (materialized) labeled graph.

    Concrete flavors are :class:`FiniteAction` (explicit per-element
    triples of a finite group) and the translation action on a skew
    product (``skew.TranslationAction``), which may be windowed: there
    ``apply`` returns None when the image escapes the materialization.
    """

    group: Group
    graph: LabeledGraph

    def apply(self, g: Element, kind: str, item: str) -> str | None:
        raise NotImplementedError

    def carrier(self, kind: str) -> tuple[str, ...]:
        if kind == VERTEX:
            return self.graph.vertices
        if kind == EDGE:
            return tuple(e.eid for e in self.graph.graph.edges)
        return self.graph.alphabet

    def scope_elements(self) -> tuple[Element, ...]:
        """Elements over which universally quantified laws are checked
        (all of them for finite groups)."""
        return self.group.elements()

    def orbit_generators(self) -> tuple[Element, ...]:
        return tuple(e for e in self.scope_elements()
                     if e != self.group.identity)

    def lifting_scope(self) -> tuple[str, ...]:
        """Vertices at which path-lifting statements are quantified."""
        return self.graph.vertices

    def domain_scope(self) -> frozenset[str]:
        """Vertices eligible as fundamental-domain representatives.  For
        windowed actions this excludes halo vertices, whose incident edges
        are not fully materialized and would make the clause checks
        vacuous."""
        return frozenset(self.graph.vertices)

    def orbit_name(self, kind: str, members: tuple[str, ...]) -> str:
        return min(members)

    def is_windowed(self) -> bool:
        return False

    def orbits(self, kind: str) -> tuple[tuple[str, ...], ...]:
        """Orbit partition of a carrier under the generator moves, as
        sorted tuples in deterministic order."""
        items = self.carrier(kind)
        parent = {x: x for x in items}

        def find(x: str) -> str:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.orbit_generators():
            for x in items:
                y = self.apply(g, kind, x)
                if y is not None:
                    rx, ry = find(x), find(y)
                    if rx != ry:
                        parent[ry] = rx
        groups: dict[str, list[str]] = {}
        for x in items:
            groups.setdefault(find(x), []).append(x)
        return tuple(sorted(tuple(sorted(v)) for v in groups.values()))


class FiniteAction(LabeledGraphAction):
    """Explicit action of a finite group: one automorphism triple per
    element, stored as total maps."""

    def __init__(self, group: Group, graph: LabeledGraph,
                 maps: Mapping[Element, tuple[Mapping[str, str],
                                              Mapping[str, str],
                                              Mapping[str, str]]]):
        if not group.is_finite:
            raise PreconditionError(
                "INFINITE_GROUP",
                "raw actions are accepted for finite groups only; present "
                "integer actions as skew products")
        self.group = group
        self.graph = graph
        elements = set(group.elements())
        if set(maps) != elements:
            raise PreconditionError(
                "PARTIAL_ACTION", "one triple per group element is required")
        carriers = (set(graph.vertices), {e.eid for e in graph.graph.edges},
                    set(graph.alphabet))
        for g, t in maps.items():
            for mapping, carrier, what in zip(t, carriers, _KINDS):
                if set(mapping) != carrier or not set(mapping.values()) <= carrier:
                    raise PreconditionError(
                        "PARTIAL_ACTION",
                        f"{what} map of element {g!r} is not a total self-map")
        self.maps = {g: (dict(t[0]), dict(t[1]), dict(t[2]))
                     for g, t in maps.items()}

    @classmethod
    def from_generators(cls, group: Group, graph: LabeledGraph,
                        generators: Mapping[Element, tuple]) -> "FiniteAction":
        """Close generator triples under the group multiplication.  A
        disagreement between two words for the same element is reported as
        a well-definedness failure."""
        triples: dict[Element, tuple] = {
            group.identity: ({v: v for v in graph.vertices},
                             {e.eid: e.eid for e in graph.graph.edges},
                             {a: a for a in graph.alphabet})}

        def composed(t1, t2):
            return tuple({k: m1[m2[k]] for k in m2} for m1, m2 in zip(t1, t2))

        for g, t in generators.items():
            if g in triples and triples[g] != tuple(dict(m) for m in t):
                raise WellDefinednessError("generator clashes with identity", g)
            triples[g] = tuple(dict(m) for m in t)
        frontier = list(generators)
        while frontier:
            nxt = []
            for g in list(generators):
                for h in frontier:
                    gh = group.op(g, h)
                    t = composed(triples[g], triples[h])
                    if gh not in triples:
                        triples[gh] = t
                        nxt.append(gh)
                    elif triples[gh] != t:
                        raise WellDefinednessError(
                            "generator words disagree", (g, h, gh))
            frontier = nxt
        return cls(group, graph, triples)

    def apply(self, g: Element, kind: str, item: str) -> str | None:
        triple = self.maps[g]
        idx = _KINDS.index(kind)
        return triple[idx].get(item)

    def triple_morphism(self, g: Element) -> LabeledGraphMorphism:
        vm, em, am = self.maps[g]
        return LabeledGraphMorphism(self.graph, self.graph, vm, em, am)


# -- verification -------------------------------------------------------------


@dataclass(frozen=True)
class ActionReport:
    ok: bool
    failures: tuple[tuple[str, Any], ...]
    elements_checked: int
    pairs_checked: int
    windowed: bool

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "failures": [[law, repr(w)] for law, w in self.failures],
            "elements_checked": self.elements_checked,
            "pairs_checked": self.pairs_checked,
            "verified_on_window": self.windowed,
        }


def verify_action(action: LabeledGraphAction) -> ActionReport:
    """Check that every element acts as a labeled graph automorphism, that
    the assignment is a homomorphism and that the identity acts as the
    identity.  For windowed actions the laws are checked pointwise wherever
    all participating items are materialized."""
    failures: list[tuple[str, Any]] = []
    lg = action.graph
    graph = lg.graph
    scope = action.scope_elements()
    ident = action.group.identity

    for kind in _KINDS:
        for item in action.carrier(kind):
            got = action.apply(ident, kind, item)
            if got != item:
                failures.append(("identity acts as identity", (kind, item, got)))

    for g in scope:
        seen: dict[tuple[str, str], str] = {}
        for kind in _KINDS:
            for item in action.carrier(kind):
                img = action.apply(g, kind, item)
                if img is None:
                    continue
                key = (kind, img)
                if key in seen:
                    failures.append(("injectivity", (g, kind, seen[key], item)))
                seen[key] = item
        for e in graph.edges:
            fe = action.apply(g, EDGE, e.eid)
            if fe is None:
                continue
            fe_edge = graph.edge(fe)
            img_dst = action.apply(g, VERTEX, e.dst)
            if img_dst is not None and img_dst != fe_edge.dst:
                failures.append(("range equivariance", (g, e.eid)))
            img_src = action.apply(g, VERTEX, e.src)
            if img_src is not None and img_src != fe_edge.src:
                failures.append(("source equivariance", (g, e.eid)))
            img_label = action.apply(g, LETTER, lg.labeling[e.eid])
            if img_label is not None and img_label != lg.labeling[fe]:
                failures.append(("label compatibility", (g, e.eid)))

    pairs = 0
    for g in scope:
        for h in scope:
            gh = action.group.op(g, h)
            if action.group.is_finite or gh in scope:
                for kind in _KINDS:
                    for item in action.carrier(kind):
                        via_h = action.apply(h, kind, item)
                        if via_h is None:
                            continue
                        lhs = action.apply(g, kind, via_h)
                        rhs = action.apply(gh, kind, item)
                        if lhs is not None and rhs is not None and lhs != rhs:
                            failures.append(
                                ("homomorphism", (g, h, kind, item)))
                pairs += 1
    return ActionReport(not failures, tuple(failures), len(scope), pairs,
                        action.is_windowed())


def is_free(action: LabeledGraphAction) -> Check:
    """Trivial vertex and alphabet stabilizers over the verification
    scope; the witness is (element, fixed item)."""
    ident = action.group.identity
    for g in action.scope_elements():
        if g == ident:
            continue
        for kind in (VERTEX, LETTER):
            for item in action.carrier(kind):
                if action.apply(g, kind, item) == item:
                    return Check(False, (g, item))
    return Check(True)


# -- quotients ----------------------------------------------------------------


@dataclass(frozen=True)
class QuotientLabeledGraph:
    quotient: LabeledGraph
    projection: LabeledGraphMorphism
    vertex_orbit: Mapping[str, str]
    edge_orbit: Mapping[str, str]
    letter_orbit: Mapping[str, str]
    orbit_vertex_members: Mapping[str, tuple[str, ...]]
    orbit_edge_members: Mapping[str, tuple[str, ...]]
    orbit_letter_members: Mapping[str, tuple[str, ...]]


def quotient(action: LabeledGraphAction) -> QuotientLabeledGraph:
    """Orbit labeled graph with its projection.  Well-definedness of the
    induced range, source and labeling maps is re-checked explicitly
    rather than trusted."""
    lg = action.graph
    graph = lg.graph

    orbit_of: dict[str, dict[str, str]] = {}
    members_of: dict[str, dict[str, tuple[str, ...]]] = {}
    for kind in _KINDS:
        orbit_of[kind] = {}
        members_of[kind] = {}
        for members in action.orbits(kind):
            name = action.orbit_name(kind, members)
            members_of[kind][name] = members
            for x in members:
                orbit_of[kind][x] = name

    # well-definedness: all edges in an orbit must agree on the orbits of
    # their sources, targets and labels
    rep_edge: dict[str, str] = {}
    for eid in orbit_of[EDGE]:
        cls = orbit_of[EDGE][eid]
        if cls not in rep_edge:
            rep_edge[cls] = eid
            continue
        other = graph.edge(rep_edge[cls])
        e = graph.edge(eid)
        for attr, kind in ((lambda x: x.src, VERTEX), (lambda x: x.dst, VERTEX)):
            if orbit_of[kind][attr(e)] != orbit_of[kind][attr(other)]:
                raise WellDefinednessError(
                    "source/range maps are not constant on an edge orbit",
                    (eid, other.eid))
        if (orbit_of[LETTER][lg.labeling[eid]]
                != orbit_of[LETTER][lg.labeling[other.eid]]):
            raise WellDefinednessError(
                "labeling is not constant on an edge orbit", (eid, other.eid))

    q_vertices = sorted(members_of[VERTEX])
    q_edges = []
    q_labeling = {}
    for cls, eid in sorted(rep_edge.items()):
        e = graph.edge(eid)
        q_edges.append(Edge(cls, orbit_of[VERTEX][e.src], orbit_of[VERTEX][e.dst]))
        q_labeling[cls] = orbit_of[LETTER][lg.labeling[eid]]
    q_graph = LabeledGraph(DirectedGraph(q_vertices, q_edges), q_labeling)

    projection = LabeledGraphMorphism(
        lg, q_graph, dict(orbit_of[VERTEX]), dict(orbit_of[EDGE]),
        dict(orbit_of[LETTER]))
    report = verify_morphism(projection)
    if not report.ok:
        raise VerificationError("quotient projection is not a morphism",
                                report.witness)
    if not is_surjective(projection):
        raise VerificationError("quotient projection is not surjective", None)
    return QuotientLabeledGraph(
        q_graph, projection,
        dict(orbit_of[VERTEX]), dict(orbit_of[EDGE]), dict(orbit_of[LETTER]),
        dict(members_of[VERTEX]), dict(members_of[EDGE]), dict(members_of[LETTER]))


def has_unique_path_lifting(p: LabeledGraphMorphism,
                            scope: Iterable[str] | None = None) -> Check:
    """For every source vertex u (in ``scope``) and every target edge e
    starting at p(u) there must be exactly one lift of e with source u."""
    if not is_surjective(p):
        raise PreconditionError("NOT_SURJECTIVE",
                                "path lifting is stated for surjective morphisms")
    source, target = p.source.graph, p.target.graph
    vertices = tuple(scope) if scope is not None else source.vertices
    for u in vertices:
        pu = p.vertex_map[u]
        for e in target.out_edges(pu):
            lifts = [f.eid for f in source.out_edges(u)
                     if p.edge_map[f.eid] == e.eid]
            if len(lifts) != 1:
                return Check(False, (u, e.eid, tuple(lifts)))
    return Check(True)


# -- fundamental domains -------------------------------------------------------


@dataclass(frozen=True)
class FundamentalDomainReport:
    ok: bool
    transversal: Check
    violations: tuple[tuple[str, str, str], ...]  # (clause, edge, edge)

    def __bool__(self) -> bool:
        return self.ok

    @property
    def witness(self):
        if not self.transversal:
            return ("transversal", self.transversal.witness)
        if self.violations:
            return self.violations[0]
        return None


def is_fundamental_domain(action: LabeledGraphAction,
                          domain: Iterable[str]) -> FundamentalDomainReport:
    """A vertex-orbit transversal such that edges meeting it (at range,
    clause a, or source, clause b) with orbit-equal labels carry literally
    equal labels."""
    lg = action.graph
    T = frozenset(domain)
    scope = action.domain_scope()
    for v in T:
        if not lg.graph.has_vertex(v):
            raise PreconditionError("UNKNOWN_VERTEX", v)
        if v not in scope:
            raise PreconditionError(
                "OUTSIDE_WINDOW_SCOPE",
                f"candidate representative {v!r} is not in the window scope")
    transversal: Check = Check(True)
    for members in action.orbits(VERTEX):
        hits = sorted(T.intersection(members))
        if len(hits) != 1:
            transversal = Check(False, (members[0], tuple(hits)),
                                "orbit not represented exactly once")
            break

    letter_orbit: dict[str, str] = {}
    for members in action.orbits(LETTER):
        name = action.orbit_name(LETTER, members)
        for a in members:
            letter_orbit[a] = name

    violations: list[tuple[str, str, str]] = []
    for clause, anchor in (("a", lambda e: e.dst), ("b", lambda e: e.src)):
        touching = [e for e in lg.graph.edges if anchor(e) in T]
        by_orbit: dict[str, list] = {}
        for e in touching:
            by_orbit.setdefault(letter_orbit[lg.labeling[e.eid]], []).append(e)
        for _, es in sorted(by_orbit.items()):
            for e1, e2 in itertools.combinations(es, 2):
                if lg.labeling[e1.eid] != lg.labeling[e2.eid]:
                    violations.append((clause, e1.eid, e2.eid))
    ok = bool(transversal) and not violations
    return FundamentalDomainReport(ok, transversal, tuple(violations))


@dataclass(frozen=True)
class DomainSearchResult:
    domain: frozenset[str] | None
    candidates_tried: int

    def __bool__(self) -> bool:
        return self.domain is not None


def find_fundamental_domain(action: LabeledGraphAction,
                            cap: int = 10 ** 6) -> DomainSearchResult:
    """First transversal (in deterministic product order over the vertex
    orbits, candidates bounded by the window scope) that passes
    :func:`is_fundamental_domain`, or None with the number of candidates
    tried."""
    scope = action.domain_scope()
    orbits = [tuple(m for m in members if m in scope)
              for members in action.orbits(VERTEX)]
    total = 1
    for members in orbits:
        total *= len(members)
        if total > cap:
            raise SearchSpaceExceeded(
                f"transversal space exceeds cap {cap}")
    tried = 0
    for combo in itertools.product(*orbits):
        tried += 1
        report = is_fundamental_domain(action, combo)
        if report.ok:
            return DomainSearchResult(frozenset(combo), tried)
    return DomainSearchResult(None, tried)


# -- label consistency ---------------------------------------------------------


@dataclass(frozen=True)
class LabelConsistency:
    factoring: Mapping[str, Element] | None
    witness: tuple[str, str] | None = None

    def __bool__(self) -> bool:
        return self.factoring is not None


def is_label_consistent(lg: LabeledGraph,
                        cocycle: Mapping[str, Element]) -> LabelConsistency:
    """The unique factoring of an edge cocycle through the labeling, when
    all equally labeled edges carry equal values."""
    for e in lg.graph.edges:
        if e.eid not in cocycle:
            raise PreconditionError("PARTIAL_COCYCLE", e.eid)
    factoring: dict[str, Element] = {}
    first_edge: dict[str, str] = {}
    for e in lg.graph.edges:
        a = lg.labeling[e.eid]
        if a in factoring:
            if factoring[a] != cocycle[e.eid]:
                return LabelConsistency(None, (first_edge[a], e.eid))
        else:
            factoring[a] = cocycle[e.eid]
            first_edge[a] = e.eid
    return LabelConsistency(factoring)
