"""Skew product labeled graphs, their left translation action, path and
labeled-path identifications, and the relabeling isomorphism between two
label-consistent twists."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

from .action import (EDGE, LETTER, VERTEX, LabeledGraphAction,
                     QuotientLabeledGraph, is_label_consistent, quotient)
from .errors import OutOfWindow, PreconditionError, VerificationError
from .graph import DirectedGraph, Edge, Path, validate
from .groups import Element, Group, Window
from .labeled import Check, LabeledGraph, Word, is_left_resolving
from .morphism import LabeledGraphMorphism, verify_morphism


def one_cocycle(base: LabeledGraph, group: Group) -> dict[str, Element]:
    """The constant-identity cocycle; always label consistent."""
    return {e.eid: group.identity for e in base.graph.edges}


@dataclass(frozen=True)
class SkewSpec:
    """Base labeled graph with a pair of edge cocycles into a group.

    The spec is the authoritative object for infinite skew products;
    materializations over windows are views of it.
    """

    base: LabeledGraph
    group: Group
    c: Mapping[str, Element]
    d: Mapping[str, Element]

    def __post_init__(self):
        for name, cocycle in (("c", self.c), ("d", self.d)):
            for e in self.base.graph.edges:
                if e.eid not in cocycle:
                    raise PreconditionError(
                        "PARTIAL_COCYCLE", f"{name} misses edge {e.eid}")
                if not self.group.contains(cocycle[e.eid]):
                    raise PreconditionError(
                        "BAD_ELEMENT", f"{name}({e.eid}) is not a group element")

    @cached_property
    def c_factoring(self):
        return is_label_consistent(self.base, self.c)

    @cached_property
    def d_factoring(self):
        return is_label_consistent(self.base, self.d)

    def d_is_identity(self) -> bool:
        ident = self.group.identity
        return all(v == ident for v in self.d.values())

    def path_cocycle(self, path: Path) -> Element:
        """Product of c along a base path, left to right."""
        acc = self.group.identity
        for eid in path.edges:
            acc = self.group.op(acc, self.c[eid])
        return acc

    def letter_cocycle(self, word: Word) -> Element:
        """Product of the label factoring C along a word; requires c to be
        label consistent."""
        factoring = self.c_factoring.factoring
        if factoring is None:
            raise PreconditionError(
                "NOT_LABEL_CONSISTENT",
                f"cocycle c does not factor through the labeling "
                f"(witness edges {self.c_factoring.witness})")
        acc = self.group.identity
        for a in word:
            if a not in factoring:
                raise PreconditionError("UNKNOWN_LETTER", a)
            acc = self.group.op(acc, factoring[a])
        return acc


def pair_id(base_id: str, element: Element, group: Group) -> str:
    return f"({base_id},{group.element_str(element)})"


class SkewLabeledGraph:
    """A materialized skew product.

    Vertices are pairs (base vertex, layer); each vertex keeps its full
    out-edge fiber, so edges whose endpoint falls outside the layer
    assignment are retained with a boundary flag and their endpoint is
    added as a flagged halo vertex rather than dropped.
    """

    def __init__(self, spec: SkewSpec, layers: Mapping[str, tuple[Element, ...]],
                 window: Window | None):
        self.spec = spec
        self.window = window
        self.layers = {v: tuple(ls) for v, ls in layers.items()}
        group = spec.group
        base = spec.base

        vertex_pair: dict[str, tuple[str, Element]] = {}
        vertex_id: dict[tuple[str, Element], str] = {}

        def ensure_vertex(x: str, g: Element) -> str:
            key = (x, g)
            vid = vertex_id.get(key)
            if vid is None:
                vid = pair_id(x, g, group)
                vertex_id[key] = vid
                vertex_pair[vid] = key
            return vid

        window_vertices = set()
        for x in base.vertices:
            for g in self.layers.get(x, ()):
                window_vertices.add(ensure_vertex(x, g))

        edges: list[Edge] = []
        labeling: dict[str, str] = {}
        edge_pair: dict[str, tuple[str, Element]] = {}
        edge_id: dict[tuple[str, Element], str] = {}
        letter_pair: dict[str, tuple[str, Element]] = {}
        boundary: set[str] = set()
        layer_sets = {x: set(ls) for x, ls in self.layers.items()}
        for e in base.graph.edges:
            for g in self.layers.get(e.src, ()):
                eid = pair_id(e.eid, g, group)
                src = ensure_vertex(e.src, g)
                dst_layer = group.op(g, spec.c[e.eid])
                dst = ensure_vertex(e.dst, dst_layer)
                if dst_layer not in layer_sets.get(e.dst, ()):
                    boundary.add(eid)
                letter_layer = group.op(g, spec.d[e.eid])
                letter = pair_id(base.labeling[e.eid], letter_layer, group)
                letter_pair[letter] = (base.labeling[e.eid], letter_layer)
                edges.append(Edge(eid, src, dst))
                labeling[eid] = letter
                edge_pair[eid] = (e.eid, g)
                edge_id[(e.eid, g)] = eid

        self.graph = LabeledGraph(
            DirectedGraph(vertex_pair.keys(), edges), labeling)
        self.vertex_pair = vertex_pair
        self.vertex_id = vertex_id
        self.edge_pair = edge_pair
        self.edge_id = edge_id
        self.letter_pair = letter_pair
        self.letter_id = {pair: lid for lid, pair in letter_pair.items()}
        self.window_vertices = frozenset(window_vertices)
        self.halo_vertices = frozenset(vertex_pair) - self.window_vertices
        self.boundary_edges = frozenset(boundary)

        interior = []
        for vid in sorted(window_vertices):
            x, g = vertex_pair[vid]
            complete = True
            for e in base.graph.in_edges(x):
                src_layer = group.op(g, group.inv(spec.c[e.eid]))
                if src_layer not in layer_sets.get(e.src, ()):
                    complete = False
                    break
            if complete:
                interior.append(vid)
        self.interior_vertices = frozenset(interior)

        validity = validate(self.graph.graph)
        self.interior_valid = all(
            validity.per_vertex[v].ok for v in self.interior_vertices)
        self.left_resolving = is_left_resolving(self.graph)
        base_lr = is_left_resolving(base)
        if base_lr and not self.left_resolving:
            raise VerificationError(
                "left-resolving must be inherited by the skew product",
                self.left_resolving.witness)
        self.left_resolving_inherited = Check(
            bool(self.left_resolving) or not base_lr)

    def __repr__(self) -> str:
        w = str(self.window) if self.window else "all"
        return (f"SkewLabeledGraph({len(self.graph.vertices)} vertices, "
                f"window {w})")


def skew_product(spec: SkewSpec, window: Window | None = None,
                 layers: Mapping[str, tuple[Element, ...]] | None = None
                 ) -> SkewLabeledGraph:
    """Materialize the skew product: vertices (v, g), edges (e, g) from
    (s(e), g) to (r(e), g c(e)) labeled (L(e), g d(e)).

    Finite groups materialize fully; the integers need an explicit window
    (or a per-vertex layer assignment for pullback domains).
    """
    validity = validate(spec.base.graph)
    if not validity.valid:
        raise PreconditionError(
            "INVALID_GRAPH",
            f"skew base: offending vertices {', '.join(validity.offenders())}")
    if layers is None:
        if spec.group.is_finite:
            layers = {v: tuple(spec.group.elements()) for v in spec.base.vertices}
        else:
            if window is None:
                raise PreconditionError(
                    "WINDOW_REQUIRED",
                    "integer skew products need an explicit window")
            layers = {v: tuple(window.elements()) for v in spec.base.vertices}
    return SkewLabeledGraph(spec, layers, window)


# -- left translation ----------------------------------------------------------


class TranslationAction(LabeledGraphAction):
    """Left translation g . (x, h) = (x, gh) on a materialized skew
    product; partial on windows."""

    def __init__(self, skew: SkewLabeledGraph):
        self.skew = skew
        self.group = skew.spec.group
        self.graph = skew.graph

    def _pairs(self, kind: str):
        if kind == VERTEX:
            return self.skew.vertex_pair, self.skew.vertex_id
        if kind == EDGE:
            return self.skew.edge_pair, self.skew.edge_id
        return self.skew.letter_pair, self.skew.letter_id

    def apply(self, g: Element, kind: str, item: str) -> str | None:
        pairs, ids = self._pairs(kind)
        base, h = pairs[item]
        return ids.get((base, self.group.op(g, h)))

    def scope_elements(self) -> tuple[Element, ...]:
        if self.group.is_finite:
            return self.group.elements()
        layers = [g for ls in self.skew.layers.values() for g in ls]
        span = max(layers) - min(layers) if layers else 0
        return tuple(range(-span, span + 1))

    def orbit_generators(self) -> tuple[Element, ...]:
        if self.group.is_finite:
            return tuple(e for e in self.group.elements()
                         if e != self.group.identity)
        return (1, -1)

    def lifting_scope(self) -> tuple[str, ...]:
        return tuple(sorted(self.skew.window_vertices))

    def domain_scope(self) -> frozenset[str]:
        return self.skew.window_vertices

    def orbit_name(self, kind: str, members: tuple[str, ...]) -> str:
        pairs, _ = self._pairs(kind)
        bases = {pairs[m][0] for m in members}
        if len(bases) != 1:
            raise VerificationError(
                "translation orbit spans several base items", tuple(sorted(bases)))
        return bases.pop()

    def is_windowed(self) -> bool:
        return not self.group.is_finite

    def as_finite_action(self):
        """Materialize explicit per-element triples (finite groups only)."""
        from .action import FiniteAction
        if not self.group.is_finite:
            raise PreconditionError("INFINITE_GROUP",
                                    "only finite translations materialize")
        maps = {}
        for g in self.group.elements():
            maps[g] = tuple(
                {item: self.apply(g, kind, item) for item in self.carrier(kind)}
                for kind in (VERTEX, EDGE, LETTER))
        return FiniteAction(self.group, self.graph, maps)


def left_translation(skew: SkewLabeledGraph) -> TranslationAction:
    return TranslationAction(skew)


def translation_quotient(skew: SkewLabeledGraph
                         ) -> tuple[QuotientLabeledGraph, LabeledGraphMorphism]:
    """Quotient of the translation action together with the canonical
    isomorphism onto the base labeled graph (the skew/quotient round
    trip).  The isomorphism is verified, never assumed."""
    quot = quotient(left_translation(skew))
    base = skew.spec.base
    iso = LabeledGraphMorphism(
        quot.quotient, base,
        {v: v for v in quot.quotient.vertices},
        {e.eid: e.eid for e in quot.quotient.graph.edges},
        {a: a for a in quot.quotient.alphabet},
    )
    report = verify_morphism(iso)
    if not report.isomorphism:
        raise VerificationError(
            "quotient of the translation action must equal the base",
            (report.witness, report.note))
    return quot, iso


# -- path identification ---------------------------------------------------------


def lift_path(skew: SkewLabeledGraph, path: Path, g: Element) -> Path:
    """The lift of a base path starting at layer ``g``: layer advances by
    the cocycle along the path.  Escaping the materialization raises."""
    spec = skew.spec
    ids = []
    layer = g
    for eid in path.edges:
        key = (eid, layer)
        skew_eid = skew.edge_id.get(key)
        if skew_eid is None:
            raise OutOfWindow(f"edge {eid} at layer "
                              f"{spec.group.element_str(layer)} is not materialized")
        ids.append(skew_eid)
        layer = spec.group.op(layer, spec.c[eid])
    return skew.graph.graph.make_path(ids)


def project_path(skew: SkewLabeledGraph, path: Path) -> tuple[Path, Element]:
    """Inverse of :func:`lift_path`: strips layers, returns the base path
    and the starting layer."""
    base_ids = []
    start = None
    for eid in path.edges:
        b, g = skew.edge_pair[eid]
        if start is None:
            start = g
        base_ids.append(b)
    return skew.spec.base.graph.make_path(base_ids), start


def _require_identification_preconditions(spec: SkewSpec) -> None:
    if spec.c_factoring.factoring is None:
        raise PreconditionError(
            "NOT_LABEL_CONSISTENT",
            f"cocycle c does not factor through the labeling "
            f"(witness edges {spec.c_factoring.witness})")
    if not spec.d_is_identity():
        raise PreconditionError(
            "NOT_IDENTITY_COCYCLE",
            "the labeled-path identification requires d == identity")


def identify_labeled_path(spec: SkewSpec, word: Word,
                          g: Element) -> tuple[tuple[str, Element], ...]:
    """The skew labeled path identified with (word, g): letter i carries
    layer g C(word[:i]).  Requires label-consistent c and d == identity."""
    _require_identification_preconditions(spec)
    if len(word) < 1:
        raise PreconditionError("ZERO_LENGTH_PATH", "words have length >= 1")
    out = []
    layer = g
    factoring = spec.c_factoring.factoring
    for a in word:
        if a not in factoring:
            raise PreconditionError("UNKNOWN_LETTER", a)
        out.append((a, layer))
        layer = spec.group.op(layer, factoring[a])
    return tuple(out)


def labeled_range(spec: SkewSpec, word: Word,
                  g: Element) -> tuple[frozenset[str], Element]:
    """Range of the identified labeled path: (r(word), g C(word))."""
    _require_identification_preconditions(spec)
    base_range = spec.base.set_of(
        spec.base.range_mask(spec.base.full_mask(), word))
    return base_range, spec.group.op(g, spec.letter_cocycle(word))


# -- relabeling isomorphism -------------------------------------------------------


def relabel_iso(skew1: SkewLabeledGraph,
                skew2: SkewLabeledGraph) -> LabeledGraphMorphism:
    """Equivariant isomorphism between two skew products differing only in
    their (label consistent) second cocycle: identity on vertices and
    edges, (a, g) -> (a, g D1(a)^-1 D2(a)) on letters.  All laws are
    verified before the morphism is returned."""
    s1, s2 = skew1.spec, skew2.spec
    if s1.base != s2.base or s1.group != s2.group or dict(s1.c) != dict(s2.c):
        raise PreconditionError(
            "DIFFERENT_SKEW", "relabeling needs equal base, group and c")
    if skew1.layers != skew2.layers:
        raise PreconditionError(
            "DIFFERENT_SKEW", "relabeling needs equal materialization layers")
    d1 = s1.d_factoring.factoring
    d2 = s2.d_factoring.factoring
    if d1 is None:
        raise PreconditionError(
            "NOT_LABEL_CONSISTENT",
            f"first d is not label consistent (witness {s1.d_factoring.witness})")
    if d2 is None:
        raise PreconditionError(
            "NOT_LABEL_CONSISTENT",
            f"second d is not label consistent (witness {s2.d_factoring.witness})")
    group = s1.group

    alphabet_map = {}
    for lid, (a, h) in skew1.letter_pair.items():
        shift = group.op(group.inv(d1[a]), d2[a])
        target = skew2.letter_id.get((a, group.op(h, shift)))
        if target is None:
            raise VerificationError(
                "relabeled letter is not materialized", (a, h))
        alphabet_map[lid] = target
    iso = LabeledGraphMorphism(
        skew1.graph, skew2.graph,
        {v: v for v in skew1.graph.vertices},
        {e.eid: e.eid for e in skew1.graph.graph.edges},
        alphabet_map,
    )
    report = verify_morphism(iso)
    if not report.ok:
        raise VerificationError("relabeling morphism law failed",
                                (report.witness, report.note))
    if not report.isomorphism:
        raise VerificationError("relabeling is not bijective", report.witness)

    # equivariance for the two translation actions, pointwise on the window
    t1, t2 = TranslationAction(skew1), TranslationAction(skew2)
    checked = 0
    for g in t1.scope_elements():
        for lid in skew1.graph.alphabet:
            moved = t1.apply(g, LETTER, lid)
            if moved is None:
                continue
            lhs = alphabet_map[moved]
            rhs = t2.apply(g, LETTER, alphabet_map[lid])
            if rhs is None:
                continue
            if lhs != rhs:
                raise VerificationError(
                    "relabeling is not equivariant", (g, lid))
            checked += 1
    if checked == 0:
        raise VerificationError("equivariance could not be exercised", None)
    return iso
