"""Constructive reconstruction of a free labeled graph action as the left
translation on a skew product over its quotient: sections, derived
cocycles, and the verified equivariant isomorphism.  The label-consistent
variant runs the same pipeline with the vertex section chosen inside a
fundamental domain."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .action import (EDGE, LETTER, VERTEX, DomainSearchResult,
                     LabeledGraphAction, QuotientLabeledGraph,
                     find_fundamental_domain, is_free, is_fundamental_domain,
                     is_label_consistent, quotient, verify_action)
from .errors import (LabelConsistencyViolation, LiftFailure, NoFundamentalDomain,
                     NonFreeWitness, PreconditionError, VerificationError)
from .groups import Element
from .morphism import LabeledGraphMorphism, MorphismReport, verify_morphism
from .skew import SkewLabeledGraph, SkewSpec, TranslationAction


@dataclass(frozen=True)
class SectionPack:
    """One-sided inverses of the quotient projection: vertices, edges
    (derivable), and letters."""

    eta0: Mapping[str, str]
    etaA: Mapping[str, str]
    eta1: Mapping[str, str] | None = None


def _validate_eta(quot: QuotientLabeledGraph, mapping: Mapping[str, str],
                  orbit_of: Mapping[str, str], domain: Iterable[str],
                  what: str, scope: frozenset[str] | None = None) -> None:
    domain = set(domain)
    if set(mapping) != domain:
        raise PreconditionError(
            "BAD_SECTION", f"{what} section must be keyed by the quotient carrier")
    for q_item, item in mapping.items():
        if item not in orbit_of:
            raise PreconditionError("BAD_SECTION",
                                    f"{what} section hits unknown item {item!r}")
        if orbit_of[item] != q_item:
            raise PreconditionError(
                "BAD_SECTION",
                f"{what} section is not a section: q({item!r}) != {q_item!r}")
        if scope is not None and item not in scope:
            raise PreconditionError(
                "BAD_SECTION", f"{what} section leaves the window scope: {item!r}")


def default_eta0(action: LabeledGraphAction,
                 quot: QuotientLabeledGraph) -> dict[str, str]:
    """Lexicographically least in-scope representative per vertex orbit."""
    scope = frozenset(action.lifting_scope())
    out = {}
    for q_vertex, members in quot.orbit_vertex_members.items():
        usable = [m for m in members if m in scope]
        if not usable:
            raise PreconditionError(
                "BAD_SECTION", f"orbit {q_vertex} has no in-scope representative")
        out[q_vertex] = min(usable)
    return out


def default_etaA(quot: QuotientLabeledGraph) -> dict[str, str]:
    """Lexicographically least representative per letter orbit; a recorded
    convention, overridable through the section pack."""
    return {q_letter: min(members)
            for q_letter, members in quot.orbit_letter_members.items()}


def derive_eta1(action: LabeledGraphAction, quot: QuotientLabeledGraph,
                eta0: Mapping[str, str]) -> dict[str, str]:
    """The unique edge section whose sources agree with the vertex
    section, obtained by unique path lifting."""
    lg = action.graph
    out: dict[str, str] = {}
    for q_edge in quot.quotient.graph.edges:
        anchor = eta0[q_edge.src]
        lifts = [f.eid for f in lg.graph.out_edges(anchor)
                 if quot.edge_orbit[f.eid] == q_edge.eid]
        if len(lifts) != 1:
            raise LiftFailure(
                f"edge orbit {q_edge.eid} has {len(lifts)} lifts at {anchor}",
                (q_edge.eid, anchor, tuple(lifts)))
        out[q_edge.eid] = lifts[0]
    return out


def _solve_translate(action: LabeledGraphAction, kind: str,
                     source: str, target: str) -> Element:
    """The unique h with alpha_h(source) = target; exhaustive for raw
    finite actions, coordinate subtraction on skew presentations."""
    group = action.group
    if isinstance(action, TranslationAction):
        pairs, _ = action._pairs(kind)
        base_s, layer_s = pairs[source]
        base_t, layer_t = pairs[target]
        if base_s != base_t:
            raise NonFreeWitness(
                f"no element moves {source!r} to {target!r}", (source, target))
        h = group.op(layer_t, group.inv(layer_s))
        if action.apply(h, kind, source) != target:
            raise NonFreeWitness(
                f"translation solve failed for {source!r} -> {target!r}",
                (source, target))
        return h
    matches = [h for h in group.elements()
               if action.apply(h, kind, source) == target]
    if len(matches) != 1:
        raise NonFreeWitness(
            f"{len(matches)} elements move {source!r} to {target!r}; "
            f"the action cannot be free", (source, target, tuple(matches)))
    return matches[0]


def derive_cocycles(action: LabeledGraphAction, quot: QuotientLabeledGraph,
                    pack: SectionPack) -> tuple[dict[str, Element], dict[str, Element]]:
    """c moves the sectioned range onto the range of the sectioned edge;
    d does the same on letters.  Uniqueness is what freeness buys, and it
    is asserted at runtime by the solver."""
    lg = action.graph
    eta1 = pack.eta1
    assert eta1 is not None
    c: dict[str, Element] = {}
    d: dict[str, Element] = {}
    for q_edge in quot.quotient.graph.edges:
        lifted = lg.graph.edge(eta1[q_edge.eid])
        c[q_edge.eid] = _solve_translate(
            action, VERTEX, pack.eta0[q_edge.dst], lifted.dst)
        q_letter = quot.quotient.labeling[q_edge.eid]
        d[q_edge.eid] = _solve_translate(
            action, LETTER, pack.etaA[q_letter], lg.labeling[lifted.eid])
    return c, d


@dataclass(frozen=True)
class Reconstruction:
    quotient: QuotientLabeledGraph
    pack: SectionPack
    c: Mapping[str, Element]
    d: Mapping[str, Element]
    skew: SkewLabeledGraph
    iso: LabeledGraphMorphism
    morphism_report: MorphismReport
    equivariance_checked: int
    c_factoring: Mapping[str, Element] | None
    d_factoring: Mapping[str, Element] | None
    domain: frozenset[str] | None = None

    @property
    def label_consistent(self) -> bool:
        return self.c_factoring is not None and self.d_factoring is not None


def _reconstruction_layers(action: LabeledGraphAction,
                           quot: QuotientLabeledGraph,
                           eta0: Mapping[str, str]) -> dict[str, tuple]:
    """Layer assignment for the reconstruction skew product: the pullback
    of the acted-on carrier, so the comparison isomorphism is total and
    bijective rather than window-approximate."""
    group = action.group
    if isinstance(action, TranslationAction):
        layers: dict[str, tuple] = {}
        window = action.skew.window_vertices
        for q_vertex, members in quot.orbit_vertex_members.items():
            _, base_layer = action.skew.vertex_pair[eta0[q_vertex]]
            ls = []
            for vid in members:
                if vid in window:
                    _, m = action.skew.vertex_pair[vid]
                    ls.append(group.op(m, group.inv(base_layer)))
            layers[q_vertex] = tuple(sorted(ls))
        return layers
    return {v: tuple(group.elements()) for v in quot.quotient.vertices}


def reconstruct(action: LabeledGraphAction,
                pack: SectionPack | None = None) -> Reconstruction:
    """Build the skew product over the quotient with derived cocycles and
    the comparison isomorphism phi(Gx, g) = alpha_g(eta(Gx)); verify the
    morphism laws, bijectivity and equivariance pointwise."""
    report = verify_action(action)
    if not report.ok:
        raise PreconditionError(
            "ACTION_NOT_VERIFIED", f"first failure: {report.failures[0]!r}")
    freeness = is_free(action)
    if not freeness:
        raise PreconditionError("NOT_FREE", f"witness {freeness.witness!r}")

    quot = quotient(action)
    scope = frozenset(action.lifting_scope())
    if pack is None:
        pack = SectionPack(default_eta0(action, quot), default_etaA(quot))
    _validate_eta(quot, pack.eta0, quot.vertex_orbit,
                  quot.quotient.vertices, "vertex", scope)
    _validate_eta(quot, pack.etaA, quot.letter_orbit,
                  quot.quotient.alphabet, "letter")
    if pack.eta1 is None:
        pack = SectionPack(pack.eta0, pack.etaA,
                           derive_eta1(action, quot, pack.eta0))
    else:
        _validate_eta(quot, pack.eta1, quot.edge_orbit,
                      [e.eid for e in quot.quotient.graph.edges], "edge")
        lg = action.graph
        for q_edge in quot.quotient.graph.edges:
            got = lg.graph.edge(pack.eta1[q_edge.eid]).src
            if got != pack.eta0[q_edge.src]:
                raise PreconditionError(
                    "BAD_SECTION",
                    f"edge section source mismatch at {q_edge.eid}: "
                    f"{got!r} != {pack.eta0[q_edge.src]!r}")

    c, d = derive_cocycles(action, quot, pack)
    skew_spec = SkewSpec(quot.quotient, action.group, c, d)
    layers = _reconstruction_layers(action, quot, pack.eta0)
    skew = SkewLabeledGraph(skew_spec, layers, window=None)

    vmap, emap, amap = {}, {}, {}
    for vid, (q_vertex, g) in skew.vertex_pair.items():
        image = action.apply(g, VERTEX, pack.eta0[q_vertex])
        if image is None:
            raise VerificationError("comparison map leaves the carrier",
                                    (VERTEX, vid))
        vmap[vid] = image
    for eid, (q_edge, g) in skew.edge_pair.items():
        image = action.apply(g, EDGE, pack.eta1[q_edge])
        if image is None:
            raise VerificationError("comparison map leaves the carrier",
                                    (EDGE, eid))
        emap[eid] = image
    for lid, (q_letter, h) in skew.letter_pair.items():
        image = action.apply(h, LETTER, pack.etaA[q_letter])
        if image is None:
            raise VerificationError("comparison map leaves the carrier",
                                    (LETTER, lid))
        amap[lid] = image

    iso = LabeledGraphMorphism(skew.graph, action.graph, vmap, emap, amap)
    morphism_report = verify_morphism(iso)
    if not morphism_report.ok:
        raise VerificationError(
            f"reconstruction morphism law failed: {morphism_report.note}",
            morphism_report.witness)
    if not morphism_report.isomorphism:
        raise VerificationError("reconstruction map is not bijective", None)

    tau = TranslationAction(skew)
    maps = {VERTEX: vmap, EDGE: emap, LETTER: amap}
    checked = 0
    for g in action.scope_elements():
        for kind in (VERTEX, EDGE, LETTER):
            mapping = maps[kind]
            for item in tau.carrier(kind):
                moved = tau.apply(g, kind, item)
                if moved is None:
                    continue
                rhs = action.apply(g, kind, mapping[item])
                if rhs is None:
                    continue
                if mapping[moved] != rhs:
                    raise VerificationError("reconstruction is not equivariant",
                                            (g, kind, item))
                checked += 1
    if checked == 0:
        raise VerificationError("equivariance could not be exercised", None)

    return Reconstruction(
        quot, pack, c, d, skew, iso, morphism_report, checked,
        is_label_consistent(quot.quotient, c).factoring,
        is_label_consistent(quot.quotient, d).factoring)


def reconstruct_label_consistent(action: LabeledGraphAction,
                                 domain: Iterable[str] | None = None,
                                 etaA: Mapping[str, str] | None = None,
                                 cap: int = 10 ** 6) -> Reconstruction:
    """Reconstruction whose cocycles factor through the quotient labeling,
    obtained by sectioning vertices inside a fundamental domain.  A
    violation of label consistency after the domain verified is an
    internal error, not user input, and is raised as such."""
    if domain is not None:
        fd = is_fundamental_domain(action, domain)
        if not fd.ok:
            raise NoFundamentalDomain(
                f"supplied domain fails: {fd.witness!r}", fd.witness)
        T = frozenset(domain)
    else:
        result: DomainSearchResult = find_fundamental_domain(action, cap=cap)
        if result.domain is None:
            raise NoFundamentalDomain(
                f"no fundamental domain among {result.candidates_tried} "
                f"candidate transversals")
        T = result.domain

    quot = quotient(action)
    eta0 = {}
    for q_vertex, members in quot.orbit_vertex_members.items():
        inside = sorted(T.intersection(members))
        if len(inside) != 1:
            raise NoFundamentalDomain(
                f"domain does not section orbit {q_vertex}", tuple(inside))
        eta0[q_vertex] = inside[0]
    pack = SectionPack(eta0, dict(etaA) if etaA else default_etaA(quot))
    rec = reconstruct(action, pack)
    if rec.c_factoring is None or rec.d_factoring is None:
        bad = "c" if rec.c_factoring is None else "d"
        raise LabelConsistencyViolation(
            f"derived {bad} is not label consistent despite the verified "
            f"fundamental domain {sorted(T)}; cocycles c={rec.c!r} d={rec.d!r}",
            (bad, dict(rec.c), dict(rec.d), tuple(sorted(T))))
    return Reconstruction(
        rec.quotient, rec.pack, rec.c, rec.d, rec.skew, rec.iso,
        rec.morphism_report, rec.equivariance_checked,
        rec.c_factoring, rec.d_factoring, domain=T)


def identity_layer_sections(action: TranslationAction) -> SectionPack:
    """Sections picking the identity layer of every fiber; defined when
    that layer is materialized.  With these sections the derived cocycles
    coincide with the originating skew spec's cocycles."""
    skew = action.skew
    group = action.group
    quot = quotient(action)
    eta0 = {}
    for q_vertex in quot.quotient.vertices:
        vid = skew.vertex_id.get((q_vertex, group.identity))
        if vid is None or vid not in skew.window_vertices:
            raise PreconditionError(
                "BAD_SECTION", f"identity layer of {q_vertex} is not in the window")
        eta0[q_vertex] = vid
    etaA = {}
    for q_letter in quot.quotient.alphabet:
        lid = skew.letter_id.get((q_letter, group.identity))
        if lid is None:
            raise PreconditionError(
                "BAD_SECTION", f"identity layer of letter {q_letter} is missing")
        etaA[q_letter] = lid
    return SectionPack(eta0, etaA)
