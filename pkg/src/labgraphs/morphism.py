"""Labeled graph morphisms, isomorphisms and automorphism arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping

from .errors import PreconditionError
from .labeled import Check, LabeledGraph


@dataclass(frozen=True)
class LabeledGraphMorphism:
    """Triple of maps (vertices, edges, alphabet) between labeled graphs."""

    source: LabeledGraph
    target: LabeledGraph
    vertex_map: Mapping[str, str]
    edge_map: Mapping[str, str]
    alphabet_map: Mapping[str, str]


@dataclass(frozen=True)
class MorphismReport:
    ok: bool
    isomorphism: bool
    witness: Any = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.ok


def identity_morphism(lg: LabeledGraph) -> LabeledGraphMorphism:
    return LabeledGraphMorphism(
        lg, lg,
        {v: v for v in lg.vertices},
        {e.eid: e.eid for e in lg.graph.edges},
        {a: a for a in lg.alphabet},
    )


def _total_onto(mapping: Mapping[str, str], domain, codomain, what: str):
    codset = set(codomain)
    for x in domain:
        if x not in mapping:
            return (f"{what} map not total", x)
        if mapping[x] not in codset:
            return (f"{what} map leaves the target", (x, mapping[x]))
    return None


def _bijective(mapping: Mapping[str, str], domain, codomain) -> bool:
    image = {mapping[x] for x in domain}
    return len(image) == len(tuple(domain)) and image == set(codomain)


def verify_morphism(m: LabeledGraphMorphism) -> MorphismReport:
    """Check the two morphism laws; the isomorphism flag additionally
    requires all three maps to be bijections onto the target carriers."""
    src, dst = m.source, m.target
    for mapping, domain, codomain, what in (
            (m.vertex_map, src.vertices, dst.vertices, "vertex"),
            (m.edge_map, [e.eid for e in src.graph.edges],
             [e.eid for e in dst.graph.edges], "edge"),
            (m.alphabet_map, src.alphabet, dst.alphabet, "alphabet")):
        bad = _total_onto(mapping, domain, codomain, what)
        if bad is not None:
            return MorphismReport(False, False, bad[1], bad[0])
    for e in src.graph.edges:
        fe = dst.graph.edge(m.edge_map[e.eid])
        if m.vertex_map[e.dst] != fe.dst:
            return MorphismReport(
                False, False, (e.eid, m.vertex_map[e.dst], fe.dst),
                "range not preserved")
        if m.vertex_map[e.src] != fe.src:
            return MorphismReport(
                False, False, (e.eid, m.vertex_map[e.src], fe.src),
                "source not preserved")
        if dst.labeling[fe.eid] != m.alphabet_map[src.labeling[e.eid]]:
            return MorphismReport(
                False, False,
                (e.eid, dst.labeling[fe.eid], m.alphabet_map[src.labeling[e.eid]]),
                "label compatibility violated")
    iso = (_bijective(m.vertex_map, src.vertices, dst.vertices)
           and _bijective(m.edge_map, [e.eid for e in src.graph.edges],
                          [e.eid for e in dst.graph.edges])
           and _bijective(m.alphabet_map, src.alphabet, dst.alphabet))
    return MorphismReport(True, iso)


def is_surjective(m: LabeledGraphMorphism) -> bool:
    return (set(m.vertex_map.values()) == set(m.target.vertices)
            and set(m.edge_map.values()) == {e.eid for e in m.target.graph.edges}
            and set(m.alphabet_map.values()) == set(m.target.alphabet))


def compose(f: LabeledGraphMorphism, g: LabeledGraphMorphism) -> LabeledGraphMorphism:
    """Composite ``f after g``; ``g``'s target must be ``f``'s source."""
    if g.target is not f.source and g.target != f.source:
        raise PreconditionError("NOT_COMPOSABLE", "inner target != outer source")
    return LabeledGraphMorphism(
        g.source, f.target,
        {v: f.vertex_map[g.vertex_map[v]] for v in g.vertex_map},
        {e: f.edge_map[g.edge_map[e]] for e in g.edge_map},
        {a: f.alphabet_map[g.alphabet_map[a]] for a in g.alphabet_map},
    )


def inverse(m: LabeledGraphMorphism) -> LabeledGraphMorphism:
    report = verify_morphism(m)
    if not report.isomorphism:
        raise PreconditionError("NOT_AN_ISOMORPHISM", report.note)
    return LabeledGraphMorphism(
        m.target, m.source,
        {w: v for v, w in m.vertex_map.items()},
        {f: e for e, f in m.edge_map.items()},
        {b: a for a, b in m.alphabet_map.items()},
    )


def is_automorphism(m: LabeledGraphMorphism) -> Check:
    if m.source != m.target:
        return Check(False, note="source and target differ")
    report = verify_morphism(m)
    if not report.ok:
        return Check(False, report.witness, report.note)
    if not report.isomorphism:
        return Check(False, report.witness, "not bijective")
    return Check(True)


def automorphism_check_and_compose(
        f: LabeledGraphMorphism, g: LabeledGraphMorphism) -> LabeledGraphMorphism:
    """Compose two verified automorphisms of the same labeled graph; the
    result is again a verified automorphism."""
    for name, m in (("f", f), ("g", g)):
        check = is_automorphism(m)
        if not check:
            raise PreconditionError(
                "NOT_AN_AUTOMORPHISM", f"{name}: {check.note} ({check.witness!r})")
    if f.source != g.source:
        raise PreconditionError("NOT_AN_AUTOMORPHISM", "carriers differ")
    h = compose(f, g)
    check = is_automorphism(h)
    if not check:
        raise PreconditionError("NOT_AN_AUTOMORPHISM",
                                f"composite failed: {check.note}")
    return h
