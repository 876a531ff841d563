"""Named test fixtures and seeded random generators.

The named builders are the worked examples exercised throughout the test
suite; the random generators feed the counted property sweeps.
"""

from __future__ import annotations

import random

from .action import FiniteAction
from .graph import DirectedGraph
from .groups import (CyclicGroup, Group, IntegerGroup, PermutationGroup,
                     TableGroup, Window)
from .gross_tucker import SectionPack
from .labeled import LabeledGraph
from .skew import (SkewLabeledGraph, SkewSpec, TranslationAction,
                   left_translation, one_cocycle, skew_product)


def fish() -> LabeledGraph:
    """Two vertices v, w; loop e at v labeled 1; f: v->w and g: w->v both
    labeled 0."""
    graph = DirectedGraph(
        ["v", "w"],
        [("e", "v", "v"), ("f", "v", "w"), ("g", "w", "v")])
    return LabeledGraph(graph, {"e": "1", "f": "0", "g": "0"})


def fish4() -> LabeledGraph:
    """The four-edge variant with a second loop: e at v and h at w labeled
    1, the cross edges f, g labeled 0.  Swapping v and w is an
    automorphism."""
    graph = DirectedGraph(
        ["v", "w"],
        [("e", "v", "v"), ("f", "v", "w"), ("g", "w", "v"), ("h", "w", "w")])
    return LabeledGraph(graph, {"e": "1", "f": "0", "g": "0", "h": "1"})


def chain3() -> LabeledGraph:
    """Three-vertex graph with r(a) = {x, y} and r(b) = {y}: the smallest
    accommodating collection is not closed under relative complements
    ({x} only appears after adding them)."""
    graph = DirectedGraph(
        ["x", "y", "z"],
        [("e1", "z", "x"), ("e2", "z", "y"), ("e3", "x", "y"), ("e4", "y", "z")])
    return LabeledGraph(graph, {"e1": "a", "e2": "a", "e3": "b", "e4": "c"})


def skewz_spec() -> SkewSpec:
    """FISH twisted over the integers: c constant 1, d constant 0."""
    base = fish()
    group = IntegerGroup()
    return SkewSpec(base, group,
                    {e.eid: 1 for e in base.graph.edges},
                    one_cocycle(base, group))


def skewz(window: Window = Window(0, 3)) -> SkewLabeledGraph:
    return skew_product(skewz_spec(), window)


def nofd_spec() -> SkewSpec:
    """FISH4 twisted over the integers with d = (0, 0, -1, 2) on
    (e, f, g, h): the translation action admits no fundamental domain."""
    base = fish4()
    return SkewSpec(base, IntegerGroup(),
                    {e.eid: 1 for e in base.graph.edges},
                    {"e": 0, "f": 0, "g": -1, "h": 2})


def nofd(window: Window = Window(-3, 3)) -> SkewLabeledGraph:
    return skew_product(nofd_spec(), window)


def fdok_spec() -> SkewSpec:
    """FISH twisted over Z/2 with label-consistent cocycles
    (C(0) = C(1) = 1; D(0) = 1, D(1) = 0): the identity layer is a
    fundamental domain of the translation action."""
    base = fish()
    group = CyclicGroup(2)
    c = {e.eid: 1 for e in base.graph.edges}
    d = {e.eid: (1 if base.labeling[e.eid] == "0" else 0)
         for e in base.graph.edges}
    return SkewSpec(base, group, c, d)


def fdok() -> SkewLabeledGraph:
    return skew_product(fdok_spec())


def fdok_action() -> TranslationAction:
    return left_translation(fdok())


def gt510(window: Window = Window(-4, 6)) -> tuple[TranslationAction, SectionPack]:
    """The reconstruction worked example: translation on the FISH skew
    product with the vertex section (v,0), (w,2) and the identity-layer
    letter section."""
    action = left_translation(skew_product(skewz_spec(), window))
    pack = SectionPack(
        eta0={"v": "(v,0)", "w": "(w,2)"},
        etaA={"0": "(0,0)", "1": "(1,0)"},
    )
    return action, pack


# -- random generators ---------------------------------------------------------


def random_labeled_graph(rng: random.Random, max_vertices: int = 5,
                         max_edges: int = 10, max_letters: int = 3) -> LabeledGraph:
    """Unconstrained labeled graph (possibly invalid); the resolving
    checks are total, so these exercise them fully."""
    nv = rng.randint(1, max_vertices)
    ne = rng.randint(1, max_edges)
    nl = rng.randint(1, max_letters)
    vertices = [f"v{i}" for i in range(nv)]
    edges = [(f"e{i:02d}", rng.choice(vertices), rng.choice(vertices))
             for i in range(ne)]
    labeling = {eid: f"a{rng.randrange(nl)}" for eid, _, _ in edges}
    return LabeledGraph(DirectedGraph(vertices, edges), labeling)


def random_valid_labeled_graph(rng: random.Random, max_vertices: int = 4,
                               max_letters: int = 3,
                               extra_edges: int = 3) -> LabeledGraph:
    """Row-finite essential labeled graph: every vertex receives and emits."""
    nv = rng.randint(1, max_vertices)
    vertices = [f"v{i}" for i in range(nv)]
    nl = rng.randint(1, max_letters)
    edges: list[tuple[str, str, str]] = []
    for v in vertices:
        edges.append((f"e{len(edges):02d}", v, rng.choice(vertices)))
    for v in vertices:
        if not any(dst == v for _, _, dst in edges):
            edges.append((f"e{len(edges):02d}", rng.choice(vertices), v))
    for _ in range(rng.randint(0, extra_edges)):
        edges.append((f"e{len(edges):02d}", rng.choice(vertices),
                      rng.choice(vertices)))
    labeling = {eid: f"a{rng.randrange(nl)}" for eid, _, _ in edges}
    return LabeledGraph(DirectedGraph(vertices, edges), labeling)


def random_finite_group(rng: random.Random) -> Group:
    pick = rng.randrange(5)
    if pick <= 2:
        return CyclicGroup(pick + 2)
    if pick == 3:
        return TableGroup([[i ^ j for j in range(4)] for i in range(4)])
    return PermutationGroup(3, [(1, 0, 2), (1, 2, 0)])


def random_translation_action(rng: random.Random,
                              label_consistent: bool) -> TranslationAction:
    """Translation action on a random finite skew product; with
    ``label_consistent`` the cocycles factor through the labeling, which
    guarantees a fundamental domain at the identity layer."""
    base = random_valid_labeled_graph(rng)
    group = random_finite_group(rng)
    elements = group.elements()
    if label_consistent:
        c_letters = {a: rng.choice(elements) for a in base.alphabet}
        d_letters = {a: rng.choice(elements) for a in base.alphabet}
        c = {e.eid: c_letters[base.labeling[e.eid]] for e in base.graph.edges}
        d = {e.eid: d_letters[base.labeling[e.eid]] for e in base.graph.edges}
    else:
        c = {e.eid: rng.choice(elements) for e in base.graph.edges}
        d = {e.eid: rng.choice(elements) for e in base.graph.edges}
    return left_translation(skew_product(SkewSpec(base, group, c, d)))


def anonymize_action(action: TranslationAction,
                     rng: random.Random) -> FiniteAction:
    """Re-express a finite translation action as a raw action over opaque
    ids, so the generic pipeline cannot exploit the skew presentation."""
    finite = action.as_finite_action()
    graph = finite.graph

    def renaming(items, prefix: str) -> dict[str, str]:
        shuffled = list(items)
        rng.shuffle(shuffled)
        return {old: f"{prefix}{i:03d}" for i, old in enumerate(shuffled)}

    vmap = renaming(graph.vertices, "n")
    emap = renaming([e.eid for e in graph.graph.edges], "k")
    amap = renaming(graph.alphabet, "s")
    new_graph = LabeledGraph(
        DirectedGraph(
            vmap.values(),
            [(emap[e.eid], vmap[e.src], vmap[e.dst]) for e in graph.graph.edges]),
        {emap[eid]: amap[a] for eid, a in graph.labeling.items()})
    maps = {}
    for g, (tv, te, ta) in finite.maps.items():
        maps[g] = ({vmap[v]: vmap[tv[v]] for v in tv},
                   {emap[e]: emap[te[e]] for e in te},
                   {amap[a]: amap[ta[a]] for a in ta})
    return FiniteAction(finite.group, new_graph, maps)
