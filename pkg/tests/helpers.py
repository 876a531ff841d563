"""Shared constructions used by several test modules."""

from labgraphs import fixtures as fx
from labgraphs.action import FiniteAction
from labgraphs.graph import DirectedGraph
from labgraphs.groups import CyclicGroup
from labgraphs.labeled import LabeledGraph


def trivial_action(lg, n=2):
    """Every element acts as the identity; not free unless n == 1."""
    group = CyclicGroup(n)
    ident = ({v: v for v in lg.vertices},
             {e.eid: e.eid for e in lg.graph.edges},
             {a: a for a in lg.alphabet})
    return FiniteAction(group, lg, {g: ident for g in group.elements()})


def fish4_swap_action():
    """Z/2 acting on the four-edge graph by the vertex swap; the alphabet
    is fixed, so the action is not free on letters."""
    lg = fx.fish4()
    group = CyclicGroup(2)
    swap = ({"v": "w", "w": "v"},
            {"e": "h", "h": "e", "f": "g", "g": "f"},
            {"0": "0", "1": "1"})
    ident = ({"v": "v", "w": "w"},
             {e.eid: e.eid for e in lg.graph.edges},
             {"0": "0", "1": "1"})
    return FiniteAction(group, lg, {0: ident, 1: swap})


def loop_swap_action():
    """Z/2 fixing the single vertex while swapping two loops and their
    letters: a verified action that is not free on vertices."""
    g = DirectedGraph(["v"], [("l1", "v", "v"), ("l2", "v", "v")])
    lg = LabeledGraph(g, {"l1": "a", "l2": "b"})
    group = CyclicGroup(2)
    ident = ({"v": "v"}, {"l1": "l1", "l2": "l2"}, {"a": "a", "b": "b"})
    swap = ({"v": "v"}, {"l1": "l2", "l2": "l1"}, {"a": "b", "b": "a"})
    return FiniteAction(group, lg, {0: ident, 1: swap})
