"""Morphism laws, isomorphisms, automorphism composition."""

import pytest

from labgraphs import fixtures as fx
from labgraphs.errors import PreconditionError
from labgraphs.morphism import (LabeledGraphMorphism,
                                automorphism_check_and_compose, compose,
                                identity_morphism, inverse, is_automorphism,
                                is_surjective, verify_morphism)


def fish4_swap():
    """The order-2 automorphism of the four-edge graph: swap v and w, the
    two loops, and the two cross edges; letters fixed."""
    lg = fx.fish4()
    return LabeledGraphMorphism(
        lg, lg,
        {"v": "w", "w": "v"},
        {"e": "h", "h": "e", "f": "g", "g": "f"},
        {"0": "0", "1": "1"})


class TestVerify:
    def test_identity_is_isomorphism(self):
        report = verify_morphism(identity_morphism(fx.fish()))
        assert report.ok and report.isomorphism

    def test_letter_swap_without_moving_edges_fails(self):
        lg = fx.fish()
        m = LabeledGraphMorphism(
            lg, lg,
            {"v": "v", "w": "w"},
            {"e": "e", "f": "f", "g": "g"},
            {"0": "1", "1": "0"})
        report = verify_morphism(m)
        assert not report.ok
        assert report.note == "label compatibility violated"

    def test_partial_map_reported(self):
        lg = fx.fish()
        m = LabeledGraphMorphism(lg, lg, {"v": "v"},
                                 {"e": "e", "f": "f", "g": "g"},
                                 {"0": "0", "1": "1"})
        report = verify_morphism(m)
        assert not report.ok and "total" in report.note

    def test_quotient_projection_is_surjective_morphism(self):
        from labgraphs.action import quotient
        quot = quotient(fx.fdok_action())
        report = verify_morphism(quot.projection)
        assert report.ok
        assert is_surjective(quot.projection)
        assert not report.isomorphism  # collapses fibers

    def test_range_violation_witnessed(self):
        lg = fx.fish4()
        m = LabeledGraphMorphism(
            lg, lg,
            {"v": "v", "w": "w"},
            {"e": "e", "f": "g", "g": "f", "h": "h"},  # cross edges swapped
            {"0": "0", "1": "1"})
        report = verify_morphism(m)
        assert not report.ok
        assert report.note in ("range not preserved", "source not preserved")


class TestAutomorphisms:
    def test_fish4_swap_is_automorphism(self):
        assert is_automorphism(fish4_swap())

    def test_involution_squares_to_identity(self):
        swap = fish4_swap()
        square = automorphism_check_and_compose(swap, swap)
        ident = identity_morphism(fx.fish4())
        assert square.vertex_map == ident.vertex_map
        assert square.edge_map == ident.edge_map
        assert square.alphabet_map == ident.alphabet_map

    def test_identity_is_neutral(self):
        swap = fish4_swap()
        ident = identity_morphism(fx.fish4())
        left = automorphism_check_and_compose(ident, swap)
        right = automorphism_check_and_compose(swap, ident)
        assert left.vertex_map == swap.vertex_map == right.vertex_map
        assert left.edge_map == swap.edge_map == right.edge_map

    def test_composition_associative(self):
        swap = fish4_swap()
        ident = identity_morphism(fx.fish4())
        lhs = automorphism_check_and_compose(
            automorphism_check_and_compose(swap, ident), swap)
        rhs = automorphism_check_and_compose(
            swap, automorphism_check_and_compose(ident, swap))
        assert lhs.vertex_map == rhs.vertex_map
        assert lhs.edge_map == rhs.edge_map
        assert lhs.alphabet_map == rhs.alphabet_map

    def test_inverse_exists_for_every_automorphism(self):
        swap = fish4_swap()
        inv = inverse(swap)
        composite = automorphism_check_and_compose(swap, inv)
        assert composite.vertex_map == {"v": "v", "w": "w"}

    def test_non_automorphism_rejected(self):
        lg = fx.fish()
        bad = LabeledGraphMorphism(
            lg, lg, {"v": "v", "w": "v"},
            {"e": "e", "f": "e", "g": "g"}, {"0": "0", "1": "1"})
        with pytest.raises(PreconditionError):
            automorphism_check_and_compose(bad, identity_morphism(lg))

    def test_functoriality(self):
        # the composite of verified morphisms verifies
        swap = fish4_swap()
        composite = compose(swap, swap)
        assert verify_morphism(composite).ok
