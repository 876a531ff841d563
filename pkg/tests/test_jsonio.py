"""Strict document parsing and canonical serialization."""

import random

import pytest

from labgraphs import fixtures as fx
from labgraphs import jsonio
from labgraphs.errors import ParseError, SchemaError
from labgraphs.groups import CyclicGroup, Window
from labgraphs.gross_tucker import SectionPack


class TestGraphDocuments:
    def test_fixture_round_trips_byte_identically(self):
        text = jsonio.dumps(jsonio.graph_to_json(fx.fish()))
        kind, lg = jsonio.parse_text(text)
        assert kind == "graph" and lg == fx.fish()
        assert jsonio.dumps(jsonio.graph_to_json(lg)) == text

    def test_unknown_vertex_reference(self):
        doc = jsonio.graph_to_json(fx.fish())
        doc["edges"][0]["src"] = "nope"
        with pytest.raises(SchemaError) as info:
            jsonio.graph_from_json(doc)
        assert info.value.path == "$.edges[0].src"

    def test_unknown_field_rejected_with_location(self):
        doc = jsonio.graph_to_json(fx.fish())
        doc["color"] = "blue"
        with pytest.raises(SchemaError) as info:
            jsonio.graph_from_json(doc)
        assert "color" in info.value.path

    def test_parse_error_carries_line_and_column(self):
        with pytest.raises(ParseError) as info:
            jsonio.parse_text('{"format_version": 1,,}')
        assert info.value.line == 1 and info.value.column > 1

    def test_version_checked(self):
        doc = jsonio.graph_to_json(fx.fish())
        doc["format_version"] = 2
        with pytest.raises(SchemaError):
            jsonio.graph_from_json(doc)

    def test_alphabet_preserves_declared_extra_letters(self):
        doc = jsonio.graph_to_json(fx.fish())
        doc["alphabet"] = ["0", "1", "2"]
        lg = jsonio.graph_from_json(doc)
        assert lg.alphabet == ("0", "1")
        assert lg.dropped_letters == ("2",)
        assert jsonio.graph_to_json(lg)["alphabet"] == ["0", "1", "2"]


class TestSkewSpecDocuments:
    def test_skewz_round_trip(self):
        text = jsonio.dumps(jsonio.skew_spec_to_json(fx.skewz_spec()))
        kind, spec = jsonio.parse_text(text)
        assert kind == "skew-spec"
        assert spec.base == fx.fish()
        assert dict(spec.c) == {"e": 1, "f": 1, "g": 1}
        assert dict(spec.d) == {"e": 0, "f": 0, "g": 0}
        assert jsonio.dumps(jsonio.skew_spec_to_json(spec)) == text

    def test_missing_cocycle_entry(self):
        doc = jsonio.skew_spec_to_json(fx.skewz_spec())
        del doc["c"]["e"]
        with pytest.raises(SchemaError) as info:
            jsonio.skew_spec_from_json(doc)
        assert info.value.path == "$.c"

    def test_bad_element_type(self):
        doc = jsonio.skew_spec_to_json(fx.skewz_spec())
        doc["c"]["e"] = "one"
        with pytest.raises(SchemaError):
            jsonio.skew_spec_from_json(doc)


class TestActionDocuments:
    def test_translation_document(self):
        doc = jsonio.action_to_json(
            jsonio.ActionDocument(fx.skewz_spec().group,
                                  translation=fx.skewz_spec()))
        kind, parsed = jsonio.parse_text(jsonio.dumps(doc))
        assert kind == "action"
        action = parsed.instantiate(Window(0, 3))
        assert action.graph.graph.has_edge("(e,0)")

    def test_window_required_for_integer_translation(self):
        doc = jsonio.action_to_json(
            jsonio.ActionDocument(fx.skewz_spec().group,
                                  translation=fx.skewz_spec()))
        _, parsed = jsonio.parse_text(jsonio.dumps(doc))
        from labgraphs.errors import PreconditionError
        with pytest.raises(PreconditionError):
            parsed.instantiate(None)

    def test_elements_document_round_trip(self):
        finite = fx.fdok_action().as_finite_action()
        doc = jsonio.ActionDocument(
            finite.group, graph=finite.graph,
            elements=tuple(sorted(finite.maps.items())))
        text = jsonio.dumps(jsonio.action_to_json(doc))
        _, parsed = jsonio.parse_text(text)
        action = parsed.instantiate(None)
        from labgraphs.action import verify_action
        assert verify_action(action).ok
        assert jsonio.dumps(jsonio.action_to_json(doc)) == text

    def test_generators_document(self):
        from helpers import fish4_swap_action
        swap = fish4_swap_action().maps[1]
        doc = jsonio.ActionDocument(CyclicGroup(2), graph=fx.fish4(),
                                    generators=(swap,))
        text = jsonio.dumps(jsonio.action_to_json(doc))
        _, parsed = jsonio.parse_text(text)
        action = parsed.instantiate(None)
        from labgraphs.action import verify_action
        assert verify_action(action).ok

    def test_exactly_one_form(self):
        doc = jsonio.action_to_json(
            jsonio.ActionDocument(fx.skewz_spec().group,
                                  translation=fx.skewz_spec()))
        doc["elements"] = []
        with pytest.raises(SchemaError):
            jsonio.action_from_json(doc)


class TestSectionDocuments:
    def test_round_trip(self):
        pack = SectionPack({"v": "(v,0)", "w": "(w,2)"},
                           {"0": "(0,0)", "1": "(1,0)"},
                           {"e": "(e,0)"})
        text = jsonio.dumps(jsonio.sections_to_json(pack))
        kind, parsed = jsonio.parse_text(text)
        assert kind == "section-pack"
        assert parsed.eta0 == dict(pack.eta0)
        assert parsed.eta1 == dict(pack.eta1)
        assert jsonio.dumps(jsonio.sections_to_json(parsed)) == text

    def test_eta1_optional(self):
        pack = SectionPack({"v": "(v,0)"}, {"0": "(0,0)"})
        doc = jsonio.sections_to_json(pack)
        assert "eta1" not in doc
        _, parsed = jsonio.parse_text(jsonio.dumps(doc))
        assert parsed.eta1 is None


class TestFixtureFiles:
    @pytest.mark.parametrize("name", [
        "fish.json", "fish4.json", "chain3.json", "skewz.json", "nofd.json",
        "fdok.json", "gt510-action.json", "gt510-sections.json",
        "fdok-action.json"])
    def test_checked_in_fixture_is_canonical(self, name):
        with open(f"fixtures/{name}", "r", encoding="utf-8") as fh:
            text = fh.read()
        kind, obj = jsonio.parse_text(text)
        serializer = {
            "graph": jsonio.graph_to_json,
            "skew-spec": jsonio.skew_spec_to_json,
            "section-pack": jsonio.sections_to_json,
            "action": lambda doc: jsonio.action_to_json(doc),
        }[kind]
        assert jsonio.dumps(serializer(obj)) == text


class TestRandomDocuments:
    def test_five_hundred_random_documents_round_trip(self):
        rng = random.Random(500)
        for i in range(500):
            pick = i % 4
            if pick == 0:
                lg = fx.random_labeled_graph(rng)
                doc = jsonio.graph_to_json(lg)
                _, parsed = jsonio.parse_text(jsonio.dumps(doc))
                assert parsed == lg
            elif pick == 1:
                action = fx.random_translation_action(rng, bool(i % 2))
                spec = action.skew.spec
                doc = jsonio.skew_spec_to_json(spec)
                _, parsed = jsonio.parse_text(jsonio.dumps(doc))
                assert parsed.base == spec.base
                assert dict(parsed.c) == dict(spec.c)
                assert dict(parsed.d) == dict(spec.d)
            elif pick == 2:
                finite = fx.anonymize_action(
                    fx.random_translation_action(rng, True), rng)
                doc = jsonio.ActionDocument(
                    finite.group, graph=finite.graph,
                    elements=tuple(sorted(finite.maps.items())))
                text = jsonio.dumps(jsonio.action_to_json(doc))
                _, parsed = jsonio.parse_text(text)
                rebuilt = parsed.instantiate(None)
                assert rebuilt.maps == finite.maps
            else:
                lg = fx.random_valid_labeled_graph(rng)
                eta0 = {v: v for v in lg.vertices}
                etaA = {a: a for a in lg.alphabet}
                pack = SectionPack(eta0, etaA)
                text = jsonio.dumps(jsonio.sections_to_json(pack))
                _, parsed = jsonio.parse_text(text)
                assert parsed.eta0 == eta0 and parsed.etaA == etaA
