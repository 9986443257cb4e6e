import dataclasses
import json

import pytest
from hypothesis import given, settings

from agasp import INFINITE, Assignment, Instance, SolveReport, project
from agasp.formats import (
    DocumentSemanticError,
    DocumentSyntaxError,
    InstanceDocument,
    SchemaVersionError,
    assignment_to_data,
    format_report,
    parse_assignment,
    parse_instance,
    parse_instance_document,
    parse_scheduling,
    parse_x3c,
    report_to_data,
    serialize_assignment,
    serialize_instance,
    serialize_scheduling,
    serialize_x3c,
)
from agasp.reductions import INFEASIBLE, SchedulingInstance, X3CInstance

from corpus import EXAMPLE_ONE, documents
from strategies import instances


def doc(votes=None, agents=("u", "v"), activities=None):
    data = {
        "schema_version": 1,
        "kind": "instance",
        "agents": list(agents),
        "activities": activities or [{"name": "x", "copies": 1}],
    }
    if votes is not None:
        data["votes"] = votes
    return json.dumps(data)


class TestInstanceDocuments:
    def test_example_one(self):
        inst = parse_instance(EXAMPLE_ONE)
        assert project(inst, 0, 0) == {6, 7, 8, 9}
        assert project(inst, 0, 1) == {3, 4, 5, 6}

    def test_no_votes(self):
        inst = parse_instance(doc())
        assert inst.votes == (frozenset(), frozenset())

    def test_serialized_form(self):
        text = serialize_instance(parse_instance_document(EXAMPLE_ONE))
        data = json.loads(text)
        assert data["votes"]["ann"] == {"a": [{"lo": 6, "hi": 9}], "b": [{"lo": 3, "hi": 6}]}
        assert data["votes"]["p2"] == {}
        assert text.endswith("\n")

    def test_infinite_copies(self):
        d = parse_instance_document(doc(activities=[{"name": "x", "copies": "inf"}]))
        assert d.copies == (INFINITE,)
        assert d.instance.copies == (2,)
        assert '"copies": "inf"' in serialize_instance(d)

    def test_equivalent_activities_labels(self):
        text = doc({"u": {"x": [1], "y": [1]}}, activities=[{"name": "x"}, {"name": "y", "copies": 2}])
        d = parse_instance_document(text)
        assert d.instance.copies == (2,)
        assert d.copy_labels() == ((("x", 1), ("y", 1)),)
        assert d.target_of("y", 1) == (0, 1)

    @pytest.mark.parametrize("text", documents())
    def test_round_trip(self, text):
        first = parse_instance_document(text)
        canonical = serialize_instance(first)
        again = parse_instance_document(canonical)
        assert again == first
        assert serialize_instance(again) == canonical
        assert again.instance == first.instance

    @settings(max_examples=100, deadline=None)
    @given(instances(max_agents=6, max_classes=3))
    def test_from_instance_round_trip(self, inst):
        text = serialize_instance(InstanceDocument.from_instance(inst))
        assert parse_instance(text) == inst


class TestErrors:
    def test_syntax_position(self):
        with pytest.raises(DocumentSyntaxError) as info:
            parse_instance('{\n  "schema_version": 1,\n  oops\n}')
        assert info.value.line == 3
        assert info.value.to_dict()["error"] == "syntax"

    def test_version(self):
        with pytest.raises(SchemaVersionError) as info:
            parse_instance('{"schema_version": 2, "kind": "instance"}')
        assert info.value.to_dict()["error"] == "version"

    @pytest.mark.parametrize(
        "text",
        [
            "[]",
            '{"schema_version": 1, "kind": "x3c", "q": 1, "sets": []}',
            doc(agents=("u", "u")),
            doc(agents=("u", "")),
            doc({"w": {}}),
            doc({"u": {"z": [1]}}),
            doc({"u": {"x": [3]}}),
            doc({"u": {"x": [0]}}),
            doc({"u": {"x": [{"lo": 2, "hi": 1}]}}),
            doc({"u": {"x": [{"lo": 1}]}}),
            doc({"u": {"x": ["1"]}}),
            doc({"u": {"x": [True]}}),
            doc({"u": {"x": 1}}),
            doc({"u": []}),
            doc(activities=[{"name": "x", "copies": 0}]),
            doc(activities=[{"name": "x", "copies": "many"}]),
            doc(activities=[{"name": "x"}, {"name": "x"}]),
            doc(activities=[{"copies": 1}]),
            doc(activities=[{"name": "x", "colour": "red"}]),
            '{"schema_version": 1, "kind": "instance", "agents": [], "activities": [], "extra": 1}',
            '{"schema_version": 1, "kind": "instance", "activities": []}',
        ],
    )
    def test_semantic(self, text):
        with pytest.raises(DocumentSemanticError) as info:
            parse_instance(text)
        assert info.value.to_dict()["error"] == "semantic"


class TestAssignmentDocuments:
    def setup_method(self):
        self.doc = parse_instance_document(
            doc({"u": {"x": [2]}, "v": {"x": [2]}}, agents=("u", "v", "w"),
                activities=[{"name": "x", "copies": 2}])
        )

    def test_round_trip(self):
        a = Assignment.from_groups(3, {(0, 1): [0, 1]})
        text = serialize_assignment(self.doc, a)
        assert parse_assignment(text, self.doc) == a
        data = json.loads(text)
        assert data["groups"] == [{"activity": "x", "copy": 2, "members": ["u", "v"]}]
        assert data["void"] == ["w"]

    def test_unmentioned_are_void(self):
        text = '{"schema_version": 1, "kind": "assignment", "groups": []}'
        assert parse_assignment(text, self.doc) == Assignment.void(3)

    @pytest.mark.parametrize(
        "groups, void",
        [
            ([{"activity": "x", "copy": 1, "members": ["u", "u"]}], []),
            ([{"activity": "x", "copy": 1, "members": ["u"]}], ["u"]),
            ([{"activity": "x", "copy": 3, "members": ["u"]}], []),
            ([{"activity": "y", "copy": 1, "members": ["u"]}], []),
            ([{"activity": "x", "copy": 1, "members": ["z"]}], []),
            ([{"activity": "x", "members": ["u"]}], []),
        ],
    )
    def test_invalid(self, groups, void):
        text = json.dumps({"schema_version": 1, "kind": "assignment", "groups": groups, "void": void})
        with pytest.raises(DocumentSemanticError):
            parse_assignment(text, self.doc)


class TestReductionDocuments:
    def test_x3c(self):
        x = X3CInstance(2, (frozenset({1, 2, 3}), frozenset({4, 5, 6})))
        assert parse_x3c(serialize_x3c(x)) == x

    def test_x3c_invalid(self):
        with pytest.raises(DocumentSemanticError):
            parse_x3c('{"schema_version": 1, "kind": "x3c", "q": 1, "sets": [[1, 2]]}')

    def test_scheduling(self):
        s = SchedulingInstance(((1, 2), (INFEASIBLE, 1)))
        text = serialize_scheduling(s)
        assert '"inf"' in text
        assert parse_scheduling(text) == s

    def test_scheduling_invalid(self):
        with pytest.raises(DocumentSemanticError):
            parse_scheduling('{"schema_version": 1, "kind": "scheduling", "times": [[3]]}')


class TestReports:
    def test_keys_mirror_solve_report(self):
        d = parse_instance_document(doc({"u": {"x": [1]}}))
        a = Assignment.from_groups(2, {(0, 0): [0]})
        r = SolveReport("max-ir", "prop2-greedy", a, 1, checks=("ir",))
        data = report_to_data(d, r)
        assert list(data) == [f.name for f in dataclasses.fields(SolveReport)] == list(r.to_dict())
        assert data["assignment"] == {"groups": [{"activity": "x", "copy": 1, "members": ["u"]}], "void": ["v"]}

    def test_text_report(self):
        d = parse_instance_document(doc())
        text = format_report(d, SolveReport("nash-any", "oracle", None, None, exists=False))
        assert "no assignment satisfies the objective" in text

    def test_assignment_data_sorted(self):
        inst_doc = InstanceDocument.from_instance(
            Instance.from_projections([[{1}, {1}], [{1}, set()]], copies=[1, 1])
        )
        a = Assignment.from_groups(2, {(1, 0): [0], (0, 0): [1]})
        names = [g["activity"] for g in assignment_to_data(inst_doc, a)["groups"]]
        assert names == ["act1", "act2"]
