import json

import pytest
from jsonschema import Draft202012Validator

from eulerlab import fixtures
from eulerlab.errors import SchemaError
from eulerlab.lifts import lift_to_json
from eulerlab.validation import SCHEMAS, schema_text, validate

GOOD_LIFTS = [
    {"kind": "rotation", "alpha": 0.3},
    {"kind": "mobius", "matrix": [[2.0, 1.0], [1.0, 1.0]]},
    {"kind": "mobius", "matrix": [[1.0, 0.0], [0.0, 1.0]], "branch": 1},
    {"kind": "compose", "outer": {"kind": "rotation", "alpha": 0.1}, "inner": {"kind": "rotation", "alpha": 0.2}},
]

BAD_LIFTS = [
    {"kind": "rotation"},
    {"kind": "spin", "alpha": 0.3},
    {"kind": "mobius", "matrix": [[1.0, 0.0]]},
    {"kind": "compose", "outer": {"kind": "rotation", "alpha": 0.1}},
    [1, 2],
]


@pytest.mark.parametrize("name", sorted(SCHEMAS))
def test_schemas_are_valid_draft_2020_12(name):
    doc = json.loads(schema_text(name))
    Draft202012Validator.check_schema(doc)
    assert doc["$id"] == f"urn:eulerlab:{name}"


@pytest.mark.parametrize("doc", GOOD_LIFTS)
def test_good_lifts(doc):
    validate(doc, "lift")


@pytest.mark.parametrize("doc", BAD_LIFTS)
def test_bad_lifts(doc):
    with pytest.raises(SchemaError):
        validate(doc, "lift")


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_fixtures_validate(name):
    validate(json.loads(fixtures.fixture_path(name).read_text()), "rep")


def test_serialized_lifts_validate():
    rep = fixtures.build("octagon")
    for lift in rep.lifts.values():
        validate(lift_to_json(lift), "lift")


def test_rep_error_location():
    doc = {"genus": 1, "punctures": 1, "generators": {"a1": {"kind": "rotation", "alpha": "x"}}}
    with pytest.raises(SchemaError) as exc:
        validate(doc, "rep")
    assert exc.value.location[:2] == ("generators", "a1")
    with pytest.raises(SchemaError):
        validate({"genus": 1, "punctures": 1, "generators": {"z1": {"kind": "rotation", "alpha": 0.1}}}, "rep")
    with pytest.raises(SchemaError):
        validate({"genus": 1, "generators": {}}, "rep")
