"""JSON schema validation against the shipped schemas."""

import json
from functools import lru_cache
from importlib import resources

from jsonschema import Draft202012Validator
from jsonschema.exceptions import best_match
from referencing import Registry, Resource

from .errors import SchemaError

SCHEMAS = {"lift": "lift.schema.json", "rep": "rep.schema.json"}


def schema_text(name):
    return resources.files("eulerlab").joinpath("schemas", SCHEMAS[name]).read_text()


@lru_cache(maxsize=None)
def _validator(name):
    docs = {k: json.loads(schema_text(k)) for k in SCHEMAS}
    registry = Registry().with_resources((d["$id"], Resource.from_contents(d)) for d in docs.values())
    return Draft202012Validator(docs[name], registry=registry)


def validate(doc, name):
    """Raise SchemaError at the most relevant failing location, if any."""
    err = best_match(_validator(name).iter_errors(doc))
    if err is not None:
        raise SchemaError(err.message, tuple(err.absolute_path))
