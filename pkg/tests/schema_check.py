"""Minimal structural validator for the shipped JSON schemas.

Supports the subset the schemas use: type, required, properties, items,
enum.  Raises AssertionError with a path on the first violation.
"""

from __future__ import annotations

import json
from pathlib import Path

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "src" / "opalg" / "schemas"

_TYPES = {
    "object": dict,
    "array": list,
    "string": str,
    "integer": int,
    "boolean": bool,
}


def _check(schema, value, path):
    if "enum" in schema:
        assert value in schema["enum"], f"{path}: {value!r} not in {schema['enum']}"
    t = schema.get("type")
    if t is not None:
        expected = _TYPES[t]
        assert isinstance(value, expected) and not (
            expected is int and isinstance(value, bool)
        ), f"{path}: expected {t}, got {type(value).__name__}"
    if t == "object":
        for key in schema.get("required", ()):
            assert key in value, f"{path}: missing required key {key!r}"
        props = schema.get("properties", {})
        for key, sub in props.items():
            if key in value and value[key] is not None:
                _check(sub, value[key], f"{path}.{key}")
    if t == "array":
        sub = schema.get("items")
        if sub:
            for i, item in enumerate(value):
                _check(sub, item, f"{path}[{i}]")


def validate(name, payload):
    schema = json.loads((SCHEMA_DIR / f"{name}.schema.json").read_text())
    _check(schema, payload, "$")
