"""JSON Schemas for the machine-readable CLI output.

Integers that can grow without bound (distances, radicands) are emitted as
decimal strings.
"""

DECIMAL = {"type": "string", "pattern": "^[0-9]+$"}

DIST_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "dcnet dist",
    "type": "object",
    "required": ["p", "radicand", "exact", "approx"],
    "properties": {
        "p": {"type": "integer", "minimum": 1},
        "radicand": DECIMAL,
        "exact": {"type": "string"},
        "approx": {"type": "number", "minimum": 0},
    },
    "additionalProperties": False,
}

_FLAGS = {
    "type": "object",
    "required": ["is_tree", "is_tree_child", "is_normal", "is_regular", "is_dc"],
    "properties": {k: {"type": "boolean"} for k in
                   ("is_tree", "is_tree_child", "is_normal", "is_regular", "is_dc")},
    "additionalProperties": False,
}

BEST_TREE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "dcnet best-tree",
    "type": "object",
    "required": ["class", "min_distance", "minimizers", "evaluated"],
    "properties": {
        "class": {"enum": ["tree", "tree_child", "normal", "any"]},
        "min_distance": DECIMAL,
        "minimizers": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "evaluated": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "keep", "distance", "eligible", "flags"],
                "properties": {
                    "name": {"type": "string"},
                    "keep": {"type": "array", "items": {"type": "string"}},
                    "distance": DECIMAL,
                    "eligible": {"type": "boolean"},
                    "flags": _FLAGS,
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}
