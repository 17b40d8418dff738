"""Deterministic JSON output."""
import json


def canonical_json(obj) -> str:
    """Sorted keys, no whitespace: byte-identical for equal values."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def pretty_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)
