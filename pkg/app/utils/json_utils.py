"""
Exact-integer JSON rendering
Integers become decimal strings so consumers with 53-bit numbers cannot corrupt them
"""

import json
from typing import Any

from pydantic import BaseModel


def stringify_integers(value: Any) -> Any:
    """
    Recursively replace int values (not bools) with decimal strings
    Time Complexity: O(n) in the size of the structure
    """
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, dict):
        return {str(k): stringify_integers(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [stringify_integers(v) for v in value]
    return value


def to_exact_json(payload: Any, indent: int = 2) -> str:
    """Render a model or plain structure; field order is the model order"""
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json")
    return json.dumps(stringify_integers(payload), indent=indent, ensure_ascii=False)


def exact_payload(payload: Any) -> Any:
    """Same conversion as to_exact_json, returned as a JSON-ready structure"""
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json")
    return stringify_integers(payload)


def parse_exact_int(value: Any) -> int:
    """Inverse for a single field: accept a decimal string or an int"""
    if isinstance(value, bool):
        raise TypeError("booleans are not integers here")
    return int(value)
