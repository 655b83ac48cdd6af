"""
Utility functions for common operations
"""

from .exceptions import (
    AppException,
    InputError,
    MathematicalError,
)

from .json_utils import (
    exact_payload,
    parse_exact_int,
    stringify_integers,
    to_exact_json,
)

__all__ = [
    # Exceptions
    "AppException",
    "InputError",
    "MathematicalError",
    # JSON utilities
    "exact_payload",
    "parse_exact_int",
    "stringify_integers",
    "to_exact_json",
]
