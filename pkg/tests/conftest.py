"""
Shared fixtures for the engine test suite
"""

import sys
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from app.schemas.job import JobSpec  # noqa: E402
from app.services.local_ring import make_ring  # noqa: E402

CORPUS_DIR = PROJECT_ROOT / "corpus"


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size fuzz campaigns (deselect with -m \"not slow\")")


def job(**document) -> JobSpec:
    """JobSpec from keyword arguments; `field_char` maps to the dotted key"""
    if "field_char" in document:
        document["field.char"] = document.pop("field_char")
    return JobSpec.model_validate(document)


@pytest.fixture
def plane():
    return make_ring(["x", "y"])


@pytest.fixture
def line_with_point():
    """k[x, y]/(y^2, xy): a line with an embedded point, not Cohen-Macaulay"""
    return make_ring(["x", "y"], ["y^2", "x*y"])


@pytest.fixture
def cusp():
    return make_ring(["a", "b"], ["b^2 - a^3"])


@pytest.fixture
def semigroup_456():
    """k[t^4, t^5, t^6] presented as k[a, b, c]/(b^2 - ac, a^3 - c^2)"""
    return make_ring(["a", "b", "c"], ["b^2 - a*c", "a^3 - c^2"])


@pytest.fixture
def corpus_dir():
    return CORPUS_DIR
