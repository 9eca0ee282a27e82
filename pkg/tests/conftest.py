import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hpsets.generators import load  # noqa: E402
from hpsets.subdivision import barycentric_subdivision  # noqa: E402

BASE_SPECS = ["sphere:2", "sphere:3", "torus-grid:3", "klein-grid:3", "rp2-min"]
SURFACES = ["sphere:2", "torus-grid:3", "klein-grid:3", "rp2-min"]

_cache = {}


def complex_for(name):
    """Corpus member by name; ``Sd(x)`` names the barycentric subdivision of ``x``."""
    if name not in _cache:
        if name.startswith("Sd(") and name.endswith(")"):
            _cache[name] = barycentric_subdivision(complex_for(name[3:-1]))[0]
        else:
            _cache[name] = load(name)
    return _cache[name]


ALL_MEMBERS = BASE_SPECS + [f"Sd({s})" for s in SURFACES]


@pytest.fixture
def sphere2():
    return complex_for("sphere:2")


@pytest.fixture
def sphere3():
    return complex_for("sphere:3")


@pytest.fixture
def torus():
    return complex_for("torus-grid:3")


@pytest.fixture
def klein():
    return complex_for("klein-grid:3")


@pytest.fixture
def rp2():
    return complex_for("rp2-min")
