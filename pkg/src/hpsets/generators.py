"""Named triangulations and resolution of corpus specs (``name:arg`` or a path)."""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

from .complex import SimplicialComplex, build_complex
from .errors import FileUnreadable, UnknownGenerator
from .io import parse_facets, read_facets

CORPUS_ENV = "HPSETS_CORPUS_DIR"


def sphere_facets(n: int) -> list[tuple[int, ...]]:
    """Boundary of the (n+1)-simplex, facets ordered as a coherent orientation."""
    if n < 1:
        raise UnknownGenerator(f"sphere:{n} needs n >= 1")
    verts = list(range(n + 2))
    out = []
    for i in verts:
        f = tuple(v for v in verts if v != i)
        if i % 2:
            f = (f[1], f[0]) + f[2:]
        out.append(f)
    return out


def _grid(k: int, twisted: bool) -> list[tuple[int, ...]]:
    def vid(x: int, y: int) -> int:
        if y == k:
            y = 0
            if twisted:
                x = -x
        return (x % k) * k + y

    out = []
    for x in range(k):
        for y in range(k):
            a, b, c, d = vid(x, y), vid(x + 1, y), vid(x + 1, y + 1), vid(x, y + 1)
            out.append((a, b, c))
            out.append((a, c, d))
    return out


def torus_grid_facets(k: int) -> list[tuple[int, ...]]:
    """k x k grid torus, each square split along its diagonal (k >= 3)."""
    if k < 3:
        raise UnknownGenerator(f"torus-grid:{k} needs k >= 3")
    return _grid(k, twisted=False)


def klein_grid_facets(k: int) -> list[tuple[int, ...]]:
    """k x k grid with the top edge glued to the bottom edge reversed (k >= 3)."""
    if k < 3:
        raise UnknownGenerator(f"klein-grid:{k} needs k >= 3")
    return _grid(k, twisted=True)


def rp2_min_facets() -> list[tuple[int, ...]]:
    text = resources.files("hpsets").joinpath("corpus/rp2_min.txt").read_text()
    return parse_facets(text, "rp2_min.txt")


GENERATORS = ("sphere", "torus-grid", "klein-grid", "rp2-min")


def is_generator_spec(spec: str) -> bool:
    return spec == "rp2-min" or (":" in spec and spec.split(":", 1)[0] in GENERATORS)


def generator_facets(spec: str) -> list[tuple[int, ...]]:
    if spec == "rp2-min":
        return rp2_min_facets()
    name, _, arg = spec.partition(":")
    if name not in GENERATORS or name == "rp2-min":
        raise UnknownGenerator(f"unknown generator {spec!r}")
    try:
        k = int(arg)
    except ValueError:
        raise UnknownGenerator(f"generator {name} needs an integer argument, got {arg!r}") from None
    if name == "sphere":
        return sphere_facets(k)
    if name == "torus-grid":
        return torus_grid_facets(k)
    return klein_grid_facets(k)


def find_file(spec: str) -> Path:
    """Locate a facet file, trying ``$HPSETS_CORPUS_DIR`` entries first."""
    path = Path(spec)
    candidates = []
    env = os.environ.get(CORPUS_ENV)
    if env and not path.is_absolute():
        candidates.extend(Path(d) / path for d in env.split(os.pathsep) if d)
    candidates.append(path)
    for c in candidates:
        if c.is_file():
            return c
    raise FileUnreadable(f"no facet file {spec!r}")


def load(spec: str) -> SimplicialComplex:
    """Build the complex named by a generator spec or facet file path."""
    if is_generator_spec(spec):
        return build_complex(generator_facets(spec))
    if ":" in spec and not Path(spec).exists():
        raise UnknownGenerator(f"unknown generator {spec!r}")
    return build_complex(read_facets(find_file(spec)))
