"""Text formats: facet files, cochain (p-set) files, flag signatures, rationals."""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .cochain import Cochain
from .complex import SimplicialComplex
from .errors import FileUnreadable, MalformedFile


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        raise ValueError(f"not a rational: {text!r}")
    value = Fraction(text)
    return value


def parse_facets(text: str, source: str = "<string>") -> list[tuple[int, ...]]:
    facets = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            facets.append(tuple(int(tok) for tok in line.split()))
        except ValueError:
            raise MalformedFile(f"{source}:{lineno}: expected vertex ids, got {line!r}") from None
        if any(v < 0 for v in facets[-1]):
            raise MalformedFile(f"{source}:{lineno}: negative vertex id")
    return facets


def read_facets(path: str | Path) -> list[tuple[int, ...]]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FileUnreadable(f"cannot read {path}: {exc.strerror}") from None
    return parse_facets(text, str(path))


def format_facets(facets: Iterable[Sequence[int]], header: str | None = None) -> str:
    lines = [f"# {header}"] if header else []
    lines.extend(" ".join(str(v) for v in f) for f in facets)
    return "\n".join(lines) + "\n"


def oriented_facets(K: SimplicialComplex, signs: Sequence[int] | None = None) -> list[tuple[int, ...]]:
    """Facets in input labels, vertex order encoding ``signs`` (default: input parity)."""
    signs = K.facet_parity if signs is None else signs
    out = []
    for f, s in zip(K.facets, signs):
        f = tuple(K.labels[v] for v in f)
        if s < 0 and len(f) >= 2:
            f = (f[1], f[0]) + f[2:]
        out.append(f)
    return out


def format_cochain(K: SimplicialComplex, eta: Cochain) -> str:
    lines = [f"pset {eta.dim}"]
    for cell, value in zip(K.cells[eta.dim], eta.values):
        ids = ",".join(str(K.labels[v]) for v in cell)
        lines.append(f"{ids} {format_rational(value)}")
    return "\n".join(lines) + "\n"


def parse_cochain(K: SimplicialComplex, text: str, source: str = "<string>") -> Cochain:
    """Parse a ``pset <p>`` file against ``K``; every p-cell must appear exactly once."""
    lines = [
        (n, ln.strip()) for n, ln in enumerate(text.splitlines(), 1) if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines:
        raise MalformedFile(f"{source}: empty cochain file")
    n0, head = lines[0]
    m = re.fullmatch(r"pset\s+(\d+)", head)
    if not m:
        raise MalformedFile(f"{source}:{n0}: expected header 'pset <p>'")
    p = int(m.group(1))
    if p > K.dim:
        raise MalformedFile(f"{source}: degree {p} exceeds complex dimension {K.dim}")
    relabel = {v: i for i, v in enumerate(K.labels)}
    values: dict[int, Fraction] = {}
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise MalformedFile(f"{source}:{lineno}: expected '<ids> <value>'")
        try:
            ids = [relabel[int(t)] for t in parts[0].split(",")]
            value = parse_rational(parts[1])
        except (KeyError, ValueError):
            raise MalformedFile(f"{source}:{lineno}: bad cell or value in {line!r}") from None
        cell = tuple(sorted(ids))
        if len(cell) != p + 1 or cell not in K:
            raise MalformedFile(f"{source}:{lineno}: {parts[0]} is not a {p}-cell")
        idx = K.index(cell)
        if idx in values:
            raise MalformedFile(f"{source}:{lineno}: duplicate cell {parts[0]}")
        values[idx] = value
    if len(values) != K.f_vector[p]:
        raise MalformedFile(f"{source}: {K.f_vector[p] - len(values)} {p}-cells missing")
    return Cochain(p, [values[i] for i in range(K.f_vector[p])])


def read_cochain(K: SimplicialComplex, path: str | Path) -> Cochain:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FileUnreadable(f"cannot read {path}: {exc.strerror}") from None
    return parse_cochain(K, text, str(path))


_SIG = re.compile(r"\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)")


def parse_signatures(text: str) -> list[tuple[int, ...]]:
    """Parse ``"(1),(0,1),(1,2)"`` into dimension tuples."""
    text = text.strip()
    if not text:
        return []
    out, pos = [], 0
    while pos < len(text):
        m = _SIG.match(text, pos)
        if not m:
            raise ValueError(f"bad signature syntax at {text[pos:]!r}")
        out.append(tuple(int(t) for t in m.group(1).split(",")))
        pos = m.end()
        rest = text[pos:].lstrip()
        if rest.startswith(","):
            rest = rest[1:].lstrip()
        elif rest:
            raise ValueError(f"bad signature syntax at {rest!r}")
        pos = len(text) - len(rest)
    return out


def format_signature(sig: Sequence[int]) -> str:
    return "(" + ",".join(str(d) for d in sig) + ")"
