"""Barycentric subdivision and its chain map."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cochain import Chain
from .complex import SimplicialComplex, boundary_matrix, build_complex, permutation_sign
from .errors import DimensionMismatch
from .linalg import SparseMatrix

# an ordered tuple of Sd-vertex ids, i.e. an oriented simplex of Sd(K)
Oriented = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class SubdivisionChainMap:
    """``matrices[p]`` maps p-chains of ``source`` to p-chains of ``target``."""

    source: SimplicialComplex
    target: SimplicialComplex
    matrices: tuple[SparseMatrix, ...]
    offsets: tuple[int, ...]

    def barycenter(self, p: int, i: int) -> int:
        """Vertex of the subdivision sitting at the barycenter of p-cell ``i``."""
        return self.offsets[p] + i

    def generator(self, v: int) -> tuple[int, int]:
        """Inverse of :meth:`barycenter`: the (dimension, index) of the cell behind ``v``."""
        for p in range(len(self.offsets) - 1, -1, -1):
            if v >= self.offsets[p]:
                return p, v - self.offsets[p]
        raise ValueError(v)


def _offsets(K: SimplicialComplex) -> tuple[int, ...]:
    out, acc = [], 0
    for f in K.f_vector:
        out.append(acc)
        acc += f
    return tuple(out)


def subdivided_cells(K: SimplicialComplex) -> list[list[dict[Oriented, int]]]:
    """``result[p][i]``: the oriented simplices subdividing p-cell ``i``.

    Built as the cone from the barycenter over the subdivided boundary, so each
    tuple reads ``(b_A, b_facet, ..., b_vertex)``.
    """
    off = _offsets(K)
    out: list[list[dict[Oriented, int]]] = [[{(off[0] + i,): 1} for i in range(K.f_vector[0])]]
    for p in range(1, K.dim + 1):
        level = []
        for i in range(K.f_vector[p]):
            b = off[p] + i
            chain: dict[Oriented, int] = {}
            for k, face in enumerate(K.faces(p, i)):
                s = -1 if k % 2 else 1
                for t, c in out[p - 1][face].items():
                    key = (b,) + t
                    chain[key] = chain.get(key, 0) + s * c
            level.append({t: c for t, c in chain.items() if c})
        out.append(level)
    return out


def barycentric_subdivision(K: SimplicialComplex) -> tuple[SimplicialComplex, SubdivisionChainMap]:
    """Subdivide ``K`` barycentrically.

    New vertices are numbered by (dimension, index) of their generating cell.
    Facet vertex order of the result transports ``K.facet_parity``, so a
    coherent input orientation stays coherent.
    """
    n = K.dim
    off = _offsets(K)
    pieces = subdivided_cells(K)

    facets = []
    for i, parity in enumerate(K.facet_parity):
        for t, c in pieces[n][i].items():
            s = tuple(sorted(t))
            if n >= 1 and c * parity * permutation_sign(t) < 0:
                s = (s[1], s[0]) + s[2:]
            facets.append(s)
    L = build_complex(facets)

    mats = []
    for p in range(n + 1):
        entries = []
        for i, piece in enumerate(pieces[p]):
            for t, c in piece.items():
                entries.append((L.index(tuple(sorted(t))), i, c * permutation_sign(t)))
        mats.append(SparseMatrix.from_entries(L.f_vector[p], K.f_vector[p], entries))
    return L, SubdivisionChainMap(K, L, tuple(mats), off)


def push_cycle(sd: SubdivisionChainMap, z: Chain | Sequence) -> Chain:
    """Transport a p-chain of K to Sd(K)."""
    values = list(z)
    p = z.dim if isinstance(z, Chain) else _degree_from_length(sd, len(values))
    if p > sd.source.dim or len(values) != sd.source.f_vector[p]:
        raise DimensionMismatch(f"chain of length {len(values)} is not a {p}-chain of the source")
    return Chain(p, sd.matrices[p] @ values)


def _degree_from_length(sd: SubdivisionChainMap, n: int) -> int:
    matches = [p for p, f in enumerate(sd.source.f_vector) if f == n]
    if len(matches) != 1:
        raise DimensionMismatch("degree is ambiguous for a bare vector; pass a Chain")
    return matches[0]


def check_chain_map(sd: SubdivisionChainMap) -> bool:
    """Whether the boundary commutes with subdivision in every degree."""
    for p in range(1, sd.source.dim + 1):
        lhs = boundary_matrix(sd.target, p) @ sd.matrices[p]
        rhs = sd.matrices[p - 1] @ boundary_matrix(sd.source, p)
        if lhs != rhs:
            return False
    return True
