"""The dual block decomposition of an oriented triangulated manifold.

Dual cells are identified with their primal generators.  Incidence numbers
are not postulated: each dual block ``A*`` is assembled as an oriented chain
in the barycentric subdivision (the simplices ``b_A < b_C < ... < b_F`` over
all flags of cells above ``A``), oriented so that ``A`` followed by ``A*``
gives the orientation of the manifold.  ``[B* : A*]`` is then read off the
boundary of the chain ``B*``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cochain import Cochain
from .complex import (
    Orientation,
    SimplicialComplex,
    boundary_matrix,
    orient,
    permutation_sign,
    validate_manifold,
)
from .errors import DimensionMismatch, NotOrientable, NotPseudomanifold
from .linalg import SparseMatrix
from .subdivision import subdivided_cells

Oriented = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class DualComplex:
    """Dual blocks of ``base``; ``incidence[p]`` holds ``[B* : A*]``.

    ``incidence[p]`` has one row per (p-1)-cell ``B`` and one column per
    p-cell ``A`` of the base complex (defined for ``1 <= p <= n``); its
    transpose is the boundary map from dual (n-p+1)-cells to dual (n-p)-cells.
    """

    base: SimplicialComplex
    orientation: Orientation
    incidence: tuple[SparseMatrix | None, ...]
    blocks: tuple[tuple[dict[Oriented, int], ...], ...]

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def f_vector(self) -> tuple[int, ...]:
        """Counts of dual cells by dual dimension 0..n."""
        return tuple(reversed(self.base.f_vector))

    def boundary(self, q: int) -> SparseMatrix:
        """Boundary from dual q-cells to dual (q-1)-cells (1 <= q <= n).

        Rows are the dual (q-1)-cells, so this is the transpose of
        ``incidence[n - q + 1]``.
        """
        return self.incidence[self.dim - q + 1].T

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * f for q, f in enumerate(self.f_vector))


@dataclass(frozen=True)
class DualCochain:
    """An (n-p)-set on the dual blocks, keyed by the primal p-cell generating each block."""

    dim: int
    generator_dim: int
    values: tuple

    def __getitem__(self, i: int):
        return self.values[i]


def _ordered_orientation(chain_signs: dict[Oriented, int], t: Oriented) -> int:
    """Sign of the ordered simplex ``t`` within an oriented chain (0 when absent)."""
    c = chain_signs.get(tuple(sorted(t)), 0)
    return c * permutation_sign(t)


def _normalize(chain: dict[Oriented, int]) -> dict[Oriented, int]:
    out: dict[Oriented, int] = {}
    for t, c in chain.items():
        key = tuple(sorted(t))
        out[key] = out.get(key, 0) + c * permutation_sign(t)
    return {k: v for k, v in out.items() if v}


def _upper_flags(K: SimplicialComplex, p: int, i: int) -> list[list[tuple[int, int]]]:
    """All flags (p, i) < (p+1, j) < ... < (n, f) of cells above p-cell ``i``."""
    if p == K.dim:
        return [[(p, i)]]
    out = []
    for j in K.cofaces[p][i]:
        for rest in _upper_flags(K, p + 1, j):
            out.append([(p, i)] + rest)
    return out


def dual_complex(K: SimplicialComplex, o: Orientation | None = None) -> DualComplex:
    report = validate_manifold(K)
    if not report.is_pseudomanifold:
        raise NotPseudomanifold("dual blocks need a closed connected pseudomanifold")
    if o is None:
        o = orient(K)
    n = K.dim
    if len(o) != K.f_vector[n] or boundary_matrix(K, n) @ list(o.signs) != [0] * K.f_vector[n - 1]:
        raise NotOrientable("the supplied signs are not a coherent orientation")

    off = [0]
    for f in K.f_vector[:-1]:
        off.append(off[-1] + f)

    def bary(p: int, i: int) -> int:
        return off[p] + i

    pieces = subdivided_cells(K)
    # fundamental cycle of the manifold, subdivided
    fundamental: dict[Oriented, int] = {}
    for f, s in enumerate(o.signs):
        for t, c in _normalize(pieces[n][f]).items():
            fundamental[t] = fundamental.get(t, 0) + s * c

    blocks: list[list[dict[Oriented, int]]] = []
    for p in range(n + 1):
        level = []
        for i in range(K.f_vector[p]):
            primal = _normalize(pieces[p][i])
            block: dict[Oriented, int] = {}
            for flag in _upper_flags(K, p, i):
                dual_t = tuple(bary(q, j) for q, j in flag)
                key = tuple(sorted(dual_t))
                signs = set()
                # every subdivided piece of A through b_A must induce the same sign
                for a_t in primal:
                    if bary(p, i) not in a_t:
                        continue
                    a_ord = (bary(p, i),) + tuple(v for v in a_t if v != bary(p, i))
                    full = a_ord + dual_t[1:]
                    signs.add(_ordered_orientation(fundamental, full) * _ordered_orientation(primal, a_ord))
                if len(signs) != 1 or 0 in signs:
                    raise NotPseudomanifold(f"dual block of {K.cells[p][i]} is not coherently oriented")
                block[key] = signs.pop() * permutation_sign(dual_t)
            level.append(block)
        blocks.append(level)

    incidence: list[SparseMatrix | None] = [None]
    for p in range(1, n + 1):
        # [B* : A*] for B a (p-1)-cell: boundary of the chain B*, split among the blocks A*
        owner = {}
        for a in range(K.f_vector[p]):
            for t, c in blocks[p][a].items():
                owner[t] = (a, c)
        entries = []
        for b in range(K.f_vector[p - 1]):
            bnd: dict[Oriented, int] = {}
            for t, c in blocks[p - 1][b].items():
                for k in range(len(t)):
                    face = t[:k] + t[k + 1 :]
                    bnd[face] = bnd.get(face, 0) + (-1) ** k * c
            coeff: dict[int, int] = {}
            for face, c in bnd.items():
                if c == 0:
                    continue
                if face not in owner:
                    raise NotPseudomanifold("dual block boundary leaves the dual skeleton")
                a, s = owner[face]
                val = c * s
                if coeff.setdefault(a, val) != val:
                    raise NotPseudomanifold("dual block boundary is not a sum of blocks")
            entries.extend((b, a, v) for a, v in coeff.items())
        incidence.append(SparseMatrix.from_entries(K.f_vector[p - 1], K.f_vector[p], entries))
    return DualComplex(K, o, tuple(incidence), tuple(tuple(level) for level in blocks))


def dualize(D: DualComplex, eta: Cochain) -> DualCochain:
    if eta.dim > D.dim or len(eta) != D.base.f_vector[eta.dim]:
        raise DimensionMismatch("cochain does not live on the base complex")
    return DualCochain(D.dim - eta.dim, eta.dim, eta.values)


def undualize(D: DualComplex, eta_star: DualCochain) -> Cochain:
    """Read a dual (n-p)-set back as the p-set it came from (A** = A)."""
    if eta_star.dim + eta_star.generator_dim != D.dim:
        raise DimensionMismatch("dual cochain does not match this dual complex")
    return Cochain(eta_star.generator_dim, eta_star.values)


def is_dual_closed(D: DualComplex, eta: Cochain) -> bool:
    """Closedness of the dual set: for every (p-1)-cell B, sum of [B*:A*] eta(A) vanishes."""
    p = eta.dim
    if p > D.dim or len(eta) != D.base.f_vector[p]:
        raise DimensionMismatch("cochain does not live on the base complex")
    if p == 0:
        return True
    return not any(D.incidence[p] @ list(eta.values))


def dual_closed_via_transpose(K: SimplicialComplex, eta: Cochain) -> bool:
    """The same condition as :func:`is_dual_closed`, written as ``d_{p-1}^T eta = 0``."""
    p = eta.dim
    if p == 0:
        return True
    return not any(_boundary(K, p) @ list(eta.values))


@lru_cache(maxsize=256)
def _boundary(K: SimplicialComplex, p: int) -> SparseMatrix:
    return boundary_matrix(K, p)
