"""Basic flag-count p-sets.

For a p-cell A and a dimension signature I = (d_1 < ... < d_k) containing p,
``f_I(A)`` counts the chains of cells ``C_1 < C_2 < ... < C_k`` with
``dim C_j = d_j`` and ``C_j = A`` where ``d_j = p``.  Counting strategies
are pluggable through :class:`FlagCounter` so a different definition of the
flag vector of a pair can replace this one.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Protocol, Sequence

from .cochain import Cochain
from .complex import Orientation, SimplicialComplex, is_cycle
from .errors import AnchorMissing, CellNotFound, DimensionMismatch, InvalidRange, NotOrientable
from .io import format_signature

Signature = tuple[int, ...]


def check_signature(sig: Sequence[int], p: int, n: int | None = None) -> Signature:
    sig = tuple(sig)
    if not sig or any(a >= b for a, b in zip(sig, sig[1:])) or sig[0] < 0:
        raise InvalidRange(f"signature {sig} must be a nonempty strictly increasing sequence")
    if n is not None and sig[-1] > n:
        raise InvalidRange(f"signature {sig} exceeds dimension {n}")
    if p not in sig:
        raise AnchorMissing(f"signature {format_signature(sig)} does not contain the anchor {p}")
    return sig


def enumerate_signatures(n: int, p: int, max_len: int) -> list[Signature]:
    """Increasing subsequences of 0..n containing p, ordered by length then lexicographically."""
    if not 0 <= p <= n or max_len < 1:
        raise InvalidRange(f"need 0 <= p <= n and max_len >= 1 (n={n}, p={p}, max_len={max_len})")
    others = [d for d in range(n + 1) if d != p]
    out = []
    for k in range(max_len):
        for extra in combinations(others, k):
            out.append(tuple(sorted(extra + (p,))))
    return sorted(out, key=lambda s: (len(s), s))


class FlagCounter(Protocol):
    def __call__(self, K: SimplicialComplex, p: int, index: int, sig: Signature) -> int: ...


@lru_cache(maxsize=64)
def _cells_above(K: SimplicialComplex) -> tuple:
    """``above[p][i][d]``: indices of d-cells containing p-cell i (d > p)."""
    n = K.dim
    out = []
    for p in range(n + 1):
        level = []
        for i in range(K.f_vector[p]):
            by_dim = {}
            frontier = {i}
            for d in range(p + 1, n + 1):
                frontier = {j for c in frontier for j in K.cofaces[d - 1][c]}
                by_dim[d] = tuple(sorted(frontier))
            level.append(by_dim)
        out.append(tuple(level))
    return tuple(out)


def chains_through_cell(K: SimplicialComplex, p: int, index: int, sig: Signature) -> int:
    """Count chains of cells with dimensions ``sig`` passing through p-cell ``index``."""
    below = [d for d in sig if d < p]
    above = [d for d in sig if d > p]
    above_cells = _cells_above(K)

    def count_below(cell: tuple[int, ...], dims: list[int]) -> int:
        if not dims:
            return 1
        # walk downward: the largest remaining dimension comes next
        d = dims[-1]
        return sum(count_below(face, dims[:-1]) for face in combinations(cell, d + 1))

    def count_above(q: int, i: int, dims: list[int]) -> int:
        if not dims:
            return 1
        d = dims[0]
        return sum(count_above(d, j, dims[1:]) for j in above_cells[q][i][d])

    return count_below(K.cells[p][index], below) * count_above(p, index, above)


def flag_count(
    K: SimplicialComplex,
    cell: Sequence[int],
    sig: Sequence[int],
    counter: FlagCounter = chains_through_cell,
) -> int:
    cell = tuple(cell)
    if cell not in K:
        raise CellNotFound(f"{cell} is not a cell of this complex")
    p = len(cell) - 1
    sig = check_signature(sig, p, K.dim)
    return counter(K, p, K.index(cell), sig)


def flag_pset(
    K: SimplicialComplex, p: int, sig: Sequence[int], counter: FlagCounter = chains_through_cell
) -> Cochain:
    sig = check_signature(sig, p, K.dim)
    return Cochain(p, [counter(K, p, i, sig) for i in range(K.f_vector[p])])


def oriented_flag_pset(
    K: SimplicialComplex,
    o: Orientation | None,
    sig: Sequence[int],
    counter: FlagCounter = chains_through_cell,
) -> Cochain:
    """Top-degree flag p-set with each facet's count multiplied by its orientation sign."""
    n = K.dim
    if o is None:
        raise NotOrientable("an orientation is required for signed flag p-sets")
    if len(o) != K.f_vector[n] or not is_cycle(K, o):
        raise NotOrientable("the supplied signs are not a coherent orientation")
    base = flag_pset(K, n, sig, counter)
    return Cochain(n, [s * v for s, v in zip(o.signs, base.values)])


@dataclass(frozen=True)
class FlagBasisMatrix:
    """Rows are p-cells, columns are signatures; entry (A, I) = f_I(A)."""

    p: int
    signatures: tuple[Signature, ...]
    rows: tuple[tuple[int, ...], ...]
    signed: bool = False

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.signatures))

    def column(self, j: int) -> Cochain:
        return Cochain(self.p, [r[j] for r in self.rows])

    def columns(self) -> list[Cochain]:
        return [self.column(j) for j in range(len(self.signatures))]


def flag_basis_matrix(
    K: SimplicialComplex,
    p: int,
    signatures: Sequence[Sequence[int]],
    o: Orientation | None = None,
    signed: bool = False,
    counter: FlagCounter = chains_through_cell,
) -> FlagBasisMatrix:
    if not 0 <= p <= K.dim:
        raise DimensionMismatch(f"degree {p} outside 0..{K.dim}")
    sigs = tuple(check_signature(s, p, K.dim) for s in signatures)
    if signed:
        if p != K.dim:
            raise DimensionMismatch("signed flag p-sets exist in top degree only")
        cols = [oriented_flag_pset(K, o, s, counter).values for s in sigs]
    else:
        cols = [flag_pset(K, p, s, counter).values for s in sigs]
    rows = tuple(tuple(int(c[i]) for c in cols) for i in range(K.f_vector[p]))
    return FlagBasisMatrix(p, sigs, rows, signed)
