"""Harmonic p-sets: closedness, the combinatorial Laplacian, projection, Betti numbers.

Everything here is exact over the rationals.  The inner product on p-sets is
the unit-weight one, so the dual-closedness condition is ``d_{p-1}^T eta = 0``
and the harmonic p-sets are exactly the kernel of

    Delta_p = d_p^T d_p + d_{p-1} d_{p-1}^T.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cochain import Chain, Cochain, pairing
from .complex import Orientation, SimplicialComplex, boundary_matrix
from .duality import dual_closed_via_transpose, dual_complex, is_dual_closed
from .errors import DimensionMismatch, DimensionOutOfRange, NotClosed
from .linalg import ConsistentSolver, Eliminator, SparseMatrix, dense, echelon_basis, nullspace, rank

__all__ = [
    "HarmonicBasis",
    "betti",
    "betti_numbers",
    "coboundary",
    "harmonic_basis",
    "harmonic_projection",
    "homology_basis",
    "is_closed",
    "is_harmonic",
    "laplacian",
    "pairing",
]


@lru_cache(maxsize=512)
def _boundary(K: SimplicialComplex, p: int) -> SparseMatrix:
    return boundary_matrix(K, p)


@lru_cache(maxsize=512)
def _boundary_rank(K: SimplicialComplex, p: int) -> int:
    if p < 1 or p > K.dim:
        return 0
    return rank(_boundary(K, p))


def _check(K: SimplicialComplex, eta: Cochain) -> None:
    if not 0 <= eta.dim <= K.dim or len(eta) != K.f_vector[eta.dim]:
        raise DimensionMismatch(f"{eta.dim}-set of length {len(eta)} does not live on {K!r}")


def coboundary(K: SimplicialComplex, p: int) -> SparseMatrix:
    """``d_p``: p-sets to (p+1)-sets, shape ``(f_{p+1}, f_p)``."""
    if not 0 <= p < K.dim:
        raise DimensionOutOfRange(f"coboundary needs 0 <= p < {K.dim}, got {p}")
    return _boundary(K, p + 1).T


def is_closed(K: SimplicialComplex, eta: Cochain) -> bool:
    _check(K, eta)
    if eta.dim == K.dim:
        return True
    # (d_p eta)(B) = eta evaluated on the boundary of B
    return not any(_boundary(K, eta.dim + 1).T @ list(eta.values))


def is_harmonic(
    K: SimplicialComplex,
    eta: Cochain,
    o: Orientation | None = None,
    explicit_dual: bool = False,
) -> bool:
    """Closed, and closed on the dual decomposition.

    With ``explicit_dual`` the dual condition is evaluated on the dual block
    complex built from ``o``; otherwise the transpose form is used.
    """
    _check(K, eta)
    if not is_closed(K, eta):
        return False
    if explicit_dual:
        return is_dual_closed(dual_complex(K, o), eta)
    return dual_closed_via_transpose(K, eta)


@lru_cache(maxsize=256)
def laplacian(K: SimplicialComplex, p: int) -> SparseMatrix:
    if not 0 <= p <= K.dim:
        raise DimensionOutOfRange(f"laplacian needs 0 <= p <= {K.dim}, got {p}")
    f = K.f_vector[p]
    out = SparseMatrix.zeros(f, f)
    if p < K.dim:
        d = _boundary(K, p + 1).T
        out = out + d.T @ d
    if p > 0:
        d = _boundary(K, p).T
        out = out + d @ d.T
    return out


@dataclass(frozen=True)
class HarmonicBasis:
    dim: int
    basis: tuple[Cochain, ...]

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __getitem__(self, i: int) -> Cochain:
        return self.basis[i]


@lru_cache(maxsize=256)
def harmonic_basis(K: SimplicialComplex, p: int) -> HarmonicBasis:
    """Kernel of the Laplacian in reduced echelon form over the lexicographic cell order."""
    vecs = nullspace(laplacian(K, p))
    return HarmonicBasis(p, tuple(Cochain(p, v) for v in vecs))


@lru_cache(maxsize=256)
def _normal_solver(K: SimplicialComplex, p: int) -> tuple[SparseMatrix, ConsistentSolver]:
    d = coboundary(K, p - 1)
    return d, ConsistentSolver(d.T @ d)


def harmonic_projection(K: SimplicialComplex, eta: Cochain) -> Cochain:
    """The harmonic p-set cohomologous to the closed p-set ``eta``.

    Solves ``d^T d beta = d^T eta`` exactly (``d = d_{p-1}``) and returns
    ``eta - d beta``.  The system is always consistent; which solution is
    picked does not matter since ``d beta`` is unique.
    """
    _check(K, eta)
    if not is_closed(K, eta):
        raise NotClosed(f"{eta.dim}-set is not closed")
    if eta.dim == 0:
        return eta
    d, solver = _normal_solver(K, eta.dim)
    beta = solver.solve(d.T @ list(eta.values))
    return eta - Cochain(eta.dim, d @ beta)


def betti(K: SimplicialComplex, p: int) -> int:
    if not 0 <= p <= K.dim:
        raise DimensionOutOfRange(f"betti needs 0 <= p <= {K.dim}, got {p}")
    return K.f_vector[p] - _boundary_rank(K, p) - _boundary_rank(K, p + 1)


def betti_numbers(K: SimplicialComplex) -> tuple[int, ...]:
    return tuple(betti(K, p) for p in range(K.dim + 1))


@lru_cache(maxsize=256)
def homology_basis(K: SimplicialComplex, p: int) -> tuple[Chain, ...]:
    """Cycles whose classes form a basis of rational p-homology.

    Kernel vectors of the boundary, reduced against the echelon form of the
    boundaries, then put in echelon form themselves.
    """
    if not 0 <= p <= K.dim:
        raise DimensionOutOfRange(f"homology_basis needs 0 <= p <= {K.dim}, got {p}")
    f = K.f_vector[p]
    if p == 0:
        cycles = [[Fraction(int(i == j)) for j in range(f)] for i in range(f)]
    else:
        cycles = nullspace(_boundary(K, p))
    boundaries = Eliminator()
    if p < K.dim:
        for col in _boundary(K, p + 1).T.rows:
            boundaries.add(col)
    # z minus a boundary vanishes at every pivot of the boundary space, so the
    # reduced cycles span a complement of the boundaries inside the cycles
    out = [dense(boundaries.reduce(dict(enumerate(z))), f) for z in cycles]
    basis = echelon_basis(out, f)
    return tuple(Chain(p, v) for v in basis)
