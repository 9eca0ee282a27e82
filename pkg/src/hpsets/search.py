"""Search for combinations of flag p-sets that are harmonic on every corpus member.

A candidate is ``eta = sum_I a_I eta_I``.  Harmonicity on a member is linear
in ``a``, so stacking the closedness and dual-closedness conditions of all
members gives one matrix ``C`` whose nullspace is the answer.  Optionally the
classes are also required to survive one barycentric subdivision, which adds
more linear rows (pairings against transported cycles).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .cochain import Cochain, pairing
from .complex import Orientation, SimplicialComplex, boundary_matrix, orient, validate_manifold
from .errors import (
    DimensionMismatch,
    EmptyCorpus,
    NotOrientable,
    SignedRequiresOrientation,
    ValidationFailed,
)
from .flags import Signature, check_signature, flag_basis_matrix
from .generators import load
from .hodge import homology_basis, is_closed
from .io import format_rational, format_signature
from .linalg import SparseMatrix, nullspace
from .subdivision import SubdivisionChainMap, barycentric_subdivision, push_cycle


@dataclass(frozen=True)
class CorpusMember:
    name: str
    complex: SimplicialComplex
    orientation: Orientation | None

    @property
    def orientable(self) -> bool:
        return self.orientation is not None


@dataclass(frozen=True)
class Corpus:
    members: tuple[CorpusMember, ...]

    def __post_init__(self):
        names = [m.name for m in self.members]
        if len(set(names)) != len(names):
            raise ValueError("corpus member names must be unique")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def make_member(name: str, K: SimplicialComplex) -> CorpusMember:
    report = validate_manifold(K)
    if not report.is_pseudomanifold:
        raise ValidationFailed(f"{name} is not a closed connected pseudomanifold")
    try:
        o = orient(K)
    except NotOrientable:
        o = None
    return CorpusMember(name, K, o)


def build_corpus(specs: Sequence[str]) -> Corpus:
    return Corpus(tuple(make_member(spec, load(spec)) for spec in specs))


@dataclass(frozen=True)
class ConstraintSystem:
    """Stacked linear conditions ``C a = 0``; ``provenance[r]`` says where row r came from.

    Provenance entries are ``(member, condition, index)`` with condition one of
    ``"closed"`` (index = (p+1)-cell), ``"dual-closed"`` (index = (p-1)-cell)
    or ``"subdivision"`` (index = homology cycle).
    """

    p: int
    signatures: tuple[Signature, ...]
    signed: bool
    matrix: SparseMatrix
    provenance: tuple[tuple[str, str, int], ...]
    members: tuple[str, ...]

    def binding_rows(self) -> list[tuple[str, str, int]]:
        return [prov for prov, row in zip(self.provenance, self.matrix.rows) if row]


def _check_request(corpus: Corpus, p: int, signatures, signed: bool) -> tuple[Signature, ...]:
    if len(corpus) == 0:
        raise EmptyCorpus("the corpus has no members")
    for m in corpus:
        if m.complex.dim < p or p < 0:
            raise DimensionMismatch(f"{m.name} has dimension {m.complex.dim} < {p}")
        if signed:
            if m.orientation is None:
                raise SignedRequiresOrientation(f"{m.name} is not orientable")
            if m.complex.dim != p:
                raise SignedRequiresOrientation(f"signed mode needs p = n, but {m.name} has n = {m.complex.dim}")
    return tuple(check_signature(s, p) for s in signatures)


def _member_block(m: CorpusMember, p: int, sigs, signed: bool):
    K = m.complex
    F = flag_basis_matrix(K, p, sigs, m.orientation, signed)
    Fm = SparseMatrix.from_dense(F.rows, ncols=len(sigs))
    rows, prov = [], []
    if p < K.dim:
        closed = boundary_matrix(K, p + 1).T @ Fm
        rows.extend(closed.rows)
        prov.extend((m.name, "closed", i) for i in range(closed.nrows))
    if p > 0:
        dual = boundary_matrix(K, p) @ Fm
        rows.extend(dual.rows)
        prov.extend((m.name, "dual-closed", i) for i in range(dual.nrows))
    return rows, prov


def harmonic_constraint_system(
    corpus: Corpus,
    p: int,
    signatures: Sequence[Sequence[int]],
    signed: bool = False,
    workers: int | None = None,
) -> ConstraintSystem:
    sigs = _check_request(corpus, p, signatures, signed)
    # blocks are assembled concurrently but stacked in member order
    with ThreadPoolExecutor(max_workers=workers) as pool:
        blocks = list(pool.map(lambda m: _member_block(m, p, sigs, signed), corpus.members))
    rows, prov = [], []
    for r, pv in blocks:
        rows.extend(r)
        prov.extend(pv)
    matrix = SparseMatrix(len(rows), len(sigs), tuple(rows))
    return ConstraintSystem(p, sigs, signed, matrix, tuple(prov), tuple(m.name for m in corpus))


@dataclass(frozen=True)
class CoefficientSolution:
    """Basis of admissible coefficient vectors, in reduced echelon form."""

    p: int
    signatures: tuple[Signature, ...]
    signed: bool
    basis: tuple[tuple[Fraction, ...], ...]
    members: tuple[str, ...]
    subdivision_invariant: bool = False

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def as_dict(self) -> dict:
        keys = [format_signature(s) for s in self.signatures]
        return {
            "p": self.p,
            "signed": self.signed,
            "subdivision_invariant": self.subdivision_invariant,
            "corpus": list(self.members),
            "signatures": keys,
            "basis": [{k: format_rational(v) for k, v in zip(keys, vec)} for vec in self.basis],
        }


def solve_coefficients(system: ConstraintSystem) -> CoefficientSolution:
    basis = tuple(tuple(v) for v in nullspace(system.matrix)) if system.signatures else ()
    return CoefficientSolution(system.p, system.signatures, system.signed, basis, system.members)


def evaluate_candidate(
    K: SimplicialComplex,
    a: Sequence,
    signatures: Sequence[Sequence[int]],
    p: int,
    signed: bool = False,
    o: Orientation | None = None,
) -> Cochain:
    """``sum_I a_I eta_I`` on ``K``."""
    if len(a) != len(signatures):
        raise DimensionMismatch("one coefficient per signature is required")
    if signed and o is None:
        o = orient(K)
    F = flag_basis_matrix(K, p, signatures, o, signed)
    coeffs = [Fraction(x) for x in a]
    return Cochain(p, [sum((c * v for c, v in zip(coeffs, row)), Fraction(0)) for row in F.rows])


@lru_cache(maxsize=64)
def subdivide(K: SimplicialComplex) -> tuple[SimplicialComplex, SubdivisionChainMap]:
    return barycentric_subdivision(K)


def transported_orientation(sd: SubdivisionChainMap, o: Orientation) -> Orientation:
    """The orientation of Sd(K) induced by ``o``.

    Not renormalized to start with +1: the two classes can only be compared
    when the subdivision carries the orientation pushed forward from K.
    """
    n = sd.source.dim
    return Orientation(tuple(int(x) for x in sd.matrices[n] @ list(o.signs)))


@dataclass(frozen=True)
class InvarianceReport:
    """Pairings of a candidate on K and on Sd(K) against transported homology cycles.

    ``rows`` holds ``(cycle index, pairing on K, pairing on Sd K, difference)``.
    """

    member: str
    closed_on_k: bool
    closed_on_sd: bool
    rows: tuple[tuple[int, Fraction, Fraction, Fraction], ...] = field(default=())

    @property
    def class_invariant(self) -> bool:
        return self.closed_on_k and self.closed_on_sd and all(r[3] == 0 for r in self.rows)

    def as_dict(self) -> dict:
        return {
            "member": self.member,
            "closed_on_K": self.closed_on_k,
            "closed_on_SdK": self.closed_on_sd,
            "class_invariant": self.class_invariant,
            "pairings": [[i, format_rational(a), format_rational(b), format_rational(d)] for i, a, b, d in self.rows],
        }


def check_subdivision_invariance(
    K: SimplicialComplex,
    a: Sequence,
    signatures: Sequence[Sequence[int]],
    p: int,
    signed: bool = False,
    o: Orientation | None = None,
    name: str = "",
) -> InvarianceReport:
    L, sd = subdivide(K)
    if signed:
        o = orient(K) if o is None else o
        o_sd = transported_orientation(sd, o)
    else:
        o_sd = None
    eta = evaluate_candidate(K, a, signatures, p, signed, o)
    eta_sd = evaluate_candidate(L, a, signatures, p, signed, o_sd)
    closed_k, closed_sd = is_closed(K, eta), is_closed(L, eta_sd)
    if not (closed_k and closed_sd):
        return InvarianceReport(name, closed_k, closed_sd)
    rows = []
    for i, z in enumerate(homology_basis(K, p)):
        on_k = pairing(eta, z)
        on_sd = pairing(eta_sd, push_cycle(sd, z))
        rows.append((i, on_k, on_sd, on_sd - on_k))
    return InvarianceReport(name, True, True, tuple(rows))


def _subdivision_rows(m: CorpusMember, p: int, sigs, signed: bool):
    """Rows ``r`` with ``r . a`` = change of the pairing with cycle z under one subdivision."""
    K = m.complex
    L, sd = subdivide(K)
    o_sd = transported_orientation(sd, m.orientation) if signed else None
    F = flag_basis_matrix(K, p, sigs, m.orientation, signed).columns()
    F_sd = flag_basis_matrix(L, p, sigs, o_sd, signed).columns()
    rows, prov = [], []
    for i, z in enumerate(homology_basis(K, p)):
        z_sd = push_cycle(sd, z)
        row = {j: pairing(cs, z_sd) - pairing(c, z) for j, (c, cs) in enumerate(zip(F, F_sd))}
        rows.append({j: v for j, v in row.items() if v})
        prov.append((m.name, "subdivision", i))
    return rows, prov


@dataclass(frozen=True)
class SearchResult:
    solution: CoefficientSolution
    system: ConstraintSystem
    reports: tuple[tuple[InvarianceReport, ...], ...]

    def as_dict(self) -> dict:
        out = self.solution.as_dict()
        out["constraint_rows"] = self.system.matrix.nrows
        out["binding_rows"] = len(self.system.binding_rows())
        out["reports"] = [[r.as_dict() for r in per_vec] for per_vec in self.reports]
        return out


def search(
    corpus: Corpus,
    p: int,
    signatures: Sequence[Sequence[int]],
    signed: bool = False,
    require_subdivision_invariance: bool = False,
    workers: int | None = None,
) -> SearchResult:
    system = harmonic_constraint_system(corpus, p, signatures, signed, workers)
    sigs = system.signatures
    if require_subdivision_invariance and sigs:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            extra = list(pool.map(lambda m: _subdivision_rows(m, p, sigs, signed), corpus.members))
        rows, prov = list(system.matrix.rows), list(system.provenance)
        for r, pv in extra:
            rows.extend(r)
            prov.extend(pv)
        system = ConstraintSystem(
            p, sigs, signed, SparseMatrix(len(rows), len(sigs), tuple(rows)), tuple(prov), system.members
        )
    solution = solve_coefficients(system)
    if require_subdivision_invariance:
        solution = CoefficientSolution(
            solution.p, solution.signatures, solution.signed, solution.basis, solution.members, True
        )
    reports = tuple(
        tuple(
            check_subdivision_invariance(m.complex, vec, sigs, p, signed, m.orientation, m.name)
            for m in corpus
        )
        for vec in solution.basis
    )
    return SearchResult(solution, system, reports)
