"""Exact rational linear algebra on sparse row-dict matrices.

Matrices are stored as a list of rows, each row a ``{column: value}`` dict
holding only nonzero entries.  Values are ``int`` or ``Fraction``; nothing in
this module ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = int | Fraction
Row = dict[int, Scalar]


def _clean(row: dict[int, Scalar]) -> Row:
    return {k: v for k, v in row.items() if v != 0}


@dataclass(frozen=True, eq=False)
class SparseMatrix:
    nrows: int
    ncols: int
    rows: tuple[Row, ...]

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValueError("row count does not match nrows")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> SparseMatrix:
        return cls(nrows, ncols, tuple({} for _ in range(nrows)))

    @classmethod
    def identity(cls, n: int) -> SparseMatrix:
        return cls(n, n, tuple({i: 1} for i in range(n)))

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[Scalar]], ncols: int | None = None) -> SparseMatrix:
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = tuple(_clean(dict(enumerate(r))) for r in data)
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable[tuple[int, int, Scalar]]) -> SparseMatrix:
        rows: list[dict[int, Scalar]] = [{} for _ in range(nrows)]
        for i, j, v in entries:
            rows[i][j] = rows[i].get(j, 0) + v
        return cls(nrows, ncols, tuple(_clean(r) for r in rows))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def T(self) -> SparseMatrix:
        cols: list[dict[int, Scalar]] = [{} for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                cols[j][i] = v
        return SparseMatrix(self.ncols, self.nrows, tuple(cols))

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def column(self, j: int) -> dict[int, Scalar]:
        return {i: r[j] for i, r in enumerate(self.rows) if j in r}

    def to_dense(self) -> list[list[Scalar]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                out[i][j] = v
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and all(a == b for a, b in zip(self.rows, other.rows))

    def __add__(self, other: SparseMatrix) -> SparseMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        rows = []
        for a, b in zip(self.rows, other.rows):
            r = dict(a)
            for j, v in b.items():
                r[j] = r.get(j, 0) + v
            rows.append(_clean(r))
        return SparseMatrix(self.nrows, self.ncols, tuple(rows))

    def __matmul__(self, other):
        if isinstance(other, SparseMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            rows = []
            for row in self.rows:
                acc: dict[int, Scalar] = {}
                for k, v in row.items():
                    for j, w in other.rows[k].items():
                        acc[j] = acc.get(j, 0) + v * w
                rows.append(_clean(acc))
            return SparseMatrix(self.nrows, other.ncols, tuple(rows))
        vec = list(other)
        if len(vec) != self.ncols:
            raise ValueError(f"vector of length {len(vec)} does not fit {self.shape}")
        return [sum((v * vec[j] for j, v in row.items()), Fraction(0)) for row in self.rows]


def _reduce(row: dict[int, Scalar], pivot_rows: dict[int, dict[int, Scalar]]) -> None:
    """Subtract pivot rows in place so ``row`` vanishes at every pivot column."""
    hits = [c for c in row if c in pivot_rows]
    for c in hits:
        f = row.get(c, 0)
        if f == 0:
            continue
        for j, v in pivot_rows[c].items():
            nv = row.get(j, 0) - f * v
            if nv == 0:
                row.pop(j, None)
            else:
                row[j] = nv


class Eliminator:
    """Incremental Gauss-Jordan elimination over the rationals.

    Rows are fed one at a time; the pivot rows stay in fully reduced form.
    Only columns below ``limit`` may carry pivots, which lets callers append
    bookkeeping columns (an identity block, a right-hand side) that ride
    along with the row operations.
    """

    def __init__(self, limit: int | None = None):
        self.limit = limit
        self.pivots: dict[int, dict[int, Scalar]] = {}
        self.residual: list[dict[int, Scalar]] = []

    def add(self, row: Row) -> int | None:
        r = {k: Fraction(v) for k, v in row.items() if v != 0}
        _reduce(r, self.pivots)
        lead_candidates = [k for k in r if self.limit is None or k < self.limit]
        if not lead_candidates:
            if r:
                self.residual.append(r)
            return None
        lead = min(lead_candidates)
        inv = 1 / r[lead]
        r = {k: v * inv for k, v in r.items()}
        for prow in self.pivots.values():
            f = prow.get(lead, 0)
            if f:
                for j, v in r.items():
                    nv = prow.get(j, 0) - f * v
                    if nv == 0:
                        prow.pop(j, None)
                    else:
                        prow[j] = nv
        self.pivots[lead] = r
        return lead

    def reduce(self, row: Row) -> dict[int, Fraction]:
        """Remainder of ``row`` modulo the current pivot rows (input untouched)."""
        r = {k: Fraction(v) for k, v in row.items() if v != 0}
        _reduce(r, self.pivots)
        return r

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def echelon_rows(self) -> list[dict[int, Fraction]]:
        return [self.pivots[c] for c in sorted(self.pivots)]


def rref(rows: Iterable[Row]) -> tuple[list[dict[int, Fraction]], list[int]]:
    """Reduced row echelon form of the given rows; returns (rows, pivot columns)."""
    elim = Eliminator()
    for r in rows:
        elim.add(r)
    pivots = sorted(elim.pivots)
    return [elim.pivots[c] for c in pivots], pivots


def rank(m: SparseMatrix) -> int:
    # eliminate along the shorter side
    rows = m.rows if m.nrows <= m.ncols else m.T.rows
    elim = Eliminator()
    for r in rows:
        elim.add(r)
    return elim.rank


def dense(row: dict[int, Scalar], n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for k, v in row.items():
        out[k] = Fraction(v)
    return out


def echelon_basis(vectors: Iterable[Sequence[Scalar]], n: int) -> list[list[Fraction]]:
    """Reduced echelon normal form of the span of ``vectors`` (dense output)."""
    rows, _ = rref(_clean(dict(enumerate(v))) for v in vectors)
    return [dense(r, n) for r in rows]


def nullspace(m: SparseMatrix) -> list[list[Fraction]]:
    """Basis of ``{x : m x = 0}`` in reduced row echelon normal form."""
    rows, pivots = rref(m.rows)
    pivot_set = set(pivots)
    free = [j for j in range(m.ncols) if j not in pivot_set]
    raw = []
    for f in free:
        v: dict[int, Scalar] = {f: Fraction(1)}
        for pc, r in zip(pivots, rows):
            if f in r:
                v[pc] = -r[f]
        raw.append(v)
    basis, _ = rref(raw)
    return [dense(r, m.ncols) for r in basis]


class ConsistentSolver:
    """Solve ``A x = b`` exactly for many right-hand sides.

    A transform ``T`` with ``T A`` in reduced echelon form is recorded once.
    ``solve`` returns the particular solution with every free variable set to
    zero and raises ``ValueError`` when ``b`` is outside the column space.
    """

    def __init__(self, a: SparseMatrix):
        self.shape = a.shape
        n = a.ncols
        elim = Eliminator(limit=n)
        for i, row in enumerate(a.rows):
            aug = dict(row)
            aug[n + i] = 1
            elim.add(aug)
        self._pivot_rows = [
            (c, {k - n: v for k, v in r.items() if k >= n}) for c, r in sorted(elim.pivots.items())
        ]
        self._checks = [{k - n: v for k, v in r.items() if k >= n} for r in elim.residual]

    def solve(self, b: Sequence[Scalar]) -> list[Fraction]:
        m, n = self.shape
        if len(b) != m:
            raise ValueError(f"right-hand side of length {len(b)} does not fit {self.shape}")
        for chk in self._checks:
            if sum((v * b[k] for k, v in chk.items()), Fraction(0)) != 0:
                raise ValueError("inconsistent system")
        x = [Fraction(0)] * n
        for c, t in self._pivot_rows:
            x[c] = sum((v * b[k] for k, v in t.items()), Fraction(0))
        return x
