from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from hpsets.linalg import ConsistentSolver, Eliminator, SparseMatrix, echelon_basis, nullspace, rank

small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def matrices(draw, max_rows=8, max_cols=8):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    # mostly zeros so rank deficiency is common
    entry = st.one_of(st.just(Fraction(0)), st.just(Fraction(0)), small_rationals)
    return [[draw(entry) for _ in range(c)] for _ in range(r)]


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_rank_and_nullspace_match_dense_oracle(data):
    m = SparseMatrix.from_dense(data)
    assert rank(m) == oracle.rank(data)
    assert nullspace(m) == oracle.kernel(data)


@given(matrices())
@settings(max_examples=100, deadline=None)
def test_consistent_solver(data):
    m = SparseMatrix.from_dense(data)
    solver = ConsistentSolver(m)
    # a right-hand side in the column space
    x0 = [Fraction(i + 1, 2) for i in range(m.ncols)]
    b = oracle.matvec(data, x0)
    x = solver.solve(b)
    assert oracle.matvec(data, x) == b


def test_consistent_solver_rejects_inconsistent():
    m = SparseMatrix.from_dense([[1, 1], [2, 2]])
    with pytest.raises(ValueError):
        ConsistentSolver(m).solve([1, 0])


def test_sparse_products_and_transpose():
    a = SparseMatrix.from_dense([[1, 0, 2], [0, -1, 0]])
    b = SparseMatrix.from_dense([[1], [1], [1]])
    assert (a @ b).to_dense() == [[3], [-1]]
    assert a.T.to_dense() == oracle.transpose(a.to_dense())
    assert a @ [1, 1, 1] == [3, -1]
    assert (a + a).to_dense() == [[2, 0, 4], [0, -2, 0]]
    with pytest.raises(ValueError):
        a @ a


def test_echelon_basis_is_normal_form():
    vecs = [[2, 4, 0], [1, 2, 1], [3, 6, 1]]
    assert echelon_basis(vecs, 3) == [[1, 2, 0], [0, 0, 1]]


def test_eliminator_reduce_leaves_input():
    e = Eliminator()
    e.add({0: 1, 1: 1})
    row = {0: 2, 1: 3}
    assert e.reduce(row) == {1: 1}
    assert row == {0: 2, 1: 3}


def test_zero_and_identity():
    assert nullspace(SparseMatrix.zeros(2, 3)) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert nullspace(SparseMatrix.identity(3)) == []
