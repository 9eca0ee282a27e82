import random
from fractions import Fraction

import pytest

from conftest import complex_for
from hpsets.cochain import Cochain
from hpsets.complex import boundary_matrix, build_complex, euler_characteristic, orient
from hpsets.duality import (
    dual_closed_via_transpose,
    dual_complex,
    dualize,
    is_dual_closed,
    undualize,
)
from hpsets.errors import DimensionMismatch, NotOrientable, NotPseudomanifold
from hpsets.hodge import coboundary, harmonic_basis, harmonic_projection, is_closed
from hpsets.linalg import nullspace

ORIENTABLE = ["sphere:2", "sphere:3", "torus-grid:3", "Sd(sphere:2)", "Sd(torus-grid:3)"]


def test_dual_counts_sphere(sphere2):
    D = dual_complex(sphere2)
    assert D.f_vector == (4, 6, 4)
    assert len(D.blocks[2]) == 4
    # dual of a triangle is a single dual vertex
    assert all(len(b) == 1 for b in D.blocks[2])


def test_dual_counts_torus(torus):
    assert dual_complex(torus).f_vector == (18, 27, 9)


@pytest.mark.parametrize("name", ORIENTABLE)
def test_dual_incidence_structure(name):
    K = complex_for(name)
    D = dual_complex(K)
    n = K.dim
    for p in range(1, n + 1):
        inc = D.incidence[p]
        prim = boundary_matrix(K, p)
        assert inc.shape == prim.shape
        for r_dual, r_prim in zip(inc.rows, prim.rows):
            # nonzero exactly on faces, with unit magnitude
            assert set(r_dual) == set(r_prim)
            assert all(abs(v) == 1 for v in r_dual.values())
    for q in range(2, n + 1):
        assert (D.boundary(q - 1) @ D.boundary(q)).is_zero()
    assert D.euler_characteristic() == (-1) ** n * euler_characteristic(K)


@pytest.mark.parametrize("name", ORIENTABLE)
def test_dual_incidence_is_primal_incidence_up_to_global_sign(name):
    # the product orientation contributes (-1)^p in degree p and nothing cell-dependent
    K = complex_for(name)
    D = dual_complex(K)
    for p in range(1, K.dim + 1):
        signed = [{k: (-1) ** p * v for k, v in r.items()} for r in boundary_matrix(K, p).rows]
        assert list(D.incidence[p].rows) == signed


def test_dual_incidence_ignores_orientation_choice(torus):
    o = orient(torus)
    assert list(dual_complex(torus, o).incidence[1].rows) == list(dual_complex(torus, -o).incidence[1].rows)


def _rand_cochain(rng, p, size):
    return Cochain(p, [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(size)])


@pytest.mark.parametrize("name", ORIENTABLE)
def test_dual_paths_agree_on_spanning_set(name):
    K = complex_for(name)
    D = dual_complex(K)
    rng = random.Random(7)
    for p in range(K.dim + 1):
        f = K.f_vector[p]
        probes = [Cochain.indicator(p, f, i) for i in range(f)]
        probes += [_rand_cochain(rng, p, f) for _ in range(f)]
        probes += list(harmonic_basis(K, p))
        if p >= 1:
            # cycles of the primal boundary are dual-closed
            probes += [Cochain(p, v) for v in nullspace(boundary_matrix(K, p))[:5]]
        for eta in probes:
            assert is_dual_closed(D, eta) == dual_closed_via_transpose(K, eta)


def test_orientation_cochain_is_dual_closed(sphere2):
    o = orient(sphere2)
    D = dual_complex(sphere2, o)
    eta = Cochain(2, o.signs)
    assert is_dual_closed(D, eta)
    assert dual_closed_via_transpose(sphere2, eta)


def test_single_facet_not_dual_closed(sphere2):
    D = dual_complex(sphere2)
    eta = Cochain.indicator(2, 4, 0)
    assert not is_dual_closed(D, eta)


def test_projected_closed_cochain_is_dual_closed(torus):
    rng = random.Random(3)
    D = dual_complex(torus)
    beta = [Fraction(rng.randint(-4, 4)) for _ in range(9)]
    h = harmonic_basis(torus, 1)
    eta = Cochain(1, coboundary(torus, 0) @ beta) + 3 * h[0] - h[1]
    assert is_closed(torus, eta)
    assert not is_dual_closed(D, eta)
    assert is_dual_closed(D, harmonic_projection(torus, eta))


def test_transpose_vacuous_in_degree_zero(torus):
    assert dual_closed_via_transpose(torus, Cochain(0, range(9)))


def test_exact_cochain_generally_not_dual_closed(torus):
    beta = list(range(9))
    eta = Cochain(1, coboundary(torus, 0) @ beta)
    assert not dual_closed_via_transpose(torus, eta)
    # constants are in the kernel of d^T d, so their coboundary is dual-closed
    assert dual_closed_via_transpose(torus, Cochain(1, coboundary(torus, 0) @ ([1] * 9)))


def test_dualize_round_trip(sphere2):
    D = dual_complex(sphere2)
    zero = Cochain.zero(1, 6)
    assert not any(dualize(D, zero).values)
    ind = Cochain.indicator(1, 6, 2)
    star = dualize(D, ind)
    assert star.dim == 1 and star[2] == 1 and sum(star.values) == 1
    eta = Cochain(1, [1, 2, 3, 4, 5, Fraction(1, 2)])
    assert undualize(D, dualize(D, eta)) == eta


def test_dualize_dimension_mismatch(sphere2):
    D = dual_complex(sphere2)
    with pytest.raises(DimensionMismatch):
        dualize(D, Cochain(1, [1, 2]))
    with pytest.raises(DimensionMismatch):
        is_dual_closed(D, Cochain(2, [1]))


def test_non_orientable_rejected(rp2, klein):
    for K in (rp2, klein):
        with pytest.raises(NotOrientable):
            dual_complex(K)


def test_non_pseudomanifold_rejected():
    with pytest.raises(NotPseudomanifold):
        dual_complex(build_complex([(0, 1, 2)]))
