"""Hodge's harmonic p-sets on triangulated manifolds, computed exactly.

The pieces: simplicial complexes with signed boundaries and barycentric
subdivision (:mod:`hpsets.complex`, :mod:`hpsets.subdivision`), the dual block
complex (:mod:`hpsets.duality`), harmonic p-sets and Betti numbers
(:mod:`hpsets.hodge`), flag-count p-sets (:mod:`hpsets.flags`) and the search
for harmonic, subdivision-invariant combinations of them
(:mod:`hpsets.search`).
"""

__version__ = "0.1.0"

from .cochain import Chain, Cochain, pairing
from .complex import (
    ManifoldReport,
    Orientation,
    SimplicialComplex,
    boundary_matrix,
    build_complex,
    euler_characteristic,
    is_orientable,
    orient,
    validate_manifold,
)
from .duality import DualComplex, dual_closed_via_transpose, dual_complex, dualize, is_dual_closed
from .flags import enumerate_signatures, flag_basis_matrix, flag_count, flag_pset, oriented_flag_pset
from .generators import load
from .hodge import (
    betti,
    betti_numbers,
    coboundary,
    harmonic_basis,
    harmonic_projection,
    homology_basis,
    is_closed,
    is_harmonic,
    laplacian,
)
from .search import (
    build_corpus,
    check_subdivision_invariance,
    evaluate_candidate,
    harmonic_constraint_system,
    search,
    solve_coefficients,
)
from .subdivision import barycentric_subdivision, push_cycle
