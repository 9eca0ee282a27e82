"""Acceptance criteria; each test prints one PASS/FAIL line (visible with -v or -s)."""

import json
import os
import random
import subprocess
import sys
from contextlib import contextmanager
from fractions import Fraction

import pytest

import oracle
from conftest import ALL_MEMBERS, complex_for
from hpsets.cochain import Cochain, pairing
from hpsets.complex import boundary_matrix, orient, validate_manifold
from hpsets.duality import dual_closed_via_transpose, dual_complex, is_dual_closed
from hpsets.errors import NotOrientable
from hpsets.flags import enumerate_signatures
from hpsets.hodge import (
    coboundary,
    harmonic_basis,
    harmonic_projection,
    homology_basis,
    laplacian,
)
from hpsets.io import format_cochain
from hpsets.linalg import SparseMatrix, nullspace
from hpsets.search import (
    Corpus,
    check_subdivision_invariance,
    evaluate_candidate,
    harmonic_constraint_system,
    make_member,
    search,
    solve_coefficients,
    subdivide,
    transported_orientation,
)
from hpsets.subdivision import push_cycle


@contextmanager
def criterion(capsys, number, title):
    ok = False
    try:
        yield
        ok = True
    finally:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}")


def _orientation(K):
    try:
        return orient(K)
    except NotOrientable:
        return None


def _rand(rng, n):
    return [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)]


def test_1_chain_complex_laws(capsys):
    with criterion(capsys, 1, "boundary of boundary and coboundary of coboundary vanish"):
        for name in ALL_MEMBERS:
            K = complex_for(name)
            for p in range(1, K.dim):
                assert (boundary_matrix(K, p) @ boundary_matrix(K, p + 1)).is_zero(), (name, p)
                assert (coboundary(K, p) @ coboundary(K, p - 1)).is_zero(), (name, p)


def test_2_harmonic_dimension_equals_betti(capsys):
    expected = {
        "sphere:2": (1, 0, 1),
        "sphere:3": (1, 0, 0, 1),
        "torus-grid:3": (1, 2, 1),
        "klein-grid:3": (1, 1, 0),
        "rp2-min": (1, 0, 0),
    }
    with criterion(capsys, 2, "dim ker Laplacian equals Betti number on every member"):
        for name in ALL_MEMBERS:
            K = complex_for(name)
            # Betti numbers by rank-nullity in the dense oracle, from the facets alone
            b = oracle.betti_by_rank(K.facets)
            base = name[3:-1] if name.startswith("Sd(") else name
            assert b == expected[base], name
            assert tuple(len(harmonic_basis(K, p)) for p in range(K.dim + 1)) == b, name


def test_3_dual_paths_agree(capsys):
    rng = random.Random(2024)
    with criterion(capsys, 3, "explicit dual complex agrees with the transpose condition"):
        checked = 0
        for name in ALL_MEMBERS:
            K = complex_for(name)
            if _orientation(K) is None:
                continue
            D = dual_complex(K)
            for p in range(K.dim + 1):
                f = K.f_vector[p]
                probes = [Cochain.indicator(p, f, i) for i in range(f)]
                probes += [Cochain(p, _rand(rng, f)) for _ in range(f)]
                for eta in probes:
                    assert is_dual_closed(D, eta) == dual_closed_via_transpose(K, eta), (name, p)
                    checked += 1
        assert checked > 0


def test_4_projection_well_defined(capsys):
    rng = random.Random(7)
    with criterion(capsys, 4, "harmonic projection is well defined, idempotent, pairing preserving"):
        for name in ALL_MEMBERS:
            K = complex_for(name)
            for p in range(K.dim + 1):
                H = harmonic_basis(K, p)
                eta = Cochain.zero(p, K.f_vector[p])
                for h in H:
                    eta = eta + Fraction(rng.randint(-5, 5), rng.randint(1, 4)) * h
                if p > 0:
                    eta = eta + Cochain(p, coboundary(K, p - 1) @ _rand(rng, K.f_vector[p - 1]))
                proj = harmonic_projection(K, eta)
                assert harmonic_projection(K, proj) == proj, (name, p)
                for h in H:
                    assert harmonic_projection(K, h) == h
                for z in homology_basis(K, p):
                    assert pairing(proj, z) == pairing(eta, z), (name, p)
                if p == 0:
                    continue
                d = coboundary(K, p - 1)
                for _ in range(100):
                    shifted = eta + Cochain(p, d @ _rand(rng, K.f_vector[p - 1]))
                    assert harmonic_projection(K, shifted) == proj, (name, p)


def test_5_top_degree_is_orientation(capsys):
    with criterion(capsys, 5, "top-degree harmonic space is spanned by the orientation"):
        seen = 0
        for name in ALL_MEMBERS:
            K = complex_for(name)
            if not validate_manifold(K).connected:
                continue
            o = _orientation(K)
            if o is None:
                assert len(harmonic_basis(K, K.dim)) == 0, name
                continue
            (h,) = harmonic_basis(K, K.dim)
            ratios = {Fraction(v) / s for v, s in zip(h.values, o.signs)}
            assert len(ratios) == 1 and 0 not in ratios, name
            seen += 1
        assert seen == 5


def _oracle_laplacian(K, p):
    cells = oracle.closure(K.facets)
    f = len(cells[p])
    lap = [[Fraction(0)] * f for _ in range(f)]
    if p < K.dim:
        b = oracle.boundary_dense(cells, p + 1)
        lap = [[x + y for x, y in zip(r, s)] for r, s in zip(lap, oracle.matmul(b, oracle.transpose(b)))]
    if p > 0:
        b = oracle.boundary_dense(cells, p)
        lap = [[x + y for x, y in zip(r, s)] for r, s in zip(lap, oracle.matmul(oracle.transpose(b), b))]
    return lap


def test_6_oracle_equivalence(capsys):
    rng = random.Random(99)
    with criterion(capsys, 6, "nullspaces match the dense oracle up to 30x30"):
        compared = 0
        for name in ALL_MEMBERS:
            K = complex_for(name)
            for p in range(K.dim + 1):
                if K.f_vector[p] > 30:
                    continue
                lap = _oracle_laplacian(K, p)
                assert lap == laplacian(K, p).to_dense(), (name, p)
                assert [list(v) for v in nullspace(laplacian(K, p))] == oracle.kernel(lap, len(lap)), (name, p)
                compared += 1
        for name in ["sphere:2", "torus-grid:3", "klein-grid:3", "rp2-min", "sphere:3"]:
            K = complex_for(name)
            corpus = Corpus((make_member(name, K),))
            for p in range(K.dim + 1):
                system = harmonic_constraint_system(corpus, p, enumerate_signatures(K.dim, p, K.dim + 1))
                if system.matrix.nrows > 30:
                    continue
                got = [list(v) for v in solve_coefficients(system).basis]
                assert got == oracle.kernel(system.matrix.to_dense(), system.matrix.ncols), (name, p)
                compared += 1
        for _ in range(40):
            r, c = rng.randint(1, 30), rng.randint(1, 30)
            dense = [[Fraction(rng.choice([0, 0, 0, rng.randint(-4, 4)]), rng.randint(1, 3)) for _ in range(c)] for _ in range(r)]
            assert [list(v) for v in nullspace(SparseMatrix.from_dense(dense, ncols=c))] == oracle.kernel(dense, c)
            compared += 1
        assert compared > 40


def test_7_search_sanity(capsys):
    with criterion(capsys, 7, "signed top-degree search finds the orientation; unsigned S2 search is zero"):
        names = ["sphere:2", "torus-grid:3"]
        corpus = Corpus(tuple(make_member(n, complex_for(n)) for n in names))
        sigs = [(2,), (0, 2), (1, 2)]
        sol = search(corpus, 2, sigs, signed=True).solution
        found = False
        for vec in sol.basis:
            good = True
            for m in corpus:
                eta = evaluate_candidate(m.complex, vec, sigs, 2, True, m.orientation)
                ratios = {Fraction(v) / s for v, s in zip(eta.values, m.orientation.signs)}
                good &= len(ratios) == 1 and 0 not in ratios
            found |= good
        assert found
        one = Corpus((make_member("sphere:2", complex_for("sphere:2")),))
        assert search(one, 1, [(1,)]).solution.dimension == 0


def test_8_subdivision_filter(capsys):
    with criterion(capsys, 8, "signed all-ones 2-set on the tetrahedron boundary pairs 4 vs 24"):
        K = complex_for("sphere:2")
        o = orient(K)
        L, sd = subdivide(K)
        (z,) = homology_basis(K, 2)
        on_k = pairing(Cochain(2, o.signs), z)
        on_sd = pairing(Cochain(2, transported_orientation(sd, o).signs), push_cycle(sd, z))
        assert (on_k, on_sd) == (4, 24)
        report = check_subdivision_invariance(K, [1], [(2,)], 2, signed=True, o=o)
        assert report.rows == ((0, on_k, on_sd, on_sd - on_k),)
        assert on_sd - on_k != 0 and not report.class_invariant


def _cli(args, seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    proc = subprocess.run(
        [sys.executable, "-m", "hpsets", *args, "--format", "machine"], capture_output=True, env=env, check=False
    )
    return proc.returncode, proc.stdout


def test_9_cli_determinism(capsys, tmp_path):
    K = complex_for("sphere:2")
    closed = tmp_path / "closed.pset"
    closed.write_text(format_cochain(K, Cochain(2, coboundary(K, 1) @ [1, 2, 3, 4, 5, 6]) + Cochain(2, orient(K).signs)))
    commands = [
        ["check", "rp2-min"],
        ["betti", "torus-grid:3", "--all"],
        ["harmonic", "torus-grid:3", "-p", "1"],
        ["harmonic", "sphere:2", "-p", "2", "--project", str(closed)],
        ["dual-check", "sphere:2", str(closed)],
        ["subdivide", "klein-grid:3"],
        ["flags", "torus-grid:3", "-p", "1", "--max-len", "3"],
        ["search", "sphere:2", "torus-grid:3", "klein-grid:3", "-p", "1", "--max-len", "3"],
        ["search", "sphere:2", "torus-grid:3", "-p", "2", "--signed", "--subinv", "--signatures", "(2),(0,2),(1,2)"],
    ]
    with criterion(capsys, 9, "every CLI command is byte-identical across runs in machine format"):
        for cmd in commands:
            first, second = _cli(cmd, 1), _cli(cmd, 2)
            assert first[0] == 0, cmd
            assert first == second, cmd
            if cmd[0] != "subdivide":
                json.loads(first[1])
