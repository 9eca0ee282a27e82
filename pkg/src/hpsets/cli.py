"""Command-line interface.

Exit codes: 0 success, 1 domain error (validation, preconditions, theorem
violations), 2 usage error (bad arguments, unreadable input).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from . import __version__
from .cochain import Cochain
from .complex import (
    SimplicialComplex,
    euler_characteristic,
    orient,
    validate_manifold,
)
from .duality import dual_closed_via_transpose, dual_complex, is_dual_closed
from .errors import FileUnreadable, HPSetsError, NotClosed, NotOrientable, UnknownGenerator
from .flags import enumerate_signatures, flag_basis_matrix
from .generators import load
from .hodge import betti, harmonic_basis, harmonic_projection, is_closed
from .io import format_cochain, format_facets, format_rational, format_signature, oriented_facets, parse_signatures, read_cochain
from .search import build_corpus, search, subdivide, transported_orientation


class UsageError(Exception):
    pass


def _load(spec: str) -> SimplicialComplex:
    try:
        return load(spec)
    except (FileUnreadable, UnknownGenerator) as exc:
        raise UsageError(str(exc)) from None


def _read_cochain(K: SimplicialComplex, path: str) -> Cochain:
    try:
        return read_cochain(K, path)
    except FileUnreadable as exc:
        raise UsageError(str(exc)) from None


def _degree(K: SimplicialComplex, p: int) -> int:
    if not 0 <= p <= K.dim:
        raise UsageError(f"degree {p} is outside 0..{K.dim}")
    return p


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "machine":
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=1) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cochain_payload(K: SimplicialComplex, eta: Cochain) -> dict:
    return {
        "p": eta.dim,
        "values": {
            ",".join(str(K.labels[v]) for v in cell): format_rational(x)
            for cell, x in zip(K.cells[eta.dim], eta.values)
        },
    }


def cmd_check(args) -> int:
    K = _load(args.input)
    report = validate_manifold(K)
    orientable, witness = None, ()
    if report.ridge and report.pure:
        try:
            orient(K)
            orientable = True
        except NotOrientable as exc:
            orientable, witness = False, exc.witness
    payload = {
        "input": args.input,
        "dim": K.dim,
        "f_vector": list(K.f_vector),
        "euler_characteristic": euler_characteristic(K),
        "pure": report.pure,
        "ridge": report.ridge,
        "connected": report.connected,
        "pseudomanifold": report.is_pseudomanifold,
        "orientable": orientable,
        "witness": list(witness),
    }
    lines = [
        f"complex      {args.input} (dimension {K.dim})",
        f"f-vector     ({', '.join(map(str, K.f_vector))})",
        f"euler char   {euler_characteristic(K)}",
        f"pure         {report.pure}",
        f"ridge        {report.ridge}" + ("" if report.ridge else f"  ({len(report.bad_ridges)} bad ridges)"),
        f"connected    {report.connected}" + ("" if report.connected else f"  ({report.components} components)"),
    ]
    if orientable is None:
        lines.append("orientable   n/a (not a pseudomanifold)")
    elif orientable:
        lines.append("orientable   yes")
    else:
        lines.append("orientable   no  (witness facet walk: " + " ".join(map(str, witness)) + ")")
    _emit(args, payload, "\n".join(lines))
    return 0 if report.is_pseudomanifold else 1


def cmd_betti(args) -> int:
    K = _load(args.input)
    degrees = range(K.dim + 1) if args.all or args.p is None else [_degree(K, args.p)]
    rows = []
    for p in degrees:
        rows.append((p, betti(K, p), len(harmonic_basis(K, p))))
    mismatch = [p for p, b, h in rows if b != h]
    payload = {
        "input": args.input,
        "betti": [b for _, b, _ in rows],
        "harmonic_dims": [h for _, _, h in rows],
        "degrees": [p for p, _, _ in rows],
        "agree": not mismatch,
    }
    text = "p  betti  dim ker Laplacian\n" + "\n".join(
        f"{p}  {b:5d}  {h:5d}" + ("  MISMATCH" if b != h else "") for p, b, h in rows
    )
    if args.format == "text":
        text += "\n" + " ".join(str(b) for _, b, _ in rows)
    _emit(args, payload, text)
    return 1 if mismatch else 0


def cmd_harmonic(args) -> int:
    K = _load(args.input)
    p = _degree(K, args.p)
    if args.project:
        eta = _read_cochain(K, args.project)
        if eta.dim != p:
            raise UsageError(f"cochain file has degree {eta.dim}, expected {p}")
        if not is_closed(K, eta):
            raise NotClosed(f"{args.project} is not a closed {p}-set")
        proj = harmonic_projection(K, eta)
        _emit(args, {"input": args.input, "projection": _cochain_payload(K, proj)}, format_cochain(K, proj))
        return 0
    basis = harmonic_basis(K, p)
    payload = {"input": args.input, "p": p, "basis": [_cochain_payload(K, h) for h in basis]}
    text = f"# {len(basis)} harmonic {p}-set(s) on {args.input}\n" + "".join(format_cochain(K, h) for h in basis)
    _emit(args, payload, text)
    return 0


def cmd_dual_check(args) -> int:
    K = _load(args.input)
    eta = _read_cochain(K, args.cochain)
    if args.p is not None and args.p != eta.dim:
        raise UsageError(f"cochain file has degree {eta.dim}, but -p {args.p} was given")
    closed = is_closed(K, eta)
    transpose = dual_closed_via_transpose(K, eta)
    explicit, note = None, ""
    try:
        explicit = is_dual_closed(dual_complex(K), eta)
    except NotOrientable:
        note = "NotOrientable: explicit dual complex unavailable, transpose result only"
    payload = {
        "input": args.input,
        "p": eta.dim,
        "closed": closed,
        "dual_closed_transpose": transpose,
        "dual_closed_explicit": explicit,
        "paths_agree": None if explicit is None else explicit == transpose,
        "harmonic": closed and transpose,
        "note": note,
    }
    lines = [
        f"closed                      {closed}",
        f"dual-closed (transpose)     {transpose}",
        f"dual-closed (dual complex)  {'n/a' if explicit is None else explicit}",
    ]
    if explicit is not None:
        lines.append(f"dual paths agree            {explicit == transpose}")
    if note:
        lines.append(note)
    _emit(args, payload, "\n".join(lines))
    if explicit is not None and explicit != transpose:
        return 1
    return 0


def cmd_subdivide(args) -> int:
    K = _load(args.input)
    L, sd = subdivide(K)
    try:
        signs = transported_orientation(sd, orient(K)).signs
    except HPSetsError:
        signs = None
    facets = oriented_facets(L, signs)
    text = format_facets(facets, f"barycentric subdivision of {args.input}, f-vector {L.f_vector}")
    payload = {"input": args.input, "f_vector": list(L.f_vector), "facets": [list(f) for f in facets]}
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        text = f"wrote {len(facets)} facets to {args.output}"
    _emit(args, payload, text)
    return 0


def _signatures(args, n: int, p: int):
    if args.signatures is not None:
        try:
            return parse_signatures(args.signatures)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return enumerate_signatures(n, p, args.max_len)


def cmd_flags(args) -> int:
    K = _load(args.input)
    p = _degree(K, args.p)
    sigs = _signatures(args, K.dim, p)
    o = orient(K) if args.signed else None
    F = flag_basis_matrix(K, p, sigs, o, args.signed)
    keys = [format_signature(s) for s in F.signatures]
    cells = [",".join(str(K.labels[v]) for v in c) for c in K.cells[p]]
    payload = {
        "input": args.input,
        "p": p,
        "signed": args.signed,
        "signatures": keys,
        "rows": {c: list(r) for c, r in zip(cells, F.rows)},
    }
    width = max([len(c) for c in cells] + [4])
    lines = ["cell".ljust(width) + "  " + "  ".join(keys)]
    for c, r in zip(cells, F.rows):
        lines.append(c.ljust(width) + "  " + "  ".join(str(v).rjust(len(k)) for v, k in zip(r, keys)))
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_search(args) -> int:
    if not args.corpus:
        raise UsageError("search needs at least one corpus member")
    try:
        corpus = build_corpus(args.corpus)
    except (FileUnreadable, UnknownGenerator) as exc:
        raise UsageError(str(exc)) from None
    n = min(m.complex.dim for m in corpus)
    if not 0 <= args.p <= n:
        raise UsageError(f"degree {args.p} is outside 0..{n}")
    sigs = _signatures(args, n, args.p)
    result = search(corpus, args.p, sigs, args.signed, args.subinv)
    sol = result.solution
    keys = [format_signature(s) for s in sol.signatures]
    lines = [
        f"corpus       {' '.join(sol.members)}",
        f"degree       {sol.p} ({'orientation-signed' if sol.signed else 'unsigned'})",
        f"signatures   {' '.join(keys) if keys else '(none)'}",
        f"constraints  {result.system.matrix.nrows} rows, {len(result.system.binding_rows())} nonzero",
        f"solution dimension {sol.dimension}" + (" (subdivision-invariant)" if sol.subdivision_invariant else ""),
    ]
    for i, vec in enumerate(sol.basis):
        terms = " + ".join(f"{format_rational(c)}*{k}" for c, k in zip(vec, keys) if c)
        lines.append(f"  a[{i}] = {terms}")
        for rep in result.reports[i]:
            state = "invariant" if rep.class_invariant else "NOT invariant"
            pairs = ", ".join(f"z{j}: {format_rational(a)} -> {format_rational(b)}" for j, a, b, _ in rep.rows)
            lines.append(f"      {rep.member}: {state}" + (f" ({pairs})" if pairs else ""))
    _emit(args, result.as_dict(), "\n".join(lines))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text", help="output format")

    parser = argparse.ArgumentParser(prog="hpsets", description="Harmonic p-sets on triangulated manifolds.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    inp = "generator spec (sphere:n, torus-grid:k, klein-grid:k, rp2-min) or facet file"

    p = sub.add_parser("check", parents=[common], help="f-vector, Euler characteristic, pseudomanifold checks")
    p.add_argument("input", help=inp)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("betti", parents=[common], help="Betti numbers next to harmonic space dimensions")
    p.add_argument("input", help=inp)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true")
    g.add_argument("-p", type=int)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("harmonic", parents=[common], help="harmonic basis, or harmonic projection of a closed p-set")
    p.add_argument("input", help=inp)
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--project", metavar="PSET_FILE")
    p.set_defaults(func=cmd_harmonic)

    p = sub.add_parser("dual-check", parents=[common], help="closedness and dual closedness of a p-set")
    p.add_argument("input", help=inp)
    p.add_argument("cochain", metavar="PSET_FILE")
    p.add_argument("-p", type=int)
    p.set_defaults(func=cmd_dual_check)

    p = sub.add_parser("subdivide", parents=[common], help="facet file of the barycentric subdivision")
    p.add_argument("input", help=inp)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_subdivide)

    for name, func, help_ in (
        ("flags", cmd_flags, "flag basis matrix of p-sets"),
        ("search", cmd_search, "coefficients making sum a_I eta_I harmonic on a corpus"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        if name == "flags":
            p.add_argument("input", help=inp)
        else:
            p.add_argument("corpus", nargs="*", help=inp)
            p.add_argument("--subinv", action="store_true", help="require invariance under one subdivision")
        p.add_argument("-p", type=int, required=True)
        p.add_argument("--signatures", help='e.g. "(1),(0,1),(1,2)"')
        p.add_argument("--max-len", type=int, default=2, help="signature length bound when --signatures is absent")
        p.add_argument("--signed", action="store_true", help="orientation-signed top-degree p-sets")
        p.set_defaults(func=func)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    func: Callable = args.func
    try:
        return func(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except HPSetsError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
