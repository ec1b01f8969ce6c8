"""Command-line front end.

    lyreynolds verify FILE... --name OBJ
    lyreynolds cohomology FILE... --algebra A --operator T --rep R
                          [--complex {ly,ro,rly}] [--max-degree N]
    lyreynolds classify-extensions FILE... --algebra A --operator T --rep R
    lyreynolds deform-check FILE... --name D [--order N]

Exit codes: 0 all checks pass, 1 a mathematical check failed (witness
printed), 2 malformed input or unresolved references.  ``--json`` switches
the report to a machine-readable form that parses back into the same
report objects.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .cohomology import (
    cohomology_dims,
    differential_matrix,
    is_cocycle,
    phi_matrix,
    rly_dim,
    unflatten_rly,
)
from .deformation import TruncatedDeformation, verify_deformation
from .errors import LyError, NameNotFound, ParseError
from .extension import (
    AbelianExtension,
    ExtensionCocycle,
    base_data,
    build_extension,
    extract_rep,
)
from .fileformat import Workspace, load_workspace
from .linalg import Matrix, format_rational, kernel_basis, rank
from .algebra import verify_ly_axioms
from .reporting import AxiomReport, Check
from .representation import verify_rep, verify_reynolds_rep
from .reynolds import verify_reynolds

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


def _fail_data(kind: str, name: str, report) -> dict:
    return {"object": name, "kind": kind, "report": report.to_json()}


def _verify_object(ws: Workspace, name: str) -> tuple[bool, dict, str]:
    """Run the appropriate verifier; returns (ok, json payload, text)."""
    kind = ws.kind_of(name)
    if kind == "algebra":
        report = verify_ly_axioms(ws.algebras[name])
        return report.ok, _fail_data(kind, name, report), report.describe()
    if kind == "operator":
        entry = ws.operators[name]
        report = verify_reynolds(ws.algebra(entry.algebra), entry.op)
        return report.ok, _fail_data(kind, name, report), report.describe()
    if kind == "representation":
        entry = ws.representations[name]
        algebra = ws.algebra(entry.algebra)
        report = verify_rep(algebra, entry.rep)
        text = report.describe()
        ok = report.ok
        payload = [report.to_json()]
        if entry.rep.module_op is not None and entry.operator is not None:
            op = ws.operator(entry.operator).op
            rey = verify_reynolds_rep(algebra, op, entry.rep)
            ok = ok and rey.ok
            text += "\n" + rey.describe()
            payload.append(rey.to_json())
        return ok, {"object": name, "kind": kind, "report": payload}, text
    if kind == "cochain":
        entry = ws.cochains[name]
        algebra = ws.algebra(entry.algebra)
        rep = ws.representation(entry.representation).rep
        op = ws.operator(entry.operator).op if entry.operator else None
        closed = is_cocycle(algebra, op, rep, entry.complex_name, entry.cochain)
        report = AxiomReport((Check("is-cocycle", closed,
                                    None if closed else (), None),))
        return closed, _fail_data(kind, name, report), report.describe()
    if kind == "deformation":
        entry = ws.deformations[name]
        deformation = TruncatedDeformation(entry.order, entry.F, entry.G, entry.Tt)
        report = verify_deformation(ws.algebra(entry.algebra),
                                    ws.operator(entry.operator).op, deformation)
        return report.ok, _fail_data(kind, name, report), report.describe()
    # extension: building the object runs every structural check
    entry = ws.extensions[name]
    try:
        ext = AbelianExtension(ws.algebra(entry.total),
                               ws.operator(entry.total_operator).op,
                               entry.inject, entry.project)
    except LyError as exc:
        report = AxiomReport((Check("extension-structure", False, (), None),))
        payload = _fail_data(kind, name, report)
        payload["error"] = str(exc)
        return False, payload, f"extension-structure: FAIL\n{exc}"
    checks = [Check("extension-structure", True)]
    if entry.base is not None:
        base, base_op, _tv = base_data(ext)
        matches = base.binary == ws.algebra(entry.base).binary \
            and base.ternary == ws.algebra(entry.base).ternary
        if entry.operator is not None:
            matches = matches and base_op == ws.operator(entry.operator).op
        checks.append(Check("base-data-matches", matches, None if matches else ()))
        if entry.representation is not None:
            rep_match = extract_rep(ext) == ws.representation(entry.representation).rep
            checks.append(Check("induced-representation-matches", rep_match,
                                None if rep_match else ()))
    report = AxiomReport(tuple(checks))
    return report.ok, _fail_data(kind, name, report), report.describe()


def cmd_verify(args) -> int:
    ws = load_workspace(args.files)
    ok, payload, text = _verify_object(ws, args.name)
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def _resolve_triple(ws: Workspace, args):
    algebra = ws.algebra(args.algebra)
    op_entry = ws.operator(args.operator)
    rep_entry = ws.representation(args.rep)
    if op_entry.algebra != args.algebra or rep_entry.algebra != args.algebra:
        raise LyError("algebra, operator and representation must belong together")
    rep = rep_entry.rep
    ok = verify_ly_axioms(algebra).ok and verify_reynolds(algebra, op_entry.op).ok \
        and verify_rep(algebra, rep).ok
    if rep.module_op is not None:
        ok = ok and verify_reynolds_rep(algebra, op_entry.op, rep).ok
    if not ok:
        raise LyError("inputs fail verification; run the verify command for details")
    return algebra, op_entry.op, rep


def cmd_cohomology(args) -> int:
    ws = load_workspace(args.files)
    algebra, op, rep = _resolve_triple(ws, args)
    report = cohomology_dims(algebra, op, rep, args.complex, args.max_degree)

    square_zero = []
    for p in range(1, args.max_degree):
        d_lo = differential_matrix(algebra, op, rep, args.complex, p)
        d_hi = differential_matrix(algebra, op, rep, args.complex, p + 1)
        square_zero.append((d_hi @ d_lo).is_zero())
    chain_map = []
    if rep.module_op is not None:
        for p in range(1, args.max_degree):
            lhs = phi_matrix(algebra, op, rep, p + 1) \
                @ differential_matrix(algebra, op, rep, "ly", p)
            rhs = differential_matrix(algebra, op, rep, "ro", p) \
                @ phi_matrix(algebra, op, rep, p)
            chain_map.append(lhs == rhs)

    if args.json:
        payload = report.to_json()
        payload["square_zero"] = square_zero
        payload["chain_map"] = chain_map
        print(json.dumps(payload, indent=2))
    else:
        print(report.describe())
        for p, ok in enumerate(square_zero, start=1):
            print(f"d{p + 1} o d{p} = 0: {'pass' if ok else 'FAIL'}")
        for p, ok in enumerate(chain_map, start=1):
            print(f"comparison map squares with d at degree {p}: "
                  f"{'pass' if ok else 'FAIL'}")
    all_ok = all(square_zero) and all(chain_map)
    return EXIT_OK if all_ok else EXIT_CHECK_FAILED


def _class_representatives(algebra, op, rep):
    """One kernel vector per cohomology class at degree 2 of the cone complex."""
    n, m = algebra.dim, rep.module_dim
    d2 = differential_matrix(algebra, op, rep, "rly", 2)
    d1 = differential_matrix(algebra, op, rep, "rly", 1)
    ker = kernel_basis(d2)
    image_cols = [d1.column(j) for j in range(d1.cols)]
    chosen = []
    span = list(image_cols)
    current_rank = rank(Matrix.from_columns(span, rly_dim(2, n, m))) if span else 0
    for vec in ker.vectors:
        trial = span + [vec]
        r = rank(Matrix.from_columns(trial, rly_dim(2, n, m)))
        if r > current_rank:
            chosen.append(vec)
            span = trial
            current_rank = r
    return chosen


def cmd_classify_extensions(args) -> int:
    ws = load_workspace(args.files)
    algebra, op, rep = _resolve_triple(ws, args)
    if rep.module_op is None:
        raise LyError("classifying extensions needs a representation with a module operator")
    report = cohomology_dims(algebra, op, rep, "rly", 2)
    betti2 = report.betti(2)
    reps = _class_representatives(algebra, op, rep)
    n, m = algebra.dim, rep.module_dim

    built = []
    for vec in reps:
        cocycle = ExtensionCocycle.from_cochain(unflatten_rly(2, n, m, vec))
        build_extension(algebra, op, rep, cocycle)  # machine check: it assembles
        built.append(cocycle)

    if args.json:
        payload = {
            "betti2": betti2,
            "representatives": [_cocycle_to_json(c) for c in built],
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"second cohomology dimension: {betti2}")
        if betti2 == 0:
            print("all extensions are equivalent to the semidirect product")
        for idx, cocycle in enumerate(built, start=1):
            print(f"representative {idx}:")
            print(_cocycle_describe(cocycle))
    return EXIT_OK


def _cocycle_to_json(c: ExtensionCocycle) -> dict:
    n, m = c.alg_dim, c.mod_dim
    nu = [[i + 1, j + 1, a + 1, format_rational(c.nu[i][j][a])]
          for i in range(n) for j in range(n) for a in range(m) if c.nu[i][j][a]]
    psi = [[i + 1, j + 1, k + 1, a + 1, format_rational(c.psi[i][j][k][a])]
           for i in range(n) for j in range(n) for k in range(n) for a in range(m)
           if c.psi[i][j][k][a]]
    chi = [[z + 1, a + 1, format_rational(c.chi[a, z])]
           for z in range(n) for a in range(m) if c.chi[a, z]]
    return {"nu": nu, "psi": psi, "chi": chi}


def _cocycle_describe(c: ExtensionCocycle) -> str:
    data = _cocycle_to_json(c)
    lines = []
    for key in ("nu", "psi", "chi"):
        for entry in data[key]:
            idx = " ".join(str(t) for t in entry[:-1])
            lines.append(f"  {key} {idx} = {entry[-1]}")
    return "\n".join(lines) if lines else "  (zero cocycle)"


def cmd_deform_check(args) -> int:
    ws = load_workspace(args.files)
    if args.name is None:
        if len(ws.deformations) != 1:
            raise LyError("pass --name: the files define "
                          f"{len(ws.deformations)} deformations")
        name = next(iter(ws.deformations))
    else:
        name = args.name
    if name not in ws.deformations:
        raise NameNotFound(f"no deformation named {name!r}")
    entry = ws.deformations[name]
    deformation = TruncatedDeformation(entry.order, entry.F, entry.G, entry.Tt)
    order = args.order if args.order is not None else entry.order
    if order > entry.order:
        raise LyError(f"file only carries coefficients up to order {entry.order}")
    if order < entry.order:
        deformation = TruncatedDeformation(
            order, entry.F[:order + 1], entry.G[:order + 1], entry.Tt[:order + 1])
    report = verify_deformation(ws.algebra(entry.algebra),
                                ws.operator(entry.operator).op, deformation)
    if args.json:
        print(json.dumps({"object": name, "report": report.to_json()}, indent=2))
    else:
        print(report.describe())
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lyreynolds",
        description="Exact verification and cohomology for Lie-Yamaguti "
                    "algebras with Reynolds operators.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the verifier battery of one named object")
    p.add_argument("files", nargs="+")
    p.add_argument("--name", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("cohomology", help="cohomology dimension table of a complex")
    p.add_argument("files", nargs="+")
    p.add_argument("--algebra", required=True)
    p.add_argument("--operator", required=True)
    p.add_argument("--rep", required=True)
    p.add_argument("--complex", choices=("ly", "ro", "rly"), default="rly")
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_cohomology)

    p = sub.add_parser("classify-extensions",
                       help="degree-2 classes with verified representatives")
    p.add_argument("files", nargs="+")
    p.add_argument("--algebra", required=True)
    p.add_argument("--operator", required=True)
    p.add_argument("--rep", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_classify_extensions)

    p = sub.add_parser("deform-check", help="verify a deformation order by order")
    p.add_argument("files", nargs="+")
    p.add_argument("--name")
    p.add_argument("--order", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_deform_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except LyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
