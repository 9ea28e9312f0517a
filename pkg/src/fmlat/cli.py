"""Command-line front end.

Commands: verify, matrix, transform, chi, sd-check, search. Every command
accepts --json for machine-readable output; all numbers in JSON are exact
(integers, or "n/d" strings for non-integers) and every document carries a
"schema": 1 field. Exit codes: 0 success, 1 a check failed, 2 bad usage or
bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import verify as verify_mod
from .bridgeland import FM2
from .chow import (CohClass, SurfaceDescriptor, chi_tensor,
                   integrality_warnings, load_surface)
from .errors import FmlatError, InputError
from .linalg import Mat, enc_mat, enc_q, enc_qseq, qvec, render_matrix
from .operators import GoldenName, build
from .sd import (SDPair, SDReport, SearchTarget, Theorem, build_report,
                 search_phi)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2


def _parse_d_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        lo = hi = text
    try:
        lo_i, hi_i = int(lo), int(hi)
    except ValueError:
        raise InputError(f"bad d range {text!r}; expected LO..HI")
    if not (1 <= lo_i <= hi_i <= 64):
        raise InputError(f"d range must satisfy 1 <= lo <= hi <= 64, got {text!r}")
    return lo_i, hi_i


def _parse_vector(text: str) -> tuple:
    try:
        return qvec(tok.strip() for tok in text.split(","))
    except FmlatError:
        raise
    except Exception:
        raise InputError(f"bad vector {text!r}; expected comma-separated exact values")


def _parse_ints(text: str, n: int, what: str) -> tuple[int, ...]:
    toks = [tok.strip() for tok in text.split(",")]
    if len(toks) != n:
        raise InputError(f"{what} needs {n} comma-separated integers, got {text!r}")
    try:
        return tuple(int(tok) for tok in toks)
    except ValueError:
        raise InputError(f"{what}: not an integer in {text!r}")


def _class_from_vector(surface: SurfaceDescriptor, text: str) -> CohClass:
    coords = _parse_vector(text)
    if len(coords) != surface.rank + 2:
        raise InputError(
            f"class vector needs {surface.rank + 2} entries "
            f"(rank, {surface.rank} divisor coordinates, point part), "
            f"got {len(coords)}")
    return CohClass(coords[0], coords[1:-1], coords[-1])


def _resolve_surface(path: str | None) -> SurfaceDescriptor:
    path = path or os.environ.get("FMLAT_SURFACE")
    if not path:
        raise InputError("no surface file given (use --surface or FMLAT_SURFACE)")
    return load_surface(path)


def _emit(doc, json_mode: bool, text: str) -> None:
    if json_mode:
        print(json.dumps(doc, indent=2, sort_keys=False))
    else:
        print(text)


def _cmd_verify(args) -> int:
    d_lo, d_hi = _parse_d_range(args.d_range)
    outcome = verify_mod.run_verify(d_lo, d_hi)
    if args.json:
        print(json.dumps(outcome.to_json(), indent=2))
    else:
        print(f"{outcome.suite}  (d = {d_lo}..{d_hi})")
        for case in outcome.cases:
            mark = "PASS" if case.passed else "FAIL"
            print(f"[{mark}] {case.id}  {case.description}")
            if not case.passed:
                print(f"       lhs: {case.lhs}")
                print(f"       rhs: {case.rhs}")
        print(f"summary: {outcome.n_passed} passed, {outcome.n_failed} failed")
    return EXIT_OK if outcome.ok else EXIT_CHECK_FAILED


def _built_matrix(name_text: str, d: int | None, divisor_text: str | None) -> tuple[Mat, dict]:
    try:
        name = GoldenName(name_text)
    except ValueError:
        known = ", ".join(n.value for n in GoldenName)
        raise InputError(f"unknown matrix name {name_text!r}; known: {known}")
    divisor = None
    if divisor_text is not None:
        divisor = _parse_ints(divisor_text, 2, "--divisor")
    built = build(name, d=d, divisor=divisor)
    matrix = built if isinstance(built, Mat) else built.matrix
    meta = {"schema": 1, "name": name.value, "d": d,
            "divisor": list(divisor) if divisor else None}
    return matrix, meta


def _cmd_matrix(args) -> int:
    matrix, meta = _built_matrix(args.name, args.d, args.divisor)
    meta["matrix"] = enc_mat(matrix)
    header = meta["name"]
    if args.d is not None:
        header += f"(d={args.d})"
    if meta["divisor"]:
        header += f"(D={args.divisor})"
    _emit(meta, args.json, f"{header} =\n{render_matrix(matrix)}")
    return EXIT_OK


def _cmd_transform(args) -> int:
    matrix, meta = _built_matrix(args.matrix, args.d, args.divisor)
    vector = _parse_vector(args.vector)
    if len(vector) != matrix.n_cols:
        raise InputError(f"vector has {len(vector)} entries, "
                         f"matrix {meta['name']} is {matrix.n_rows}x{matrix.n_cols}")
    image = matrix.apply(vector)
    meta.update({"vector": enc_qseq(vector), "image": enc_qseq(image)})
    _emit(meta, args.json, ", ".join(str(x) for x in image))
    return EXIT_OK


def _cmd_chi(args) -> int:
    surface = _resolve_surface(args.surface)
    v = _class_from_vector(surface, args.v)
    w = _class_from_vector(surface, args.w)
    for label, cls in (("v", v), ("w", w)):
        for note in integrality_warnings(cls):
            print(f"warning: {label}: {note}", file=sys.stderr)
    value = chi_tensor(surface, v, w)
    doc = {"schema": 1, "surface": surface.name,
           "v": enc_qseq(v.coords()), "w": enc_qseq(w.coords()),
           "chi": enc_q(value)}
    _emit(doc, args.json, str(value))
    return EXIT_OK


def _report_text(report: SDReport) -> str:
    lines = [
        f"phi = [[{report.phi.c},{report.phi.a}],[{report.phi.e},{report.phi.b}]]"
        f"   lambda = {report.phi.lam}",
        f"d_v = {report.d_v}   d_w = {report.d_w}",
        f"rk_xi_v = {report.rk_xi_v}   rk_phi_w = {report.rk_phi_w}",
    ]
    if report.orthogonal is not None:
        lines.append(f"orthogonal = {report.orthogonal}   "
                     f"base_case = {report.base_case}")
    k3 = f"k3: {report.k3_check}"
    if report.margins_k3 is not None:
        k3 += (f"   threshold margins {report.margins_k3[0]}"
               f"   rank margins {report.margins_k3[1]}")
    lines.append(k3)
    general = f"general: {report.general_check}"
    if report.margins_general is not None:
        general += f"   threshold margins {report.margins_general}"
    lines.append(general)
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines)


def _cmd_sd_check(args) -> int:
    c, a, e, b = _parse_ints(args.phi, 4, "--phi")
    phi = FM2(c, a, e, b, args.lam)
    theorem = Theorem(args.theorem)
    pair = None
    if args.v is not None or args.w is not None:
        if args.v is None or args.w is None:
            raise InputError("--v and --w must be given together")
        surface = _resolve_surface(args.surface)
        pair = SDPair(surface, _class_from_vector(surface, args.v),
                      _class_from_vector(surface, args.w),
                      no_higher_cohomology=args.attest_no_higher_cohomology)
    report = build_report(phi, args.dv, args.dw, theorems=(theorem,),
                          pair=pair, t_v=args.tv, t_w=args.tw)
    _emit(report.to_json(), args.json, _report_text(report))
    verdict = report.k3_check if theorem is Theorem.K3 else report.general_check
    return EXIT_OK if verdict == "pass" else EXIT_CHECK_FAILED


def _cmd_search(args) -> int:
    target = None
    if args.dv is not None or args.dw is not None:
        if args.dv is None or args.dw is None:
            raise InputError("--dv and --dw must be given together")
        target = SearchTarget(args.dv, args.dw, Theorem(args.theorem),
                              t_v=args.tv, t_w=args.tw)
    hits = search_phi(args.lam, args.bound, target=target)
    if args.json:
        doc = {"schema": 1, "lambda": args.lam, "bound": args.bound,
               "target": None if target is None else {
                   "d_v": target.d_v, "d_w": target.d_w,
                   "theorem": target.theorem.value},
               "hits": [{"phi": list(hit.phi.entries()),
                         "report": hit.report.to_json() if hit.report else None}
                        for hit in hits]}
        print(json.dumps(doc, indent=2))
    else:
        for hit in hits:
            line = ",".join(str(x) for x in hit.phi.entries())
            if hit.report is not None:
                line += (f"   rk_xi_v={hit.report.rk_xi_v}"
                         f" rk_phi_w={hit.report.rk_phi_w}")
            print(line)
        print(f"# {len(hits)} hit(s)", file=sys.stderr)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fmlat",
        description="Exact Fourier-Mukai lattice calculus for elliptic K3 surfaces")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true",
                       help="machine-readable output (schema 1, exact numbers)")

    p = sub.add_parser("verify", help="run the built-in verification suite")
    p.add_argument("--d-range", default="1..12", metavar="LO..HI",
                   help="kernel degrees to check (within 1..64)")
    add_json(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("matrix", help="print a named operator matrix")
    p.add_argument("name", help="matrix name, e.g. FM_Pd, A_S, TensorL1")
    p.add_argument("--d", type=int, default=None, help="kernel degree parameter")
    p.add_argument("--divisor", default=None, metavar="S,T",
                   help="divisor s·sigma + t·f for A_TL")
    add_json(p)
    p.set_defaults(func=_cmd_matrix)

    p = sub.add_parser("transform", help="apply a named matrix to a class vector")
    p.add_argument("--matrix", required=True, help="matrix name")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--divisor", default=None, metavar="S,T")
    p.add_argument("--vector", required=True, metavar="R,S,T,P",
                   help="comma-separated exact values (n/d rationals accepted)")
    add_json(p)
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("chi", help="Euler characteristic of a tensor product")
    p.add_argument("--surface", default=None, help="surface description file")
    p.add_argument("--v", required=True, help="first class vector")
    p.add_argument("--w", required=True, help="second class vector")
    add_json(p)
    p.set_defaults(func=_cmd_chi)

    p = sub.add_parser("sd-check", help="Strange Duality hypothesis check")
    p.add_argument("--phi", required=True, metavar="C,A,E,B",
                   help="kernel matrix entries")
    p.add_argument("--lambda", dest="lam", type=int, default=1,
                   help="smallest positive fiber degree (default 1)")
    p.add_argument("--dv", type=int, required=True, help="fiber degree of v")
    p.add_argument("--dw", type=int, required=True, help="fiber degree of w")
    p.add_argument("--theorem", choices=["k3", "general"], default="k3")
    p.add_argument("--tv", type=int, default=None, help="moduli dimension for v")
    p.add_argument("--tw", type=int, default=None, help="moduli dimension for w")
    p.add_argument("--surface", default=None, help="surface description file")
    p.add_argument("--v", default=None, help="optional class vector for v")
    p.add_argument("--w", default=None, help="optional class vector for w")
    p.add_argument("--attest-no-higher-cohomology", action="store_true",
                   help="attest that O(div v + div w) has no higher cohomology")
    add_json(p)
    p.set_defaults(func=_cmd_sd_check)

    p = sub.add_parser("search", help="enumerate admissible kernel matrices")
    p.add_argument("--lambda", dest="lam", type=int, default=1)
    p.add_argument("--bound", type=int, required=True,
                   help="bound on |c|, |a|, |e|, |b|")
    p.add_argument("--dv", type=int, default=None)
    p.add_argument("--dw", type=int, default=None)
    p.add_argument("--theorem", choices=["k3", "general"], default="k3")
    p.add_argument("--tv", type=int, default=None)
    p.add_argument("--tw", type=int, default=None)
    add_json(p)
    p.set_defaults(func=_cmd_search)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FmlatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
