"""Command-line interface.

Every subcommand prints one JSON document (or a CSV table) on stdout.
Exit codes: 0 success, 2 malformed input, 3 a mathematical precondition
fails, 4 the request is refused as too large.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import affine, brst, center, nilp, wmodels
from .rational import format_rational, format_vector, parse_rational
from .rootsys import InvalidCartanType, build_chevalley, build_root_system

SCHEMA_VERSION = 1
MAX_CLASSICAL_DEGREE = 10
MAX_QUANTUM_DEGREE = 8

EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_RESOURCE = 4


class Failure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# -- argument types ----------------------------------------------------------------

def _cartan(text: str):
    try:
        return build_root_system(text)
    except InvalidCartanType as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _degree(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return v


# -- subcommands -------------------------------------------------------------------

def _weights_json(weights) -> list:
    return [format_vector(w.finite_part) for w in weights]


def cmd_minimal_models(args) -> tuple:
    rs = args.type
    try:
        rec = wmodels.minimal_series(rs, args.p, args.q)
    except (ValueError, affine.UnsupportedRegime) as exc:
        raise Failure(EXIT_PRECONDITION, str(exc)) from None
    return rec.to_json(), rec.to_csv()


def cmd_admissible(args) -> tuple:
    rs, k = args.type, args.k
    info = affine.is_admissible_number(rs, k)
    if info.p is None:
        raise Failure(EXIT_PRECONDITION, info.reason)
    out = {
        "schema_version": SCHEMA_VERSION,
        "type": rs.label,
        "k": format_rational(k),
        "admissible": info.admissible,
        "p": info.p,
        "q": info.q,
        "reason": info.reason,
        "nondegenerate": wmodels.is_nondegenerate(rs, k),
    }
    rows = [["type", "k", "set", "index"] + [f"m{i + 1}" for i in range(rs.rank)]]
    if info.admissible:
        try:
            pr = affine.enumerate_Pr_k(rs, k)
        except affine.ResourceRefused as exc:
            raise Failure(EXIT_RESOURCE, str(exc)) from None
        nondeg = [w for w in pr if affine.is_nondegenerate_weight(rs, w)]
        out["level"] = format_rational(k)
        out["pr_k"] = {"count": len(pr), "weights": _weights_json(pr)}
        out["pr_k_nondeg"] = {"count": len(nondeg), "weights": _weights_json(nondeg)}
        for name, ws in (("pr_k", pr), ("pr_k_nondeg", nondeg)):
            for n, w in enumerate(ws):
                rows.append([rs.label, format_rational(k), name, n] + format_vector(w.finite_part))
    return out, _csv(rows)


def _lagrangian_choice(dg, nd, which: str):
    return nilp.lagrangian(dg, nd, reverse=(which == "last"))


def cmd_brst(args) -> tuple:
    rs = args.type
    cb = build_chevalley(rs)
    try:
        nd = nilp.nilpotent_from_label(cb, args.nilpotent)
    except (ValueError, nilp.UnsupportedType) as exc:
        raise Failure(EXIT_PRECONDITION, str(exc)) from None
    dg = nilp.dynkin_grading(cb, nd)
    kind = args.kind
    limit = MAX_CLASSICAL_DEGREE if kind == "classical" else MAX_QUANTUM_DEGREE
    if args.max_degree > limit:
        raise Failure(EXIT_RESOURCE, f"max-degree {args.max_degree} exceeds the limit {limit} "
                                     f"for the {kind} complex")
    try:
        if kind == "classical":
            c = brst.classical_complex(cb, dg, nd, args.max_degree, max_size=args.max_size)
            report = brst.cohomology(c, exact=args.exact, jobs=args.jobs)
        elif kind == "quantum":
            c = brst.quantum_complex(cb, dg, nd, args.max_degree, max_size=args.max_size)
            report = brst.cohomology(c, exact=args.exact, jobs=args.jobs)
        else:
            m = nilp.whittaker_subalgebra(dg, nd, _lagrangian_choice(dg, nd, args.lagrangian))
            report = brst.whittaker_reduction(cb, dg, nd, m, args.max_degree, exact=args.exact,
                                              jobs=args.jobs, max_size=args.max_size)
    except brst.TruncationOverflow as exc:
        raise Failure(EXIT_RESOURCE, str(exc)) from None
    out = report.to_json()
    rows = [["complex", "type", "nilpotent", "p", "kappa", "dim"]]
    for p, kappa, dim in out["dims"]:
        rows.append([out["complex"], out["type"], out["nilpotent"], p, kappa, dim])
    return out, _csv(rows)


def cmd_variety(args) -> tuple:
    rs = args.type
    cb = build_chevalley(rs)
    try:
        x = nilp.parse_element(cb, args.element)
    except ValueError as exc:
        raise Failure(EXIT_PARSE, str(exc)) from None
    r = rs.lacing_rv
    short = r > 1 and args.q % r == 0
    try:
        member = nilp.variety_membership(rs, cb, x, args.q)
    except nilp.UnsupportedType as exc:
        raise Failure(EXIT_PRECONDITION, str(exc)) from None
    out = {
        "schema_version": SCHEMA_VERSION,
        "type": rs.label,
        "q": args.q,
        "element": args.element,
        "coordinates": format_vector(x),
        "test": "short_root_module" if short else "adjoint",
        "power": 2 * args.q // r if short else 2 * args.q,
        "member": member,
    }
    rows = [["type", "q", "element", "test", "power", "member"],
            [rs.label, args.q, args.element, out["test"], out["power"], int(member)]]
    return out, _csv(rows)


def _poly_json(p: dict) -> list:
    return [[list(e), format_rational(c)] for e, c in sorted(p.items())]


def cmd_jacobian(args) -> tuple:
    rs = args.type
    cb = build_chevalley(rs)
    try:
        gens = center.casimir_generators(cb)
    except NotImplementedError as exc:
        raise Failure(EXIT_PRECONDITION, str(exc)) from None
    verdict = center.jacobian_check(cb, gens)
    images = [center.harish_chandra_image(cb, z) for z in gens]
    out = {
        "schema_version": SCHEMA_VERSION,
        "type": rs.label,
        "generator_degrees": [center.poly_degree(p) for p in images],
        "harish_chandra_images": [_poly_json(p) for p in images],
        "determinant": _poly_json(verdict.determinant),
        "coroot_product": _poly_json(verdict.coroot_product),
        "scalar": format_rational(verdict.scalar),
        "proportional": verdict.proportional,
    }
    rows = [["type", "polynomial", "exponents", "coefficient"]]
    for name in ("determinant", "coroot_product"):
        for e, c in out[name]:
            rows.append([rs.label, name, " ".join(str(x) for x in e), c])
    return out, _csv(rows)


def _csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wminimal", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", required=True, type=_cartan, help="Cartan type such as A2")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", help="write to this file instead of stdout")
    common.add_argument("--jobs", type=_positive_int, default=None,
                        help="worker threads for rank computations (default: all cores)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("minimal-models", parents=[common],
                       help="central charge and simple modules of a minimal series")
    p.add_argument("--p", required=True, type=_positive_int)
    p.add_argument("--q", required=True, type=_positive_int)
    p.set_defaults(func=cmd_minimal_models)

    p = sub.add_parser("admissible", parents=[common], help="admissibility of a level")
    p.add_argument("--k", required=True, type=_rational)
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("brst", parents=[common], help="truncated BRST cohomology")
    p.add_argument("--nilpotent", required=True, help='"principal", "minimal" or "p=2,1"')
    p.add_argument("--max-degree", required=True, type=_degree, help="Kazhdan truncation N")
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--classical", dest="kind", action="store_const", const="classical")
    kind.add_argument("--quantum", dest="kind", action="store_const", const="quantum")
    kind.add_argument("--whittaker", dest="kind", action="store_const", const="whittaker")
    p.add_argument("--lagrangian", choices=("first", "last"), default="first",
                   help="greedy Lagrangian built from the first or last basis vectors")
    p.add_argument("--exact", action="store_true", help="rational ranks only")
    p.add_argument("--max-size", type=_positive_int, default=400000,
                   help="refuse complexes with more basis monomials")
    p.set_defaults(func=cmd_brst, kind="classical")

    p = sub.add_parser("variety", parents=[common],
                       help="nilpotency test attached to a denominator q")
    p.add_argument("--q", required=True, type=_positive_int)
    p.add_argument("--element", required=True, help='e.g. "e1+e2", "h1", "principal"')
    p.set_defaults(func=cmd_variety)

    p = sub.add_parser("jacobian", parents=[common],
                       help="Jacobian of Harish-Chandra images of Casimir elements")
    p.set_defaults(func=cmd_jacobian)
    return parser


# options whose values may legitimately start with "-"
_SIGNED = ("--k", "--element")


def _glue_signed(argv: Sequence[str]) -> list:
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _SIGNED:
            val = next(it, None)
            out.append(tok if val is None else f"{tok}={val}")
        else:
            out.append(tok)
    return out


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    argv = _glue_signed(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, table = args.func(args)
    except Failure as exc:
        print(f"error: {exc}", file=stderr)
        return exc.code
    text = table if args.format == "csv" else json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())
