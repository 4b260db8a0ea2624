"""Command-line interface: ``jordan-double <command> ...``."""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from . import homology, modules, quiver
from .algebra import to_text
from .io import SchemaError, dumps_module, ext_table_to_json, read_module, write_text_atomic
from .linalg import format_rational, parse_rational
from .parser import ParseError, parse_element

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

DESCRIPTION = """\
Exact computations in the Hopf algebra D (double of the Jordan plane) and its
finite-dimensional modules.

ASCII names: xi stands for the Cartan-type generator and gi for g^-1.
Expressions use x y g gi xi u v, rationals like 3/4, + - * ^ and parentheses.

A MODULE argument is either a JSON module file or a shorthand:
  L<n>          simple module L(n), e.g. L2
  T<n>,<m>      T(n,m), e.g. T2,1
  S<n>,<gamma>  S_gamma(n), e.g. S3,1

Exit codes: 0 pass, 1 check failure, 2 usage or parse error, 3 I/O or schema error.
Set JORDAN_DOUBLE_WORKERS to fan quiver cells out to worker processes.
"""


class UsageError(Exception):
    pass


_SHORT = re.compile(r"^([LTS])\(?\s*(-?\d+(?:/\d+)?(?:\s*,\s*-?\d+(?:/\d+)?)*)\s*\)?$")


def load_module(arg: str) -> modules.FdModule:
    if os.path.exists(arg):
        return read_module(arg)
    m = _SHORT.match(arg.strip())
    if not m:
        raise FileNotFoundError(f"no such module file: {arg}")
    kind, params = m.group(1), [p.strip() for p in m.group(2).split(",")]
    try:
        if kind == "L" and len(params) == 1:
            return modules.build_simple(int(params[0]))
        if kind == "T" and len(params) == 2:
            return modules.build_T(int(params[0]), int(params[1]))
        if kind == "S" and len(params) == 2:
            return modules.build_S(int(params[0]), parse_rational(params[1]))
    except ValueError as exc:
        raise UsageError(f"{arg}: {exc}") from None
    raise UsageError(f"bad module shorthand: {arg}")


def _emit(text: str, out: str | None) -> None:
    if out:
        write_text_atomic(out, text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=1, default=lambda o: format_rational(o) if isinstance(o, Fraction) else str(o))


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer")
    return v


# -- command handlers ------------------------------------------------------


def cmd_nf(a) -> int:
    print(to_text(parse_element(a.expr)))
    return EXIT_OK


def cmd_hopf_check(a) -> int:
    from .hopf import hopf_report
    rep = hopf_report(degree=a.degree, samples=a.samples, seed=a.seed)
    print(_json(rep))
    return EXIT_OK if rep["ok"] else EXIT_FAIL


def cmd_build(a) -> int:
    k, p = a.kind, a.params
    need = {"L": 1, "T": 2, "S": 2, "verma": 2, "verma2": 4, "dual": 1, "tensor": 2}[k]
    if len(p) != need:
        raise UsageError(f"module build {k} takes {need} argument(s), got {len(p)}")
    try:
        if k == "L":
            M = modules.build_simple(int(p[0]))
        elif k == "T":
            M = modules.build_T(int(p[0]), int(p[1]))
        elif k == "S":
            M = modules.build_S(int(p[0]), parse_rational(p[1]))
        elif k == "verma":
            M = modules.build_verma_trunc(int(p[0]), int(p[1])).module
        elif k == "verma2":
            M = modules.build_verma2_trunc(int(p[0]), parse_rational(p[1]), parse_rational(p[2]),
                                           int(p[3])).module
        elif k == "dual":
            M = modules.dual(load_module(p[0]))
        else:
            M = modules.tensor(load_module(p[0]), load_module(p[1]))
    except ValueError as exc:
        if isinstance(exc, SchemaError):
            raise
        raise UsageError(str(exc)) from None
    _emit(dumps_module(M), a.output)
    return EXIT_OK


def cmd_verify(a) -> int:
    M = load_module(a.file)
    rep = modules.verify_module(modules.as_truncation(M))
    out = rep.as_dict()
    out["dim"] = M.dim
    out["failures"] = rep.failures()
    print(_json(out))
    return EXIT_OK if rep.ok else EXIT_FAIL


def _graded(fn):
    def run(a) -> int:
        M = load_module(a.file)
        try:
            print(_json(fn(M)))
        except modules.NotSuitablyGraded as exc:
            print(_json({"error": str(exc)}))
            return EXIT_FAIL
        return EXIT_OK
    return run


def _weights(M):
    return {"weights": {str(k): v for k, v in sorted(modules.weight_decomposition(M).dims().items(),
                                                      reverse=True)}}


def _hw(M):
    hw, rk = modules.hw_data(M)
    return {"hw": hw, "hw_rank": rk}


def _hw_series(M):
    steps = modules.hw_series(M)
    return {"length": len(steps),
            "subquotients": [{"dim": S.dim, "hw": modules.hw_data(S)[0], "hw_rank": modules.hw_data(S)[1]}
                             for S in steps]}


def cmd_hom(a) -> int:
    H = homology.hom_space(load_module(a.source), load_module(a.target))
    print(_json({"dim": H.dim}))
    return EXIT_OK


def cmd_ext(a) -> int:
    quot, sub = load_module(a.quot), load_module(a.sub)
    r = homology.ext1(quot, sub)
    flag = None
    if quot.provenance.get("kind") == "L" and sub.provenance.get("kind") == "L" \
            and quot.provenance.get("n") == 0 and sub.provenance.get("n") == 0:
        flag = "computed value differs from the reference value dim Ext^1(L(0),L(0)) = 1"
    if a.json:
        print(_json({"dim": r.dimension, "cocycles": r.cocycle_space_dim, "coboundaries": r.coboundary_dim,
                     "flag": flag}))
    else:
        print(r.dimension)
        if flag:
            print(f"note: {flag}", file=sys.stderr)
    if a.representative:
        if r.dimension == 0:
            raise UsageError("Ext^1 is zero; there is no nonsplit representative")
        coeffs = [1] + [0] * (r.dimension - 1)
        write_text_atomic(a.representative, dumps_module(homology.build_extension(r, coeffs)) + "\n")
    return EXIT_OK


def cmd_socle(a) -> int:
    S = homology.socle(load_module(a.file))
    _emit(dumps_module(S), a.output)
    return EXIT_OK


def cmd_factors(a) -> int:
    print(_json({"factors": homology.composition_factors(load_module(a.file))}))
    return EXIT_OK


def cmd_indec(a) -> int:
    res = homology.is_indecomposable(load_module(a.file))
    print(res if isinstance(res, str) else str(res).lower())
    return EXIT_OK


def cmd_quiver(a) -> int:
    q = quiver.gabriel_quiver(a.max, forced_loop=a.forced_loop)
    table = {(i, j): q.multiplicity(i, j) for i in q.vertices for j in q.vertices}
    report = {"max_n": a.max, "variant": "forced-loop" if a.forced_loop else "computed",
              "ext_table": ext_table_to_json(table), "flags": q.flags}
    if a.dot:
        write_text_atomic(a.dot, quiver.to_dot(q))
    print(_json(report))
    return EXIT_OK


def _subset(text: str) -> list[int]:
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers") from None


def cmd_wildness(a) -> int:
    if a.subset is not None and any(s < 0 or s > a.max for s in a.subset):
        raise UsageError("subset vertices must lie in 0..max")
    rep = quiver.representation_type_report(a.max, a.subset, forced_loop=a.forced_loop)
    print(_json(rep))
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jordan-double", description=DESCRIPTION,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("nf", help="print the PBW normal form of an expression (names: x y g gi xi u v)")
    s.add_argument("expr")
    s.set_defaults(func=cmd_nf)

    s = sub.add_parser("hopf-check", help="relations R1-R15 and sampled Hopf axioms")
    s.add_argument("--degree", type=_nonneg, default=5, help="max word length of random samples")
    s.add_argument("--samples", type=_nonneg, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_hopf_check)

    m = sub.add_parser("module", help="build or verify modules").add_subparsers(dest="action", required=True)
    b = m.add_parser("build", help="L n | T n m | S n gamma | verma n depth | verma2 n lambda mu depth | "
                                   "dual MODULE | tensor MODULE MODULE")
    b.add_argument("kind", choices=["L", "T", "S", "verma", "verma2", "dual", "tensor"])
    b.add_argument("params", nargs="*")
    b.add_argument("-o", "--output", help="write JSON here instead of stdout")
    b.set_defaults(func=cmd_build)
    v = m.add_parser("verify", help="relation and nilpotency report")
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)

    for name, fn, helptext in (("weights", _weights, "weight space dimensions"),
                               ("hw", _hw, "highest weight and its rank"),
                               ("hw-series", _hw_series, "subquotients of the hw-series")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("file", metavar="MODULE")
        s.set_defaults(func=_graded(fn))

    s = sub.add_parser("hom", help="dimension of Hom(SOURCE, TARGET)")
    s.add_argument("source", metavar="SOURCE")
    s.add_argument("target", metavar="TARGET")
    s.set_defaults(func=cmd_hom)

    s = sub.add_parser("ext", help="dim Ext^1(QUOT, SUB): extensions 0 -> SUB -> E -> QUOT -> 0")
    s.add_argument("quot", metavar="QUOT")
    s.add_argument("sub", metavar="SUB")
    s.add_argument("--json", action="store_true", help="full JSON result")
    s.add_argument("--representative", metavar="OUT", help="write the first nonsplit extension module")
    s.set_defaults(func=cmd_ext)

    s = sub.add_parser("socle", help="socle as a module JSON")
    s.add_argument("file", metavar="MODULE")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_socle)

    s = sub.add_parser("factors", help="composition factors (highest weights)")
    s.add_argument("file", metavar="MODULE")
    s.set_defaults(func=cmd_factors)

    s = sub.add_parser("indec", help="indecomposability: true, false or undetermined")
    s.add_argument("file", metavar="MODULE")
    s.set_defaults(func=cmd_indec)

    s = sub.add_parser("quiver", help="Ext^1 table of L(0..N) and optional DOT export")
    s.add_argument("--max", type=_nonneg, required=True, metavar="N")
    s.add_argument("--dot", metavar="OUT")
    s.add_argument("--forced-loop", action="store_true", help="force the reference loop at vertex 0")
    s.set_defaults(func=cmd_quiver)

    s = sub.add_parser("wildness", help="separated-quiver representation type report")
    s.add_argument("--max", type=_nonneg, required=True, metavar="N")
    s.add_argument("--subset", type=_subset, help="comma-separated vertices (default: three largest even)")
    s.add_argument("--forced-loop", action="store_true")
    s.set_defaults(func=cmd_wildness)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
