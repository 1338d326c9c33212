"""Command line front end.

    kpakns expand EXPR
    kpakns phi EXPR --target kp|akns [--mode abstract|matrix2|matrix3]
    kpakns run CASE|all
    kpakns golden [--golden-regen]

Exit codes: 0 pass, 1 fail, 2 insufficient depth, 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import expr as ex
from . import qshuffle as qs
from .cases import CASES, INSUFFICIENT, PASS, REPORT_SCHEMA, CaseConfig, run_case
from .errors import InsufficientDepth
from .matrix import Matrix
from .ncpoly import NCPoly, to_json_obj, to_latex, to_text

EXIT_PASS, EXIT_FAIL, EXIT_DEPTH, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kpakns", description="Quasi-shuffle identities and their KP / AKNS images.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, depth_help="truncation depth"):
        sp.add_argument("--depth", type=int, default=None, help=depth_help)
        sp.add_argument("--flows", type=int, default=3, help="highest flow t_n")
        sp.add_argument("--format", choices=("text", "latex", "json"), default="text")

    sp = sub.add_parser("expand", help="normal form of an expression in A(P)")
    sp.add_argument("expr")
    sp.add_argument("--format", choices=("text", "latex", "json"), default="text")

    sp = sub.add_parser("phi", help="image of an expression under Phi")
    sp.add_argument("expr")
    sp.add_argument("--target", choices=("kp", "akns"), required=True)
    sp.add_argument("--mode", choices=("abstract", "matrix2", "matrix3"), default="abstract")
    common(sp, "K for kp (default 6), series depth for akns (default 8)")

    sp = sub.add_parser("run", help="run a named verification case ('all' runs every case)")
    sp.add_argument("case")
    sp.add_argument("--mode", choices=("abstract", "matrix2", "matrix3"), default="abstract")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=500)
    common(sp)

    sp = sub.add_parser("list", help="list case names")

    sp = sub.add_parser("golden", help="compare (or regenerate) the stored Lax-table golden file")
    sp.add_argument("--depth", type=int, default=6)
    sp.add_argument("--flows", type=int, default=3)
    sp.add_argument("--golden-regen", action="store_true", help="rewrite the golden file")
    return p


def _element_latex(a: qs.AlgElement) -> str:
    return qs.format_element(a).replace("*", r" \cdot ")


def _emit(value, fmt: str) -> str:
    if fmt == "json":
        if isinstance(value, NCPoly):
            obj = to_json_obj(value)
        elif isinstance(value, Matrix):
            obj = {"matrix": [[to_json_obj(e) for e in row] for row in value.rows]}
        else:
            obj = {"terms": [{"coeff": str(c), "word": list(w)} for w, c in value.sorted_terms()]}
        return json.dumps(obj, sort_keys=True)
    if isinstance(value, qs.AlgElement):
        return _element_latex(value) if fmt == "latex" else qs.format_element(value)
    if isinstance(value, Matrix):
        return value.to_latex() if fmt == "latex" else str(value)
    return to_latex(value) if fmt == "latex" else to_text(value)


def _parse_expr(text: str) -> qs.AlgElement:
    try:
        return ex.evaluate(ex.parse(text))
    except ex.ExprSyntaxError as exc:
        raise UsageError(str(exc)) from exc


def phi_value(element: qs.AlgElement, target: str, mode: str = "abstract", depth: Optional[int] = None, flows: int = 3):
    if target == "kp":
        from .psido import phi_kp, with_retry

        value, _ = with_retry(lambda ctx: phi_kp(element, ctx), depth or 6, flows)
        return value
    from .laurent import abstract_context, phi_akns

    if mode == "abstract":
        K = depth or 8
        try:
            return phi_akns(element, abstract_context(K, flows))
        except InsufficientDepth:
            return phi_akns(element, abstract_context(K + 2, flows))
    from .reduction import derive_v_chain_v3, instantiate_2x2

    inst = instantiate_2x2(depth or 5) if mode == "matrix2" else derive_v_chain_v3(depth or 4)
    return phi_akns(element, inst.context())


def _cmd_run(args) -> int:
    names = list(CASES) if args.case == "all" else [args.case]
    if any(n not in CASES for n in names):
        raise UsageError(f"unknown case {args.case!r}; known: {', '.join(CASES)}")
    cfg = CaseConfig(depth=args.depth, flows=args.flows, mode=args.mode, seed=args.seed, samples=args.samples)
    reports = [run_case(n, cfg) for n in names]
    if args.format == "json":
        if len(reports) == 1:
            print(json.dumps(reports[0].to_json_obj(), sort_keys=True, indent=1))
        else:
            print(json.dumps({"schema": REPORT_SCHEMA, "cases": [r.to_json_obj() for r in reports]}, sort_keys=True, indent=1))
    else:
        for r in reports:
            print(r.to_text(args.format))
    verdicts = {r.verdict for r in reports}
    if verdicts == {PASS}:
        return EXIT_PASS
    if verdicts <= {PASS, INSUFFICIENT}:
        return EXIT_DEPTH
    return EXIT_FAIL


def _cmd_golden(args) -> int:
    from .golden import compare_golden, golden_path, write_golden

    if args.golden_regen:
        print(f"wrote {write_golden(args.depth, args.flows)}")
        return EXIT_PASS
    if not golden_path(args.depth, args.flows).exists():
        raise UsageError(f"no golden file for K={args.depth}, N={args.flows}; use --golden-regen")
    diffs = compare_golden(args.depth, args.flows)
    if diffs:
        print("golden mismatch: " + ", ".join(diffs))
        return EXIT_FAIL
    print(f"golden values match ({golden_path(args.depth, args.flows).name})")
    return EXIT_PASS


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "expand":
            print(_emit(_parse_expr(args.expr), args.format))
            return EXIT_PASS
        if args.command == "phi":
            element = _parse_expr(args.expr)
            print(_emit(phi_value(element, args.target, args.mode, args.depth, args.flows), args.format))
            return EXIT_PASS
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "list":
            print("\n".join(CASES))
            return EXIT_PASS
        if args.command == "golden":
            return _cmd_golden(args)
    except UsageError as exc:
        print(f"kpakns: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InsufficientDepth as exc:
        print(f"kpakns: insufficient depth: {exc}", file=sys.stderr)
        return EXIT_DEPTH
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
