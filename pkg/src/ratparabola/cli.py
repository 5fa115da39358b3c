"""Command-line front end.

Exit codes: 0 on a completed computation (including negative verdicts from
every subcommand except ``verify``), 1 when ``verify`` finds an irrational
distance, 2 on invalid input or an exceeded resource cap.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import constructions as con
from .errors import CrosscheckError, ParseError, ResourceError
from .exact import bit_cap, parse_element, to_fraction
from .exact.rational import DEFAULT_BIT_CAP
from .parabola import lift_point, pairwise_matrix
from .pythagorean import conjecture_difference_search
from .search import DEFAULT_MAX_VERTICES, build_distance_graph, find_rational_cliques, oracle_crosscheck

log = logging.getLogger("ratparabola")

EXIT_OK, EXIT_IRRATIONAL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return to_fraction(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {v}")
    return v


def _dump_json(payload: object) -> str:
    return json.dumps(payload, indent=2) + "\n"


def read_points(path: str) -> list:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, list) or not all(isinstance(s, str) for s in data):
        raise InputError(f"{path}: expected a JSON array of expression strings")
    points = []
    for idx, text in enumerate(data):
        try:
            points.append(lift_point(parse_element(text)))
        except ParseError as exc:
            raise InputError(f"{path}: point {idx}: {exc}") from None
        except ValueError as exc:
            raise InputError(f"{path}: point {idx}: {exc}") from None
    return points


def cmd_verify(args: argparse.Namespace) -> tuple[int, str]:
    points = read_points(args.points_file)
    log.info("verify: %d points", len(points))
    try:
        matrix = pairwise_matrix(points, digits=args.precision)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    payload = matrix.to_json(args.precision)
    code = EXIT_OK if matrix.all_rational else EXIT_IRRATIONAL
    return code, _dump_json(payload)


def _diamond_params(args: argparse.Namespace) -> con.DiamondParams:
    return con.DiamondParams(
        R=args.r, a0=args.a0, b0=args.b0, step_a=args.step_a, step_b=args.step_b, N=args.n
    )


def cmd_diamond(args: argparse.Namespace) -> tuple[int, str]:
    params = _diamond_params(args)
    log.info("diamond: building %dx%d grid", params.N, params.N)
    grid = con.diamond_grid(params)
    log.info("diamond: verifying %d realized cells", len(grid.realized_cells()))
    report = con.verify_grid(grid)
    return EXIT_OK, _dump_json(report.to_json())


def cmd_search(args: argparse.Namespace) -> tuple[int, str]:
    log.info("search: building graph xmax=%s qmax=%d", args.xmax, args.qmax)
    graph = build_distance_graph(args.xmax, args.qmax, max_vertices=args.max_vertices)
    log.info("search: %d vertices, %d edges; listing %d-cliques", len(graph.vertices), len(graph.edges), args.n)
    cliques = find_rational_cliques(graph, args.n)
    if args.graph:
        with open(args.graph, "w", encoding="utf-8") as fh:
            fh.write(_dump_json(graph.to_json()))
    return EXIT_OK, _dump_json([[str(x) for x in c] for c in cliques])


def cmd_conjecture(args: argparse.Namespace) -> tuple[int, str]:
    log.info("conjecture: bound %d", args.bound)
    return EXIT_OK, _dump_json(conjecture_difference_search(args.bound).to_json())


def cmd_plot(args: argparse.Namespace) -> tuple[int, str]:
    if args.kind == "diamond_grid":
        params: dict = dict(R=args.r, a0=args.a0, b0=args.b0, step_a=args.step_a, step_b=args.step_b, N=args.n)
    else:
        if args.c is None:
            raise InputError(f"--c is required for {args.kind}")
        params = {"C": args.c}
        if args.kind == "hyperbola32":
            params["r"] = args.r
    header, rows = con.emit_plot_samples(args.kind, params, args.lo, args.hi, args.count, digits=args.precision)
    return EXIT_OK, con.samples_to_csv(header, rows)


def cmd_hyperbola(args: argparse.Namespace) -> tuple[int, str]:
    return EXIT_OK, _dump_json(con.hyperbola_report(con.HyperbolaParams(args.c), args.s))


def cmd_crosscheck(args: argparse.Namespace) -> tuple[int, str]:
    return EXIT_OK, _dump_json(oracle_crosscheck(args.qmax, args.xmax).to_json())


def _add_diamond_flags(p: argparse.ArgumentParser, r_default: Optional[str] = "5") -> None:
    p.add_argument("--r", type=_rational, default=_rational(r_default) if r_default else None, help="radicand R (p/q), default 5")
    p.add_argument("--a0", type=_rational, default=Fraction(7))
    p.add_argument("--b0", type=_rational, default=Fraction(1))
    p.add_argument("--step-a", type=_rational, default=Fraction(1))
    p.add_argument("--step-b", type=_rational, default=Fraction(1))
    p.add_argument("--n", type=_positive_int, default=3, help="grid size N")


def _add_global_flags(p: argparse.ArgumentParser, defaults: bool) -> None:
    def dflt(value: object) -> object:
        return value if defaults else argparse.SUPPRESS

    p.add_argument("--precision", type=_positive_int, default=dflt(50), help="decimal digits for numeric output (default 50)")
    p.add_argument("--bit-cap", type=_positive_int, default=dflt(DEFAULT_BIT_CAP), help="max coefficient bit length (default 1000000)")
    p.add_argument("--output", default=dflt(None), help="write the result here instead of standard output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ratparabola", description=__doc__.splitlines()[0])
    _add_global_flags(parser, defaults=True)
    # the same flags are accepted after the subcommand name
    common = argparse.ArgumentParser(add_help=False)
    _add_global_flags(common, defaults=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help)

    p = add("verify", help="pairwise distance verdicts for a JSON point file")
    p.add_argument("points_file")
    p.set_defaults(func=cmd_verify)

    p = add("diamond", help="build and verify a conjugate-factor grid")
    _add_diamond_flags(p)
    p.set_defaults(func=cmd_diamond)

    p = add("search", help="list rational-distance cliques among small rationals")
    p.add_argument("--xmax", type=_rational, required=True)
    p.add_argument("--qmax", type=_positive_int, required=True)
    p.add_argument("--n", type=_positive_int, default=3)
    p.add_argument("--max-vertices", type=_positive_int, default=DEFAULT_MAX_VERTICES)
    p.add_argument("--graph", help="also write the distance graph JSON here")
    p.set_defaults(func=cmd_search)

    p = add("conjecture", help="search for repeated differences of Pythagorean fractions")
    p.add_argument("--bound", type=_positive_int, required=True)
    p.set_defaults(func=cmd_conjecture)

    p = add("plot", help="CSV samples of a curve family")
    p.add_argument("--kind", choices=["hyperbola31", "hyperbola32", "diamond_grid"], required=True)
    p.add_argument("--c", type=_rational)
    p.add_argument("--lo", type=_rational, default=Fraction(1))
    p.add_argument("--hi", type=_rational, default=Fraction(3))
    p.add_argument("--count", type=_positive_int, default=5)
    _add_diamond_flags(p)
    p.set_defaults(func=cmd_plot)

    p = add("hyperbola", help="first-quadrant feasibility of x - y = C*sqrt(1 + (x + y)^2)")
    p.add_argument("--c", type=_rational, required=True)
    p.add_argument("--s", type=_rational)
    p.set_defaults(func=cmd_hyperbola)

    p = add("crosscheck", help="tower verdicts vs the integer criterion on small rationals")
    p.add_argument("--qmax", type=_positive_int, required=True)
    p.add_argument("--xmax", type=_rational, default=Fraction(1))
    p.set_defaults(func=cmd_crosscheck)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        with bit_cap(args.bit_cap):
            code, text = args.func(args)
    except (InputError, ResourceError, CrosscheckError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
