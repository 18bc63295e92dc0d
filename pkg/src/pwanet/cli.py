"""Command line front end.

Subcommands: compile a network file into a PWA file, evaluate either kind
of file at an exact rational point, check univalence, count non-empty
regions, and export an SMT script. Exit codes are stable: 0 success,
2 parse problem, 3 dimension problem, 4 non-PWA layer, 5 univalence
violation. Output is deterministic byte for byte.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import formats, network, pwa
from .formats import ParseError
from .numeric import ColVec, DimensionError, format_scalar, parse_scalar
from .network import PlainLayer, UnknownLayer

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DIMENSION = 3
EXIT_NON_PWA = 4
EXIT_UNIVALENCE = 5


class _Failure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def _jobs() -> int:
    raw = os.environ.get("PWANET_JOBS", "1")
    try:
        jobs = int(raw)
    except ValueError:
        jobs = 0
    if jobs < 1:
        raise _Failure(EXIT_PARSE, f"error: PWANET_JOBS must be a positive integer, got {raw!r}")
    return jobs


def _parse_point(text: str) -> ColVec:
    stripped = text.strip()
    if not stripped:
        return ColVec([])
    try:
        return ColVec(parse_scalar(part) for part in stripped.split(","))
    except ValueError as exc:
        raise ParseError(f"point: {exc}") from None


def _format_vec(v: ColVec) -> str:
    return ", ".join(format_scalar(e) for e in v)


def _cmd_compile(args) -> int:
    net = formats.parse_network(_read(args.network))
    problem = network.validate_dims(net)
    if problem is not None:
        raise _Failure(EXIT_DIMENSION, f"error: {problem.message}")
    fn = network.transform(net)
    if fn is None:
        index = next(
            i
            for i, layer in enumerate(net.layers)
            if isinstance(layer, (PlainLayer, UnknownLayer))
        )
        raise _Failure(EXIT_NON_PWA, f"error: layer {index}: not piecewise-affine")
    if args.check_univalence:
        pwa.check_univalence(fn, jobs=_jobs())
    if args.prune:
        fn = pwa.prune_empty(fn)
    _write(args.out, formats.serialize_pwa(fn))
    return EXIT_OK


def _cmd_eval(args) -> int:
    point = _parse_point(args.point)
    if args.pwa:
        fn = formats.parse_pwa(_read(args.pwa))
        value = pwa.evaluate(fn, point)
        print("outside domain" if value is None else _format_vec(value))
    else:
        net = formats.parse_network(_read(args.network))
        problem = network.validate_dims(net)
        if problem is not None:
            raise _Failure(EXIT_DIMENSION, f"error: {problem.message}")
        value = network.nn_eval(net, point)
        print("undefined" if value is None else _format_vec(value))
    return EXIT_OK


def _cmd_check(args) -> int:
    fn = formats.parse_pwa(_read(args.pwa))
    verdict = pwa.check_univalence(fn, jobs=_jobs())
    if isinstance(verdict, pwa.UnivalenceViolation):
        print(
            f"violation: pieces {verdict.piece_i} and {verdict.piece_j} "
            f"differ in row {verdict.row} at point ({_format_vec(verdict.witness)})"
        )
        return EXIT_UNIVALENCE
    print("univalent")
    return EXIT_OK


def _cmd_regions(args) -> int:
    fn = formats.parse_pwa(_read(args.pwa))
    print(pwa.count_regions(fn))
    return EXIT_OK


def _cmd_export_smt(args) -> int:
    fn = formats.parse_pwa(_read(args.pwa))
    _write(args.out, formats.export_smt(fn, assert_domain=args.assert_domain))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pwanet",
        description="exact piecewise-affine functions and network compilation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile a network file to a PWA file")
    p.add_argument("--network", required=True, help="network JSON input")
    p.add_argument("--out", required=True, help="PWA JSON output")
    p.add_argument("--prune", action="store_true", help="drop empty pieces")
    p.add_argument(
        "--check-univalence", action="store_true", help="record a univalence verdict"
    )
    p.set_defaults(handler=_cmd_compile)

    p = sub.add_parser("eval", help="evaluate a PWA or network file at a point")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--pwa", help="PWA JSON input")
    group.add_argument("--network", help="network JSON input")
    p.add_argument("--point", required=True, help='input vector, e.g. "1,1" or "2.7,-1/3"')
    p.set_defaults(handler=_cmd_eval)

    p = sub.add_parser("check", help="decide univalence of a PWA file")
    p.add_argument("--pwa", required=True, help="PWA JSON input")
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("regions", help="count non-empty pieces of a PWA file")
    p.add_argument("--pwa", required=True, help="PWA JSON input")
    p.set_defaults(handler=_cmd_regions)

    p = sub.add_parser("export-smt", help="write a QF_LRA script for a PWA file")
    p.add_argument("--pwa", required=True, help="PWA JSON input")
    p.add_argument("--out", required=True, help="SMT-LIB output")
    p.add_argument(
        "--assert-domain",
        action="store_true",
        help="also assert that the input lies in some piece",
    )
    p.set_defaults(handler=_cmd_export_smt)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except _Failure as exc:
        print(exc, file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
