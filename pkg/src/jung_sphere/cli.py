"""Command-line entry point: ``jung-sphere {solve,oracle,verify,gen}``.

Exit codes: 0 success, 1 certificate failure or non-convergence, 2 bad input,
3 usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .certificate import NotEnclosing, make_certificate
from .geometry import Tolerance
from .io import (
    InstanceSpec,
    ParseError,
    Shape,
    emit_result,
    emit_verification,
    gen_instance,
    instance_header,
    parse_points,
    parse_sphere,
    points_to_csv,
)
from .oracle import TooManyPoints, brute_force_meb
from .solver import solve

log = logging.getLogger("jung_sphere")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jung-sphere", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def io_flags(p, with_input=True):
        if with_input:
            p.add_argument("--input", default="-", help="points file, '-' for stdin")
            p.add_argument("--format", choices=["csv", "json"], default="csv")
            p.add_argument("--tol", type=float, default=1e-9, help="relative tolerance eps")
        p.add_argument("--output", default="-", help="result file, '-' for stdout")

    io_flags(sub.add_parser("solve", help="minimal enclosing sphere by shrinking"))
    io_flags(sub.add_parser("oracle", help="minimal enclosing sphere by brute force"))
    verify = sub.add_parser("verify", help="certify a given sphere for the points")
    io_flags(verify)
    verify.add_argument("--sphere", required=True,
                        help='JSON file with "center" and "radius"')
    gen = sub.add_parser("gen", help="emit a generated instance as CSV")
    io_flags(gen, with_input=False)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--shape", choices=[s.value for s in Shape], default=Shape.UNIFORM_CUBE.value)
    gen.add_argument("--scale", type=float, default=1.0)
    return parser


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _write(path: str, payload: bytes):
    if path == "-":
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(payload)


def _run(args) -> int:
    if args.command == "gen":
        try:
            spec = InstanceSpec(args.n, args.seed, Shape(args.shape), args.scale)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        _write(args.output, points_to_csv(gen_instance(spec), instance_header(spec)))
        return EXIT_OK

    try:
        tol = Tolerance(args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        ps = parse_points(_read(args.input), args.format)
        sphere = parse_sphere(_read(args.sphere)) if args.command == "verify" else None
    except (OSError, ParseError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT

    if args.command == "verify":
        try:
            cert = make_certificate(ps, sphere, tol)
        except NotEnclosing as exc:
            log.error("certificate refused: %s", exc)
            return EXIT_FAIL
        _write(args.output, emit_verification(sphere, cert))
        return EXIT_OK if cert.passed else EXIT_FAIL

    if args.command == "oracle":
        try:
            result = brute_force_meb(ps, tol)
        except TooManyPoints as exc:
            log.error("%s", exc)
            return EXIT_INPUT
    else:
        result = solve(ps, tol)
    cert = make_certificate(ps, result.sphere, tol)
    _write(args.output, emit_result(result, cert))
    if not result.converged:
        log.error("solver did not converge")
    if not cert.passed:
        log.error("Jung bound check failed: r=%r a=%r", cert.r, cert.a)
    return EXIT_OK if (cert.passed and result.converged) else EXIT_FAIL


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr,
                        format="jung-sphere: %(message)s")
    try:
        args = _build_parser().parse_args(argv)
        return _run(args)
    except UsageError as exc:
        print(f"jung-sphere: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


run_cli = main

if __name__ == "__main__":
    sys.exit(main())
