"""Command-line interface wiring the pipeline together:
derive -> serialize -> verify -> multiply -> bench.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import fileformat
from .construction import (
    EigenvectorError,
    RotationError,
    ZeroVectorError,
    build_basis,
    default_rotation,
    default_u,
    derive_decomposition,
    perp_vector,
    validate_rotation,
)
from .engine import (
    DimensionMismatchError,
    EngineConfig,
    MatN,
    RankError,
    bench,
    bench_csv,
    bench_text,
    strassen_multiply,
)
from .fields import (
    Field,
    FieldMismatchError,
    FloatFieldError,
    PrimeField,
    ScalarFormatError,
    parse_field,
)
from .linalg import ColVec2, Mat2, SingularMatrixError, SingularSystemError
from .verification import (
    FieldTooLargeError,
    table_entry_names,
    verify_bilinear_identity,
    verify_exhaustive_gf,
    verify_multiplication_table,
    verify_trilinear,
)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2

_INPUT_ERRORS = (
    FieldMismatchError,
    ScalarFormatError,
    FloatFieldError,
    RotationError,
    ZeroVectorError,
    EigenvectorError,
    SingularMatrixError,
    SingularSystemError,
    DimensionMismatchError,
    RankError,
    FieldTooLargeError,
    fileformat.MalformedFileError,
    ValueError,
    TypeError,
    OSError,
)


def _parse_scalars(field: Field, text: str, count: int, what: str) -> list:
    cells = [c.strip() for c in text.split(",")]
    if len(cells) != count:
        raise ValueError(f"{what} needs {count} comma-separated scalars")
    return [field.parse_scalar(c) for c in cells]


def _rotation_from_args(field: Field, args):
    if args.d is not None:
        return validate_rotation(Mat2(field, _parse_scalars(field, args.d, 4, "--d")))
    return default_rotation(field)


def _u_from_args(rot, args) -> ColVec2:
    if args.u is not None:
        return ColVec2(rot.field, _parse_scalars(rot.field, args.u, 2, "--u"))
    return default_u(rot)


def _load_decomposition(path: str):
    return fileformat.parse(Path(path).read_text())


def _cmd_derive(args) -> int:
    field = parse_field(args.field)
    rot = _rotation_from_args(field, args)
    pp = perp_vector(rot, _u_from_args(rot, args))
    dec = derive_decomposition(rot, pp)
    report = verify_bilinear_identity(dec)
    if not report.passed:
        print(f"derivation failed verification: {report.render()}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED
    Path(args.out).write_text(fileformat.serialize(dec))
    print(f"wrote {args.out}: rank {dec.rank} over {field.name}; {report.render()}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    dec = _load_decomposition(args.path)
    if dec.rank != 7:
        print(f"note: rank {dec.rank} decomposition (not a 7-term algorithm)")
    reports = {}
    reports["bilinear"] = verify_bilinear_identity(dec)
    print(f"bilinear identity (unit pairs): {reports['bilinear'].render()}")
    reports["trilinear"] = verify_trilinear(dec)
    print(f"trilinear trace identity (unit triples): {reports['trilinear'].render()}")
    if args.exhaustive:
        if isinstance(dec.field, PrimeField):
            report = verify_exhaustive_gf(dec, budget=args.budget)
            reports["exhaustive"] = report
            verdict = "passed" if report.passed else report.render()
            print(f"exhaustive sweep: {report.checks_run} pairs checked, {verdict}")
        else:
            print(f"exhaustive sweep skipped: {dec.field.name} is not a prime field")
    if args.json:
        print(json.dumps({name: r.to_dict() for name, r in reports.items()}, indent=2))
    if all(r.passed for r in reports.values()):
        return EXIT_OK
    return EXIT_VERIFICATION_FAILED


def _cmd_table(args) -> int:
    field = parse_field(args.field)
    rot = _rotation_from_args(field, args)
    pp = perp_vector(rot, _u_from_args(rot, args))
    basis = build_basis(rot, pp)
    report = verify_multiplication_table(basis)
    names = table_entry_names()
    row_heads = ("D", "M", "D^-1*M*D", "D*M*D^-1")
    col_heads = ("D^-1", "M", "D^-1*M*D", "D*M*D^-1")
    cells = [[""] + list(col_heads)]
    for head, row in zip(row_heads, names):
        cells.append([head] + list(row))
    widths = [max(len(r[c]) for r in cells) for c in range(5)]
    for row in cells:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    print(f"verification: {report.render()}")
    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


def _cmd_multiply(args) -> int:
    dec = _load_decomposition(args.path)
    if args.random is not None:
        rng = random.Random(args.seed)
        a = MatN.random(dec.field, args.random, rng)
        b = MatN.random(dec.field, args.random, rng)
    else:
        if args.a is None or args.b is None:
            raise ValueError("provide --a and --b matrix files, or --random N")
        a = fileformat.parse_matrix(Path(args.a).read_text())
        b = fileformat.parse_matrix(Path(args.b).read_text())
    result, counter = strassen_multiply(dec, a, b, EngineConfig(cutoff=args.cutoff))
    print(fileformat.format_matrix(result), end="")
    print(f"scalar multiplications: {counter.mults}")
    print(f"scalar additions: {counter.adds}")
    return EXIT_OK


def _cmd_bench(args) -> int:
    dec = _load_decomposition(args.path)
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    config = EngineConfig(cutoff=args.cutoff) if args.cutoff is not None else None
    rows = bench(dec, sizes, config=config, use_float=args.float, seed=args.seed)
    print(bench_csv(rows) if args.csv else bench_text(rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="strassen7",
        description="Derive, verify, and apply rank-7 bilinear 2x2 matrix "
        "multiplication over exact fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", help="derive a decomposition and write it to a file")
    p.add_argument("--field", required=True, help="rational | gf(p)")
    p.add_argument("--d", help="rotation matrix entries a11,a12,a21,a22")
    p.add_argument("--u", help="column vector entries u1,u2")
    p.add_argument("--out", required=True, help="output decomposition file")
    p.set_defaults(handler=_cmd_derive)

    p = sub.add_parser("verify", help="verify a decomposition file")
    p.add_argument("path")
    p.add_argument("--exhaustive", action="store_true",
                   help="also sweep all matrix pairs (prime fields)")
    p.add_argument("--budget", type=int, default=10_000_000,
                   help="pair budget for the exhaustive sweep")
    p.add_argument("--json", action="store_true", help="also emit reports as JSON")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("table", help="print and check the basis multiplication table")
    p.add_argument("--field", required=True)
    p.add_argument("--d")
    p.add_argument("--u")
    p.set_defaults(handler=_cmd_table)

    p = sub.add_parser("multiply", help="multiply two matrices with a decomposition")
    p.add_argument("path")
    p.add_argument("--a", help="left matrix file")
    p.add_argument("--b", help="right matrix file")
    p.add_argument("--random", type=int, metavar="N",
                   help="use seeded random N x N matrices instead of files")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cutoff", type=int, default=1)
    p.set_defaults(handler=_cmd_multiply)

    p = sub.add_parser("bench", help="operation-count (and float timing) table")
    p.add_argument("path")
    p.add_argument("--sizes", required=True, help="comma-separated dimensions")
    p.add_argument("--cutoff", type=int)
    p.add_argument("--float", action="store_true",
                   help="convert a rational decomposition to float64 and time it")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(handler=_cmd_bench)

    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
