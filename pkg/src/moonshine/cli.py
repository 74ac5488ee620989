"""Batch verification commands.

Every command prints exact decimal integers (rationals, if they ever
appear, as num/den), tab-separated, in a deterministic order, and follows
one exit-code contract: 0 when the run passed, 1 when a verification found
a mismatch or contradiction, 2 on input errors (bad flags, unreadable or
malformed tables, missing coefficients).  Verification commands end with a
greppable ``VERDICT: PASS`` or ``VERDICT: FAIL`` line.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from importlib import resources

from .classes import (
    ClassTable,
    MissingCoefficients,
    euler_poincare_report,
    load_family,
    parse_table_text,
)
from .lattice import (
    build_matrix,
    cartan_conditions,
    denominator_identity_report,
    dimension_product,
    simple_roots,
    witt_dims,
)
from .modular import normalized_j
from .recursion import ContradictionError, determinacy_audit, solve_from_seeds
from .series import BiSeries

__all__ = ["main", "entry"]

PASS_LINE = "VERDICT: PASS"
FAIL_LINE = "VERDICT: FAIL"


class CommandError(Exception):
    """Input problem: bad bounds, unreadable table, missing data.  Exit 2."""


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def _load_table(path: str | None) -> ClassTable:
    if path is None:
        text = (
            resources.files("moonshine").joinpath("data/catalog.mtf").read_text()
        )
    else:
        try:
            with open(path, encoding="utf-8") as handle:
                text = handle.read()
        except OSError as err:
            raise CommandError(f"cannot read table file: {err}") from None
    try:
        return parse_table_text(text)
    except ValueError as err:
        raise CommandError(str(err)) from None


def _family(table: ClassTable, order: int):
    try:
        return load_family(table, order)
    except ValueError as err:
        raise CommandError(str(err)) from None


# ---------------------------------------------------------------------------
# commands


def _cmd_jexpand(args) -> int:
    if args.order < -1:
        raise CommandError("order must be >= -1")
    c = normalized_j(args.order)
    for n in range(-1, args.order + 1):
        print(f"{n}\t{_fmt(c.coeff(n))}")
    return 0


def _cmd_verify_product(args) -> int:
    if args.pmax < 1 or args.qmax < 1:
        raise CommandError("window bounds must be >= 1")
    report = denominator_identity_report(args.pmax, args.qmax)
    print(f"command: verify-product --pmax {args.pmax} --qmax {args.qmax}")
    print(f"window: p 0..{report.pmax}, q {report.qmin}..{report.qmax}")
    for i, j, lhs, rhs in report.mismatches:
        print(f"mismatch\tp^{i} q^{j}\t{_fmt(lhs)}\t{_fmt(rhs)}")
    print(PASS_LINE if report.ok else FAIL_LINE)
    return 0 if report.ok else 1


def _cmd_verify_ep(args) -> int:
    if args.imax < 1 or args.jmax < 1:
        raise CommandError("window bounds must be >= 1")
    table = _load_table(args.table)
    if args.klass not in table.names:
        raise CommandError(f"unknown class {args.klass!r}")
    family = _family(table, args.imax * args.jmax)
    try:
        report = euler_poincare_report(family, args.klass, args.imax, args.jmax)
    except MissingCoefficients as err:
        raise CommandError(str(err)) from None
    print(
        f"command: verify-ep --class {args.klass} "
        f"--imax {args.imax} --jmax {args.jmax}"
    )
    print(f"window: p 1..{args.imax}, q 1..{args.jmax}")
    for i, j, lhs, rhs in report.mismatches:
        print(f"mismatch\t({i},{j})\t{_fmt(lhs)}\t{_fmt(rhs)}")
    print(PASS_LINE if report.ok else FAIL_LINE)
    return 0 if report.ok else 1


def _cmd_derive(args) -> int:
    if args.max < 1:
        raise CommandError("--max must be >= 1")
    table = _load_table(args.table)
    if args.audit:
        report = determinacy_audit(table, args.max)
        for name in table.names:
            indices = report.underivable(name)
            label = "unresolved" if len(table.names) == 1 else f"unresolved {name}"
            print(f"{label}: {' '.join(str(n) for n in indices)}")
        return 0
    try:
        result = solve_from_seeds(table, args.max)
    except ContradictionError as err:
        print(f"contradiction: {err}")
        print(FAIL_LINE)
        return 1
    if result.unresolved:
        listed = " ".join(f"{g}({n})" for g, n in result.unresolved[:12])
        raise CommandError(f"seeds leave underivable coefficients: {listed}")
    for name in table.names:
        for n in range(1, args.max + 1):
            print(f"{name}\t{n}\t{result.values[(name, n)]}")
    return 0


def _cmd_compare(args) -> int:
    if args.max < 1:
        raise CommandError("--max must be >= 1")
    table = _load_table(args.table)
    family = _family(table, args.max)
    print(f"command: compare --max {args.max}")
    try:
        result = solve_from_seeds(table, args.max)
    except ContradictionError as err:
        print(f"contradiction: {err}")
        print(FAIL_LINE)
        return 1
    differences = []
    for n in range(1, args.max + 1):
        for name in table.names:
            if not family.known(name, n):
                continue
            derived = result.values.get((name, n))
            expansion = family.value(name, n)
            if derived != expansion:
                differences.append((name, n, derived, expansion))
    for name, n, derived, expansion in differences[:10]:
        shown = "underived" if derived is None else str(derived)
        print(f"difference\t{name}({n})\tderived {shown}\texpansion {expansion}")
    if differences:
        name, n, _, _ = differences[0]
        print(f"first differing index: {name}({n})")
    print(PASS_LINE if not differences else FAIL_LINE)
    return 0 if not differences else 1


def _cmd_witt(args) -> int:
    if args.mmax < 1 or args.nmax < 1:
        raise CommandError("window bounds must be >= 1")
    c = normalized_j(args.mmax * args.nmax)
    dims = witt_dims(args.mmax, args.nmax, c)
    print(f"command: witt --mmax {args.mmax} --nmax {args.nmax}")
    print("free Lie algebra dimensions:")
    for m in range(1, args.mmax + 1):
        print("\t".join(str(dims.dim(m, n)) for n in range(1, args.nmax + 1)))
    print("expected root multiplicities:")
    mismatches = []
    for m in range(1, args.mmax + 1):
        row = []
        for n in range(1, args.nmax + 1):
            expected = int(c.coeff(m * n))
            row.append(str(expected))
            if dims.dim(m, n) != expected:
                mismatches.append((m, n, dims.dim(m, n), expected))
        print("\t".join(row))
    for m, n, got, expected in mismatches:
        print(f"mismatch\t({m},{n})\t{got}\t{expected}")
    generators = BiSeries(
        {
            (m, n): int(c.coeff(m + n - 1))
            for m in range(1, args.mmax + 1)
            for n in range(1, args.nmax + 1)
        },
        args.mmax,
        0,
        args.nmax,
    )
    one = BiSeries.one(args.mmax, 0, args.nmax)
    oracle_bad = dimension_product(dims).mismatches(one - generators)
    for i, j, lhs, rhs in oracle_bad:
        print(f"oracle mismatch\t({i},{j})\t{_fmt(lhs)}\t{_fmt(rhs)}")
    ok = not mismatches and not oracle_bad
    print(PASS_LINE if ok else FAIL_LINE)
    return 0 if ok else 1


def _cmd_bmatrix(args) -> int:
    if args.size < 1:
        raise CommandError("size must be >= 1")
    matrix = build_matrix(args.size)
    print(f"command: bmatrix --size {args.size}")
    for row in matrix:
        print("\t".join(str(entry) for entry in row))
    report = cartan_conditions(matrix)
    print(f"symmetric: {'yes' if report.symmetric else 'no'}")
    print(
        "off-diagonal nonpositive: "
        f"{'yes' if report.off_diagonal_nonpositive else 'no'}"
    )
    print(f"row integrality: {'yes' if report.ratios_integral else 'no'}")
    for violation in report.violations:
        print(f"violation\t{violation}")
    print(PASS_LINE if report.ok else FAIL_LINE)
    return 0 if report.ok else 1


def _cmd_simple_roots(args) -> int:
    if args.nmax < -1:
        raise CommandError("nmax must be >= -1")
    c = normalized_j(max(args.nmax, 1))
    roots = simple_roots(args.nmax, c)
    for vector, mult in roots.entries:
        print(f"({vector.m},{vector.n})\t{mult}")
    return 0


# ---------------------------------------------------------------------------
# wiring


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moonshine",
        description="Exact verification of the modular-invariant identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jexpand", help="print coefficients of the invariant")
    p.add_argument("--order", type=int, default=8)
    p.set_defaults(func=_cmd_jexpand)

    p = sub.add_parser("verify-product", help="check the product formula")
    p.add_argument("--pmax", type=int, default=8)
    p.add_argument("--qmax", type=int, default=8)
    p.set_defaults(func=_cmd_verify_product)

    p = sub.add_parser("verify-ep", help="check the trace identity per class")
    p.add_argument("--table", default=None)
    p.add_argument("--class", dest="klass", default="1A")
    p.add_argument("--imax", type=int, default=8)
    p.add_argument("--jmax", type=int, default=8)
    p.set_defaults(func=_cmd_verify_ep)

    p = sub.add_parser("derive", help="derive coefficients from seeds")
    p.add_argument("--table", default=None)
    p.add_argument("--max", type=int, default=30)
    p.add_argument("--audit", action="store_true")
    p.set_defaults(func=_cmd_derive)

    p = sub.add_parser("compare", help="derived values vs recipe expansions")
    p.add_argument("--table", default=None)
    p.add_argument("--max", type=int, default=30)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("witt", help="free Lie algebra dimension grid")
    p.add_argument("--mmax", type=int, default=5)
    p.add_argument("--nmax", type=int, default=5)
    p.set_defaults(func=_cmd_witt)

    p = sub.add_parser("bmatrix", help="simple-root Gram matrix block truncation")
    p.add_argument("--size", type=int, default=2)
    p.set_defaults(func=_cmd_bmatrix)

    p = sub.add_parser("simple-roots", help="simple roots with multiplicities")
    p.add_argument("--nmax", type=int, default=2)
    p.set_defaults(func=_cmd_simple_roots)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CommandError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())
