"""Command-line front end.

Problem files are line oriented, decimal only; '#' starts a comment.

    modulus <n>
    factors <p>^<r> [<p>^<r> ...]      # optional
    matrix <k> <l>                     # followed by k rows of l integers
    <row ...> (k times)
    rhs <k integers>
    functional <l integers>            # optional constraint vector w
    field rational | field prime <p>   # optional, switches to field mode

Subcommands: solve, smith, bezout, crt, field, bench, verify.
Exit codes: 0 solution/success, 2 proven nonexistence, 1 input error.
"""

from __future__ import annotations

import argparse
import math
import random
import sys
from dataclasses import dataclass

from . import crt as crtmod
from .arith import PrimePowerFactorization, crt_pair
from .bezout import bezout_byte, bezout_single, extended_euclid
from .fieldsolve import (
    FieldMatrix,
    PrimeField,
    RationalField,
    solve_field_constrained,
)
from .matrices import IntMatrix
from .smith import (
    SmithDecomposition,
    smith_form,
    smith_form_prime_power,
    verify_decomposition,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NO_SOLUTION = 2


class ProblemFileError(ValueError):
    """Malformed problem file; message carries the offending line."""


@dataclass
class ProblemFile:
    modulus: int | None
    factors: PrimePowerFactorization | None
    matrix: IntMatrix | None
    rhs: list[int] | None
    functional: list[int] | None
    field_mode: str | None  # None, "rational", or "prime"
    field_prime: int | None


def _parse_factor_tokens(tokens: list[str], lineno: int) -> list[tuple[int, int]]:
    pairs = []
    for tok in tokens:
        if "^" in tok:
            base, _, exp = tok.partition("^")
        else:
            base, exp = tok, "1"
        try:
            pairs.append((int(base), int(exp)))
        except ValueError:
            raise ProblemFileError(
                f"line {lineno}: bad factor token {tok!r}, expected p^r"
            ) from None
    return pairs


def parse_problem(text: str) -> ProblemFile:
    modulus = None
    factor_pairs = None
    matrix_rows: list[list[int]] | None = None
    matrix_shape: tuple[int, int] | None = None
    rhs = None
    functional = None
    field_mode = None
    field_prime = None
    rows_needed = 0
    lines = text.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        key = tokens[0]
        if rows_needed:
            try:
                row = [int(t) for t in tokens]
            except ValueError:
                raise ProblemFileError(
                    f"line {lineno}: matrix row must be integers"
                ) from None
            if len(row) != matrix_shape[1]:
                raise ProblemFileError(
                    f"line {lineno}: matrix row has {len(row)} entries, "
                    f"expected {matrix_shape[1]}"
                )
            matrix_rows.append(row)
            rows_needed -= 1
            continue
        if key == "modulus":
            if len(tokens) != 2:
                raise ProblemFileError(f"line {lineno}: modulus takes one integer")
            modulus = int(tokens[1])
        elif key == "factors":
            factor_pairs = (_parse_factor_tokens(tokens[1:], lineno), lineno)
        elif key == "matrix":
            if len(tokens) != 3:
                raise ProblemFileError(f"line {lineno}: matrix takes k and l")
            k, l = int(tokens[1]), int(tokens[2])
            if k < 1 or l < 1:
                raise ProblemFileError(f"line {lineno}: matrix dimensions must be >= 1")
            matrix_shape = (k, l)
            matrix_rows = []
            rows_needed = k
        elif key == "rhs":
            rhs = [int(t) for t in tokens[1:]]
        elif key == "functional":
            functional = [int(t) for t in tokens[1:]]
        elif key == "field":
            if len(tokens) >= 2 and tokens[1] == "rational":
                field_mode = "rational"
            elif len(tokens) == 3 and tokens[1] == "prime":
                field_mode = "prime"
                field_prime = int(tokens[2])
            else:
                raise ProblemFileError(
                    f"line {lineno}: field takes 'rational' or 'prime <p>'"
                )
        else:
            raise ProblemFileError(f"line {lineno}: unknown keyword {key!r}")
    if rows_needed:
        raise ProblemFileError(f"matrix ended early: {rows_needed} rows missing")
    if matrix_rows is None:
        raise ProblemFileError("no matrix block")
    matrix = IntMatrix(matrix_rows)
    if rhs is None:
        raise ProblemFileError("no rhs line")
    if len(rhs) != matrix.nrows:
        raise ProblemFileError(
            f"rhs has {len(rhs)} entries, expected {matrix.nrows}"
        )
    if functional is not None and len(functional) != matrix.ncols:
        raise ProblemFileError(
            f"functional has {len(functional)} entries, expected {matrix.ncols}"
        )
    factors = None
    if factor_pairs is not None:
        if modulus is None:
            raise ProblemFileError("factors given without modulus")
        pairs, lineno = factor_pairs
        try:
            factors = PrimePowerFactorization.for_modulus(modulus, pairs)
        except ValueError as exc:
            raise ProblemFileError(f"line {lineno}: {exc}") from None
    return ProblemFile(
        modulus, factors, matrix, rhs, functional, field_mode, field_prime
    )


def _load_problem(path: str) -> ProblemFile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_problem(fh.read())


def _fmt_vec(v) -> str:
    return " ".join(str(int(c)) for c in v)


def _print_matrix(name: str, M: IntMatrix, out) -> None:
    print(f"{name} {M.nrows} {M.ncols}", file=out)
    for row in M.rows:
        print(_fmt_vec(row), file=out)


def _emit_certificates(
    blocks: list[tuple[str, SmithDecomposition]], out
) -> None:
    for label, dec in blocks:
        print(f"certificate {label}", file=out)
        _print_matrix("P", dec.P, out)
        _print_matrix("S", dec.S, out)
        _print_matrix("Q", dec.Q, out)


def _parse_factor_flag(raw: str, n: int) -> PrimePowerFactorization:
    tokens = raw.replace(",", " ").split()
    pairs = _parse_factor_tokens(tokens, 0)
    return PrimePowerFactorization.for_modulus(n, pairs)


def cmd_solve(args, out=None) -> int:
    out = out or sys.stdout
    prob = _load_problem(args.problem)
    if prob.modulus is None:
        raise ProblemFileError("solve needs a modulus line")
    n = prob.modulus
    factors = prob.factors
    if args.factors:
        factors = _parse_factor_flag(args.factors, n)
    if factors is None:
        factors = crtmod.factorize_fallback(n)
    A, b = prob.matrix, prob.rhs
    if prob.functional is None:
        result = crtmod.solve_mod_n(A, b, n, factors, jobs=args.jobs)
    else:
        result = crtmod.solve_mod_n_constrained(
            A, b, prob.functional, n, factors, jobs=args.jobs
        )
    if not result.exists:
        print("status no-solution", file=out)
        print(f"cause {result.cause}", file=out)
        if result.failing_power:
            p, r = result.failing_power
            print(f"at-prime-power {p}^{r}", file=out)
        return EXIT_NO_SOLUTION
    print("status solution", file=out)
    print(f"modulus {n}", file=out)
    print(f"x {_fmt_vec(result.x)}", file=out)
    print("check-system ok", file=out)
    if prob.functional is not None:
        print("check-constraint ok", file=out)
    if args.emit_certificates:
        blocks = []
        for p, r in factors.factors:
            dec = smith_form_prime_power(A, p, r)
            blocks.append((f"p {p} r {r}", dec))
        _emit_certificates(blocks, out)
    return EXIT_OK


def cmd_smith(args, out=None) -> int:
    out = out or sys.stdout
    prob = _load_problem(args.problem)
    dec = smith_form(prob.matrix)
    verify_decomposition(prob.matrix, dec)
    print(f"rank {dec.rank}", file=out)
    print(f"factors {_fmt_vec(dec.invariant_factors)}", file=out)
    if args.emit_certificates:
        _emit_certificates([("smith", dec)], out)
    return EXIT_OK


def cmd_bezout(args, out=None) -> int:
    out = out or sys.stdout
    if args.byte:
        cert = bezout_byte(args.a, args.p, args.byte, args.r)
        q = args.p ** args.byte
        s = 0
        m = cert.modulus
        while m > 1:
            m //= q
            s += 1
        print(f"q {q}", file=out)
        print(f"s {s}", file=out)
        print(f"x {cert.x}", file=out)
        print(f"y {cert.y_final}", file=out)
        print(f"g {cert.g}", file=out)
        print(f"inversions_mod_q {cert.counts.inversions}", file=out)
    else:
        cert = bezout_single(args.a, args.p, args.r)
        print(f"x {cert.x}", file=out)
        print(f"y {cert.y_final}", file=out)
        print(f"g {cert.g}", file=out)
        print(f"inversions_mod_p {cert.counts.inversions}", file=out)
    print(f"general_divisions {cert.counts.general_divs}", file=out)
    return EXIT_OK


def cmd_crt(args, out=None) -> int:
    out = out or sys.stdout
    vals = args.values
    if len(vals) < 2 or len(vals) % 2:
        raise ProblemFileError("crt takes residue/modulus pairs: x1 m1 x2 m2 ...")
    pairs = [(vals[i], vals[i + 1]) for i in range(0, len(vals), 2)]
    x = crt_pair(pairs)
    total = 1
    for _, m in pairs:
        total *= m
    print(f"x {x}", file=out)
    print(f"modulus {total}", file=out)
    return EXIT_OK


def cmd_field(args, out=None) -> int:
    out = out or sys.stdout
    prob = _load_problem(args.problem)
    if prob.field_mode is None:
        raise ProblemFileError("field subcommand needs a 'field' line")
    field = RationalField() if prob.field_mode == "rational" else PrimeField(prob.field_prime)
    A = FieldMatrix.from_ints(field, prob.matrix.rows)
    b = [field.from_int(v) for v in prob.rhs]
    if prob.functional is None:
        raise ProblemFileError("field solve needs a functional line")
    w = [field.from_int(v) for v in prob.functional]
    res = solve_field_constrained(A, b, w)
    if not res.exists:
        print("status no-solution", file=out)
        cause = (
            "inconsistent system"
            if res.failed_condition == 1
            else "functional vanishes on all solutions"
        )
        print(f"cause {cause}", file=out)
        return EXIT_NO_SOLUTION
    print("status solution", file=out)
    print(f"x {' '.join(str(c) for c in res.x)}", file=out)
    return EXIT_OK


def cmd_bench(args, out=None) -> int:
    out = out or sys.stdout
    rng = random.Random(args.seed)
    p = args.p
    sizes = [int(t) for t in args.sizes.replace(",", " ").split()]
    print(f"bench p {p} trials {args.trials} seed {args.seed}", file=out)
    print("bits padic_inversions padic_general_divs euclid_divisions", file=out)
    for bits in sizes:
        r = max(2, round(bits / math.log2(p)))
        inv = divs = eucl = 0
        for _ in range(args.trials):
            while True:
                a = rng.randrange(1, p ** r)
                if a % p:
                    break
            cert = bezout_single(a, p, r)
            if not cert.holds_for(a):
                raise ArithmeticError("benchmark certificate failed")
            inv += cert.counts.inversions
            divs += cert.counts.general_divs
            eucl += extended_euclid(a, p ** r)[3]
        t = args.trials
        print(f"{bits} {inv / t:.1f} {divs / t:.1f} {eucl / t:.1f}", file=out)
    return EXIT_OK


def cmd_verify(args, out=None) -> int:
    out = out or sys.stdout
    prob = _load_problem(args.problem)
    with open(args.report, "r", encoding="utf-8") as fh:
        report = fh.read()
    status = None
    x = None
    for raw in report.splitlines():
        tokens = raw.split()
        if not tokens:
            continue
        if tokens[0] == "status":
            status = tokens[1]
        elif tokens[0] == "x":
            x = [int(t) for t in tokens[1:]]
    if status != "solution" or x is None:
        print("verify failed: report carries no solution", file=out)
        return EXIT_NO_SOLUTION
    if len(x) != prob.matrix.ncols:
        print("verify failed: solution length mismatch", file=out)
        return EXIT_NO_SOLUTION
    n = prob.modulus
    if n is None:
        raise ProblemFileError("verify needs a modulus line in the problem")
    ax = prob.matrix.mul_vec(x)
    for got, want in zip(ax, prob.rhs):
        if (got - want) % n != 0:
            print("verify failed: A x != b mod n", file=out)
            return EXIT_NO_SOLUTION
    if prob.functional is not None:
        phi = sum(wi * xi for wi, xi in zip(prob.functional, x))
        if math.gcd(phi, n) != 1:
            print("verify failed: functional not coprime to the modulus", file=out)
            return EXIT_NO_SOLUTION
    print("verify ok", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modsmith",
        description="Exact modular linear system solver with a coprimality constraint.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve A x = b mod n from a problem file")
    p_solve.add_argument("problem")
    p_solve.add_argument("--factors", help="prime powers of n, e.g. '2^2 3^1'")
    p_solve.add_argument("--emit-certificates", action="store_true")
    p_solve.add_argument("--jobs", type=int, default=1)
    p_solve.set_defaults(func=cmd_solve)

    p_smith = sub.add_parser("smith", help="Smith form of the problem matrix")
    p_smith.add_argument("problem")
    p_smith.add_argument("--emit-certificates", action="store_true")
    p_smith.set_defaults(func=cmd_smith)

    p_bez = sub.add_parser("bezout", help="Bezout certificate for (a, p^r)")
    p_bez.add_argument("a", type=int)
    p_bez.add_argument("p", type=int)
    p_bez.add_argument("r", type=int)
    p_bez.add_argument("--byte", type=int, metavar="D", help="byte width d for base q=p^d")
    p_bez.set_defaults(func=cmd_bezout)

    p_crt = sub.add_parser("crt", help="combine residues x1 m1 x2 m2 ...")
    p_crt.add_argument("values", type=int, nargs="+")
    p_crt.set_defaults(func=cmd_crt)

    p_field = sub.add_parser("field", help="constrained solve over a field")
    p_field.add_argument("problem")
    p_field.set_defaults(func=cmd_field)

    p_bench = sub.add_parser("bench", help="digit path vs Euclid operation counts")
    p_bench.add_argument("--p", type=int, default=2)
    p_bench.add_argument("--sizes", default="64,128,256,512")
    p_bench.add_argument("--trials", type=int, default=8)
    p_bench.add_argument("--seed", type=int, default=1)
    p_bench.set_defaults(func=cmd_bench)

    p_verify = sub.add_parser("verify", help="re-check a solution report")
    p_verify.add_argument("problem")
    p_verify.add_argument("report")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ProblemFileError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
