"""Linear-system solvers built on Smith decompositions.

Covers integral systems A x = b, modular systems A x = b mod n through the
augmented matrix [A, -n*I], uniqueness analysis, and the constrained solver
that additionally demands gcd(<w, x>, n) = 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .arith import PrimePowerFactorization, crt_pair
from .matrices import IntMatrix
from .smith import (
    SmithDecomposition,
    smith_form,
    smith_form_augmented,
    smith_form_prime_power,
)


@dataclass(frozen=True)
class IntegralSolution:
    """Outcome of solving A x = b over the integers."""

    exists: bool
    x: tuple[int, ...] | None
    kernel: tuple[tuple[int, ...], ...]
    failure: str | None  # "projection" (transformed rhs nonzero) or "divisibility"
    failure_index: int | None


def solve_integral(A: IntMatrix, b: Sequence[int]) -> IntegralSolution:
    """All integer solutions of A x = b, as particular point plus kernel basis.

    Solvable iff the transformed right-hand side vanishes beyond the rank and
    each invariant factor divides its component; the failure report names the
    first violated condition and its index.
    """
    k, l = A.shape
    if len(b) != k:
        raise ValueError(f"rhs length {len(b)} != {k} rows")
    dec = smith_form(A)
    bt = dec.P.mul_vec(list(b))
    for i in range(dec.rank, k):
        if bt[i] != 0:
            return IntegralSolution(False, None, (), "projection", i)
    coeffs = []
    for i, f in enumerate(dec.invariant_factors):
        if bt[i] % f != 0:
            return IntegralSolution(False, None, (), "divisibility", i)
        coeffs.append(bt[i] // f)
    coeffs += [0] * (l - dec.rank)
    x = tuple(dec.Q.mul_vec(coeffs))
    qrows = dec.Q.rows
    kernel = tuple(
        tuple(qrows[i][j] for i in range(l)) for j in range(dec.rank, l)
    )
    return IntegralSolution(True, x, kernel, None, None)


@dataclass(frozen=True)
class SolutionDescription:
    """Every solution of A x = b mod n as particular + free_block * t mod n.

    `particular` is the image of the forced component; `free_block` (reduced
    mod n) generates the solution set as t ranges over all integer vectors.
    """

    modulus: int
    particular: tuple[int, ...] | None
    free_block: IntMatrix | None
    exists: bool
    failure_index: int | None
    x0: tuple[int, ...] | None
    decomposition: SmithDecomposition


def describe_solutions(
    A: IntMatrix, b: Sequence[int], n: int, dec: SmithDecomposition
) -> SolutionDescription:
    """Shared back end: read a solution description off a decomposition of
    [A, -n*I]."""
    k, l = A.shape
    bt = dec.P.mul_vec(list(b))
    x0 = []
    for i, f in enumerate(dec.invariant_factors):
        if bt[i] % f != 0:
            return SolutionDescription(n, None, None, False, i, None, dec)
        x0.append(bt[i] // f)
    q = dec.Q.rows
    q0 = IntMatrix([[q[i][j] for j in range(k)] for i in range(l)])
    q1 = IntMatrix([[q[i][k + j] for j in range(l)] for i in range(l)])
    particular = tuple(v % n for v in q0.mul_vec(x0))
    return SolutionDescription(
        n, particular, q1.mod(n), True, None, tuple(x0), dec
    )


def solve_modular(A: IntMatrix, b: Sequence[int], n: int) -> SolutionDescription:
    """Describe all solutions of A x = b mod n via the Smith form of [A, -n*I].

    Inputs are reduced mod n first, so the result is a pure function of the
    residues.
    """
    k, l = A.shape
    if len(b) != k:
        raise ValueError(f"rhs length {len(b)} != {k} rows")
    if n < 2:
        raise ValueError("modulus must be >= 2")
    A = A.mod(n)
    b = [v % n for v in b]
    return describe_solutions(A, b, n, smith_form_augmented(A, n))


def unimodular_rank(A: IntMatrix, n: int) -> int:
    """Largest minor size whose minors have gcd coprime to n (0 if none)."""
    if n < 2:
        raise ValueError("modulus must be >= 2")
    k, l = A.shape
    for size in range(min(k, l), 0, -1):
        g = 0
        for rows in itertools.combinations(range(k), size):
            for cols in itertools.combinations(range(l), size):
                g = math.gcd(g, A.submatrix(rows, cols).det())
        if g != 0 and math.gcd(g, n) == 1:
            return size
    return 0


@dataclass(frozen=True)
class UniquenessReport:
    unique: bool
    free_block_zero: bool
    rank_condition: bool | None  # evaluated only when requested


def is_unique(
    A: IntMatrix, b: Sequence[int], n: int, check_rank: bool = False
) -> UniquenessReport:
    """Whether A x = b mod n pins x down uniquely.

    Decided by free_block = 0 mod n; with check_rank=True the equivalent
    minor-gcd condition (l <= k and unimodular rank = l) is evaluated too
    and any disagreement raises.
    """
    desc = solve_modular(A, b, n)
    if not desc.exists:
        raise ValueError("system has no solution; uniqueness is undefined")
    by_block = desc.free_block.is_zero()
    by_rank = None
    if check_rank:
        k, l = A.shape
        by_rank = l <= k and unimodular_rank(A, n) == l
        if by_rank != by_block:
            raise ArithmeticError(
                "uniqueness criteria disagree: "
                f"free_block_zero={by_block}, rank_condition={by_rank}"
            )
    return UniquenessReport(by_block, by_block, by_rank)


@dataclass(frozen=True)
class ConstraintData:
    """The functional w transported through Q: <w, x> = <w0, x0> + <w1, t>."""

    w0: tuple[int, ...]  # pairs with the forced component (length k)
    w1: tuple[int, ...]  # pairs with the free component (length l)


def constraint_split(w: Sequence[int], dec: SmithDecomposition) -> ConstraintData:
    """Split Q^T [w; 0] into the parts meeting the forced and free components."""
    q = dec.Q.rows
    total = len(q)
    l = len(w)
    k = total - l
    padded = list(w) + [0] * k
    wt = [sum(q[i][j] * padded[i] for i in range(total)) for j in range(total)]
    return ConstraintData(tuple(wt[:k]), tuple(wt[k:]))


@dataclass(frozen=True)
class ConstrainedResult:
    """Outcome of a solve with the coprime-functional side condition."""

    exists: bool
    x: tuple[int, ...] | None
    failure: str | None  # "existence" or "constraint"
    failing_prime: int | None
    failure_index: int | None


def _verify_constrained(
    A: IntMatrix, b: Sequence[int], w: Sequence[int], n: int, x: Sequence[int]
) -> None:
    ax = A.mul_vec(list(x))
    for got, want in zip(ax, b):
        if (got - want) % n != 0:
            raise ArithmeticError("constructed x fails A x = b mod n")
    phi = sum(wi * xi for wi, xi in zip(w, x))
    if math.gcd(phi, n) != 1:
        raise ArithmeticError("constructed x fails the coprimality constraint")


def _pick_free_component(
    w1: tuple[int, ...],
    offending: list[int],
    all_primes: list[int],
) -> tuple[list[int] | None, int | None]:
    """Free component whose functional part is nonzero mod every offending
    prime and zero mod the rest; reports the first prime that blocks it."""
    l = len(w1)
    if not offending:
        return [0] * l, None
    picks = {}
    for p in offending:
        for i, v in enumerate(w1):
            if v % p != 0:
                picks[p] = i
                break
        else:
            return None, p
    x1 = []
    for i in range(l):
        residues = [
            (1 if picks.get(p) == i else 0, p) for p in all_primes
        ]
        x1.append(crt_pair(residues, primes=all_primes))
    return x1, None


def solve_constrained(
    A: IntMatrix,
    b: Sequence[int],
    w: Sequence[int],
    n: int,
    factors: PrimePowerFactorization,
) -> ConstrainedResult:
    """Solve A x = b mod n with gcd(<w, x>, n) = 1, from one Smith form of
    [A, -n*I].

    Existence needs the unconstrained system solvable and, at every prime
    p | n where the forced part of the functional vanishes, a free part that
    does not; the constructed free component pins those primes to a unit
    contribution and the rest to zero.
    """
    if factors.modulus() != n:
        raise ValueError("factorization does not multiply to the modulus")
    k, l = A.shape
    if len(w) != l:
        raise ValueError(f"functional length {len(w)} != {l} unknowns")
    desc = solve_modular(A, b, n)
    if not desc.exists:
        return ConstrainedResult(False, None, "existence", None, desc.failure_index)
    split = constraint_split(w, desc.decomposition)
    phi0 = sum(a * c for a, c in zip(split.w0, desc.x0))
    primes = [p for p, _ in factors.factors]
    offending = [p for p in primes if phi0 % p == 0]
    x1, bad = _pick_free_component(split.w1, offending, primes)
    if x1 is None:
        return ConstrainedResult(False, None, "constraint", bad, None)
    free = desc.free_block.mul_vec(x1)
    x = tuple((a + c) % n for a, c in zip(desc.particular, free))
    _verify_constrained(A, b, w, n, x)
    return ConstrainedResult(True, x, None, None, None)


def solve_prime_power_constrained(
    A: IntMatrix,
    b: Sequence[int],
    w: Sequence[int],
    p: int,
    r: int,
) -> ConstrainedResult:
    """Constrained solve mod p**r through the valuation-only Smith reduction.

    The free component is zero when the forced part of the functional is
    already a unit mod p, else the first standard basis vector meeting a
    nonzero free-part coefficient.
    """
    k, l = A.shape
    if len(w) != l:
        raise ValueError(f"functional length {len(w)} != {l} unknowns")
    n = p ** r
    A_red = A.mod(n)  # the residue subproblem only sees A, b mod p**r
    b_red = [v % n for v in b]
    dec = smith_form_prime_power(A_red, p, r)
    desc = describe_solutions(A_red, b_red, n, dec)
    if not desc.exists:
        return ConstrainedResult(False, None, "existence", None, desc.failure_index)
    split = constraint_split(w, dec)
    phi0 = sum(a * c for a, c in zip(split.w0, desc.x0))
    if phi0 % p != 0:
        x1 = [0] * l
    else:
        for i, v in enumerate(split.w1):
            if v % p != 0:
                x1 = [1 if j == i else 0 for j in range(l)]
                break
        else:
            return ConstrainedResult(False, None, "constraint", p, None)
    free = desc.free_block.mul_vec(x1)
    x = tuple((a + c) % n for a, c in zip(desc.particular, free))
    _verify_constrained(A, b, w, n, x)
    return ConstrainedResult(True, x, None, None, None)
