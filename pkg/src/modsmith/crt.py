"""Decomposition driver: solve mod each p**r independently, recombine by CRT.

Each prime-power subproblem is a pure function of (A, b, w, p, r) and safe to
run concurrently; recombination is a deterministic fold in ascending-prime
order, so the final answer is bit-identical for any worker count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .arith import PrimePowerFactorization, crt_pair, is_probable_prime
from .matrices import IntMatrix
from .modsolve import describe_solutions, solve_prime_power_constrained
from .smith import smith_form_prime_power

DEFAULT_FACTOR_BOUND = 2 ** 64
FACTOR_BOUND_ENV = "MODSMITH_FACTOR_BOUND"


class FactorizationRequired(ValueError):
    """Raised when n exceeds the desk-scale bound and no factors were given."""


def _factor_bound() -> int:
    raw = os.environ.get(FACTOR_BOUND_ENV)
    return int(raw) if raw else DEFAULT_FACTOR_BOUND


def factorize_fallback(n: int, bound: int | None = None) -> PrimePowerFactorization:
    """Trial division plus Pollard rho, for desk-scale moduli only.

    Raises FactorizationRequired above the bound (default 2**64, overridable
    via the MODSMITH_FACTOR_BOUND environment variable): supplying the
    factorization is the caller's job for serious moduli.
    """
    if n < 2:
        raise ValueError("modulus must be >= 2")
    limit = bound if bound is not None else _factor_bound()
    if n > limit:
        raise FactorizationRequired(
            f"{n} exceeds the factorization bound {limit}; supply factors explicitly"
        )
    counts: dict[int, int] = {}

    def record(p: int) -> None:
        counts[p] = counts.get(p, 0) + 1

    def rho(m: int) -> int:
        if m % 2 == 0:
            return 2
        for c in range(1, 50):
            x = y = 2
            d = 1
            while d == 1:
                x = (x * x + c) % m
                y = (y * y + c) % m
                y = (y * y + c) % m
                d = math.gcd(abs(x - y), m)
            if d != m:
                return d
        raise ArithmeticError(f"rho failed to split {m}")  # pragma: no cover

    def split(m: int) -> None:
        if m == 1:
            return
        if is_probable_prime(m):
            record(m)
            return
        d = rho(m)
        split(d)
        split(m // d)

    rest = n
    for p in (2, 3, 5, 7, 11, 13):
        while rest % p == 0:
            record(p)
            rest //= p
    d = 17
    while d * d <= rest and d < 100000:
        while rest % d == 0:
            record(d)
            rest //= d
        d += 2
    split(rest)
    return PrimePowerFactorization.for_modulus(n, tuple(counts.items()))


@dataclass(frozen=True)
class ResidueSolution:
    """One prime-power residue of the combined solution."""

    p: int
    r: int
    x: tuple[int, ...]
    constraint_ok: bool | None  # None when no functional was involved


@dataclass(frozen=True)
class ResidueOutcome:
    exists: bool
    solution: ResidueSolution | None
    cause: str | None


@dataclass(frozen=True)
class DriverResult:
    """Outcome of a full mod-n solve through the decomposition."""

    exists: bool
    x: tuple[int, ...] | None
    failing_power: tuple[int, int] | None
    cause: str | None
    residues: tuple[ResidueSolution, ...]


def solve_mod_pr(A: IntMatrix, b: Sequence[int], p: int, r: int) -> ResidueOutcome:
    """Solve A x = b mod p**r; deterministic representative (free part zero).

    The inputs are reduced mod p**r up front: the outcome is a pure function
    of the residues, so subproblems can run in any order or concurrently.
    """
    if not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    if r < 1:
        raise ValueError("exponent must be >= 1")
    n = p ** r
    A = A.mod(n)
    b = [v % n for v in b]
    dec = smith_form_prime_power(A, p, r)
    desc = describe_solutions(A, b, n, dec)
    if not desc.exists:
        cause = (
            f"invariant factor {dec.invariant_factors[desc.failure_index]} does not "
            f"divide {dec.P.mul_vec(list(b))[desc.failure_index]}"
        )
        return ResidueOutcome(False, None, cause)
    return ResidueOutcome(True, ResidueSolution(p, r, desc.particular, None), None)


def _check_factors(
    n: int, factors: PrimePowerFactorization | None
) -> PrimePowerFactorization:
    if factors is None:
        return factorize_fallback(n)
    if factors.modulus() != n:
        raise ValueError("factorization does not multiply to the modulus")
    return factors


def _run_subproblems(tasks, jobs: int):
    if jobs > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda f: f(), tasks))
    return [f() for f in tasks]


def _combine(
    residues: list[ResidueSolution], n: int
) -> tuple[int, ...]:
    """Componentwise CRT over the prime powers, ascending-prime order."""
    length = len(residues[0].x)
    primes = [rs.p for rs in residues]
    combined = []
    for c in range(length):
        pairs = [(rs.x[c], rs.p ** rs.r) for rs in residues]
        combined.append(crt_pair(pairs, primes=primes))
    return tuple(combined)


def solve_mod_n(
    A: IntMatrix,
    b: Sequence[int],
    n: int,
    factors: PrimePowerFactorization | None = None,
    jobs: int = 1,
) -> DriverResult:
    """Solve A x = b mod n by independent prime-power subproblems plus CRT."""
    factors = _check_factors(n, factors)
    tasks = [
        (lambda p=p, r=r: solve_mod_pr(A, b, p, r)) for p, r in factors.factors
    ]
    outcomes = _run_subproblems(tasks, jobs)
    for (p, r), out in zip(factors.factors, outcomes):
        if not out.exists:
            return DriverResult(False, None, (p, r), out.cause, ())
    residues = [out.solution for out in outcomes]
    x = _combine(residues, n)
    ax = A.mul_vec(list(x))
    for got, want in zip(ax, b):
        if (got - want) % n != 0:
            raise ArithmeticError("recombined x fails A x = b mod n")
    return DriverResult(True, x, None, None, tuple(residues))


def solve_mod_n_constrained(
    A: IntMatrix,
    b: Sequence[int],
    w: Sequence[int],
    n: int,
    factors: PrimePowerFactorization | None = None,
    jobs: int = 1,
) -> DriverResult:
    """Constrained solve mod n: every residue must keep <w, x> a unit mod p."""
    factors = _check_factors(n, factors)
    tasks = [
        (lambda p=p, r=r: solve_prime_power_constrained(A, b, w, p, r))
        for p, r in factors.factors
    ]
    outcomes = _run_subproblems(tasks, jobs)
    residues = []
    for (p, r), out in zip(factors.factors, outcomes):
        if not out.exists:
            cause = (
                f"no solution mod {p}^{r}"
                if out.failure == "existence"
                else f"constraint unsatisfiable modulo prime {p}"
            )
            return DriverResult(False, None, (p, r), cause, ())
        residues.append(ResidueSolution(p, r, out.x, True))
    x = _combine(residues, n)
    ax = A.mul_vec(list(x))
    for got, want in zip(ax, b):
        if (got - want) % n != 0:
            raise ArithmeticError("recombined x fails A x = b mod n")
    phi = sum(wi * xi for wi, xi in zip(w, x))
    if math.gcd(phi, n) != 1:
        raise ArithmeticError("recombined x fails the coprimality constraint")
    return DriverResult(True, x, None, None, tuple(residues))
