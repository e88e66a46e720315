"""Exact scalar arithmetic: valuations, digit expansions, CRT recombination.

Everything here works on plain Python ints (arbitrary precision) and is pure:
no function mutates its arguments or keeps state between calls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

# Miller-Rabin witness set.  Deterministic for n < 3.3e24; for larger n this
# is a fixed-round probabilistic test (12 rounds, error < 4^-12).
_MILLER_RABIN_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin primality test with the fixed witness set above."""
    if n < 2:
        return False
    for p in _MILLER_RABIN_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MILLER_RABIN_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def valuation(a: int, p: int) -> int:
    """Largest k such that p**k divides a.

    Raises ValueError for a == 0, whose valuation is infinite.
    """
    if a == 0:
        raise ValueError("valuation of 0 is infinite")
    if p < 2:
        raise ValueError("valuation base must be >= 2")
    k = 0
    a = abs(a)
    while a % p == 0:
        a //= p
        k += 1
    return k


@dataclass(frozen=True)
class PAdicDigits:
    """Least-significant-first digit vector of a residue in base `base`."""

    base: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.base < 2:
            raise ValueError("digit base must be >= 2")
        if not self.digits:
            raise ValueError("need at least one digit")
        for d in self.digits:
            if not 0 <= d < self.base:
                raise ValueError(f"digit {d} out of range [0, {self.base})")

    def value(self) -> int:
        """The represented residue, sum(digits[i] * base**i)."""
        acc = 0
        for d in reversed(self.digits):
            acc = acc * self.base + d
        return acc


def to_digits(a: int, base: int, length: int) -> PAdicDigits:
    """Digits of a mod base**length, least significant first.

    Negative a is first reduced into [0, base**length).
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    a %= base ** length
    out = []
    for _ in range(length):
        a, d = divmod(a, base)
        out.append(d)
    return PAdicDigits(base, tuple(out))


def crt_pair(
    residues: Sequence[tuple[int, int]],
    primes: Sequence[int] | None = None,
) -> int:
    """Combine residues (x_i, m_i) over pairwise-coprime moduli.

    Returns the unique x in [0, prod m_i) with x = x_i mod m_i for every i,
    built as sum(x_j * P_j * Q_j) where P_j is the product of the other
    moduli and Q_j its inverse mod m_j.  When `primes` gives the prime of
    each (then prime-power) modulus, Q_j comes from the digit-carry Bezout
    iteration; otherwise the built-in modular inverse is used.
    """
    if not residues:
        raise ValueError("need at least one residue")
    for i in range(len(residues)):
        for j in range(i + 1, len(residues)):
            g = math.gcd(residues[i][1], residues[j][1])
            if g != 1:
                raise ValueError(
                    f"moduli {residues[i][1]} and {residues[j][1]} share factor {g}"
                )
    total = 1
    for _, m in residues:
        if m < 1:
            raise ValueError("moduli must be positive")
        total *= m
    acc = 0
    for j, (x, m) in enumerate(residues):
        if m == 1:
            continue
        big = total // m
        if primes is not None and primes[j] is not None:
            from . import bezout  # local import: bezout depends on this module

            p = primes[j]
            q_j = bezout.invert_mod_prime_power(big % m, p, valuation(m, p))
        else:
            q_j = pow(big % m, -1, m)
        acc += x * big * q_j
    return acc % total


@dataclass(frozen=True)
class PrimePowerFactorization:
    """A modulus written as a product of powers of distinct primes."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not self.factors:
            raise ValueError("empty factorization")
        seen = set()
        for p, r in self.factors:
            if r < 1:
                raise ValueError(f"exponent {r} of prime {p} must be >= 1")
            if p in seen:
                raise ValueError(f"prime {p} listed twice")
            if not is_probable_prime(p):
                raise ValueError(f"factor {p} is not prime")
            seen.add(p)
        object.__setattr__(
            self, "factors", tuple(sorted(self.factors))
        )

    def modulus(self) -> int:
        n = 1
        for p, r in self.factors:
            n *= p ** r
        return n

    @classmethod
    def for_modulus(
        cls, n: int, factors: Sequence[tuple[int, int]]
    ) -> "PrimePowerFactorization":
        """Validated factorization of n; raises if the product mismatches."""
        fac = cls(tuple(factors))
        if fac.modulus() != n:
            raise ValueError(
                f"factorization multiplies to {fac.modulus()}, expected {n}"
            )
        return fac
