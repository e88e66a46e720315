"""Bezout identities against prime-power moduli, solved without Euclidean division.

The central routine expands a*x = 1 (mod base**length) digit by digit: one
inversion at the working base, then only base-level multiply/add steps and
quotient-by-base carries.  That covers the single-element case (base = p),
the byte variant (base = q = p**d), and, through 2x2 unimodular blocks, the
multi-element reduction [a_1, ..., a_N, p**r] -> [p**g, 0, ..., 0].

`extended_euclid` is the deliberately independent reference path: a plain
instrumented extended Euclid used by tests and the benchmark for
cross-checking results and contrasting division counts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import valuation
from .matrices import IntMatrix


@dataclass(frozen=True)
class OpCounts:
    """Operation accounting for one certificate computation."""

    inversions: int  # modular inversions at the working base
    base_mults: int  # multiplications at the working base
    carry_divs: int  # quotient-by-base carry extractions
    general_divs: int  # full-width divisions (always 0 on the digit path)


_NO_OPS = OpCounts(0, 0, 0, 0)


@dataclass(frozen=True)
class BezoutCertificate:
    """Witness of a*x + modulus*(y - correction) == g, exact over the integers.

    `y` is the raw digit-built cofactor; `correction` absorbs the residual
    carry so that the identity holds with no reduction.  `counts` records
    the operations spent producing the certificate.
    """

    x: int
    y: int
    g: int
    correction: int
    modulus: int
    counts: OpCounts

    @property
    def y_final(self) -> int:
        return self.y - self.correction

    def holds_for(self, a: int) -> bool:
        """Exact big-integer check of the certified identity."""
        return a * self.x + self.modulus * self.y_final == self.g


def _digit_solve(a: int, base: int, length: int) -> tuple[int, int, int, OpCounts]:
    """Solve a*x = 1 (mod base**length) digit by digit.

    Returns (x, y, correction, counts) with a*x + base**length*(y - correction)
    == 1 exactly, for the given (unreduced) a.  Requires gcd(a, base) == 1.
    The only inversion happens at the lowest digit; every later digit is fixed
    by base-level multiplications and the running carry.
    """
    m = base ** length
    a0_full = a % m
    quot_full = (a - a0_full) // m  # shift needed when the caller's a >= m
    ad = []
    t = a0_full
    for _ in range(length):
        t, d = divmod(t, base)
        ad.append(d)
    inv0 = pow(ad[0], -1, base)
    mults = 0
    carries = 0
    xd = [0] * length
    carry = 0
    for k in range(length):
        acc = carry
        for i in range(1, k + 1):
            if ad[i]:
                acc += ad[i] * xd[k - i]
                mults += 1
        target = 1 if k == 0 else 0
        xk = ((target - acc) * inv0) % base
        mults += 1
        xd[k] = xk
        total = acc + ad[0] * xk
        mults += 1
        carry = (total - target) // base
        carries += 1
    yd = [0] * length
    for j in range(length):
        acc = carry
        for i in range(j + 1, length):
            if ad[i]:
                acc += ad[i] * xd[length + j - i]
                mults += 1
        yj = (-acc) % base
        yd[j] = yj
        carry = (acc + yj) // base
        carries += 1
    x = 0
    for d in reversed(xd):
        x = x * base + d
    y = 0
    for d in reversed(yd):
        y = y * base + d
    # a = a0_full + m*quot_full, so the exact identity needs the extra x-shift.
    correction = carry * m + quot_full * x
    counts = OpCounts(1, mults, carries, 0)
    return x, y, correction, counts


def bezout_single_padic(a: int, p: int, d: int) -> BezoutCertificate:
    """Certificate for a*x + p**d * y = 1 with p not dividing a.

    x lands in [0, p**d).  Exactly one inversion mod p is performed,
    asserted by the certificate's counts.
    """
    if d < 1:
        raise ValueError("precision d must be >= 1")
    if a % p == 0:
        raise ValueError(f"{a} is not coprime to {p}")
    x, y, corr, counts = _digit_solve(a, p, d)
    return BezoutCertificate(x, y, 1, corr, p ** d, counts)


def bezout_single(a: int, p: int, r: int) -> BezoutCertificate:
    """Certificate for a*x + p**r * y = p**min(v_p(a), r), any integer a.

    The common power of p is stripped first, then the digit iteration runs
    on the coprime part.  a == 0 (or v_p(a) >= r) yields the trivial
    certificate a*0 + p**r * 1 = p**r.
    """
    if r < 1:
        raise ValueError("exponent r must be >= 1")
    pr = p ** r
    e = r if a == 0 else min(valuation(a, p), r)
    if e == r:
        return BezoutCertificate(0, 1, pr, 0, pr, _NO_OPS)
    x, y, corr, counts = _digit_solve(a // p ** e, p, r - e)
    return BezoutCertificate(x, y, p ** e, corr, pr, counts)


def _pair_block(a: int, p: int, s: int) -> tuple[list[list[int]], int]:
    """2x2 unimodular block B with [a, p**s] @ B == [p**g, 0]; returns (B, g).

    Internal variant of `unimodular_pair` that also accepts s == 0.
    """
    ps = p ** s
    if a == 0 or s == 0 or valuation(a, p) >= s:
        # gcd(a, p**s) = p**s; the block swaps the pure power in front.
        return [[0, -1], [1, a // ps]], s
    e = valuation(a, p)
    d = s - e
    x, y, corr, _ = _digit_solve(a // p ** e, p, d)
    return [[x, -(p ** d)], [y - corr, a // p ** e]], e


def unimodular_pair(a: int, p: int, r: int) -> IntMatrix:
    """2x2 matrix Q with |det Q| = 1 and [a, p**r] @ Q = [g, 0]."""
    if r < 1:
        raise ValueError("exponent r must be >= 1")
    block, _ = _pair_block(a, p, r)
    return IntMatrix(block)


@dataclass(frozen=True)
class UnimodularColumnReducer:
    """Unimodular Q with [a_1, ..., a_N, p**r] @ Q = [g, 0, ..., 0]."""

    Q: IntMatrix
    g: int


def bezout_multi(values: list[int], p: int, r: int) -> UnimodularColumnReducer:
    """Collapse a row [a_1, ..., a_N, p**r] to [p**g, 0, ..., 0].

    Folds right to left: each element is combined with the current pure
    power via a 2x2 block, so every intermediate gcd stays a power of p and
    no general-integer gcd is ever taken.  Zero elements pass through with
    their valuation capped at the current exponent.  The first column of Q
    carries coefficients x_i, y with sum(a_i * x_i) + p**r * y = p**g.
    """
    if not values:
        raise ValueError("need at least one element")
    if r < 1:
        raise ValueError("exponent r must be >= 1")
    n = len(values) + 1
    q = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    s = r
    for i in reversed(range(len(values))):
        block, s = _pair_block(values[i], p, s)
        for row in q:
            u, v = row[i], row[i + 1]
            row[i] = u * block[0][0] + v * block[1][0]
            row[i + 1] = u * block[0][1] + v * block[1][1]
    return UnimodularColumnReducer(IntMatrix(q), p ** s)


def bezout_byte(a: int, p: int, d: int, r: int) -> BezoutCertificate:
    """Byte-arithmetic certificate modulo q**s, q = p**d.

    Strips the common power p**g of gcd(a, q**r); with g = m*d + t the
    coprime part a' satisfies a'*x' + q**s * y' = 1 for s = r - m when the
    stripped exponent is byte-aligned (t == 0), else s = r - m - 1.  The
    digit loop runs entirely in base q: one inversion mod q, base-q
    multiplications, quotient-by-q carries.
    """
    if d < 1 or r < 1:
        raise ValueError("byte width d and exponent r must be >= 1")
    if a == 0:
        raise ValueError("a must be nonzero")
    q = p ** d
    e = valuation(a, p)
    if e >= d * r:
        # gcd(a, q**r) = q**r: nothing left for the byte loop to certify
        return BezoutCertificate(0, 1, 1, 0, 1, _NO_OPS)
    a1 = a // p ** e  # coprime to p from here on
    m, t = divmod(e, d)
    s = r - m - (1 if t else 0)
    if s <= 0:
        return BezoutCertificate(0, 1, 1, 0, 1, _NO_OPS)
    x, y, corr, counts = _digit_solve(a1, q, s)
    return BezoutCertificate(x, y, 1, corr, q ** s, counts)


def invert_mod_prime_power(a: int, p: int, r: int) -> int:
    """Inverse of a mod p**r via the digit iteration (a coprime to p)."""
    return bezout_single_padic(a % p ** r, p, r).x


def extended_euclid(a: int, b: int) -> tuple[int, int, int, int]:
    """Instrumented extended Euclid: (g, x, y, divisions), a*x + b*y = g >= 0.

    This is the reference path kept independent of the digit iterations; the
    last component counts full-width divmod steps for benchmark contrast.
    """
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    divisions = 0
    while r != 0:
        quot = old_r // r
        divisions += 1
        old_r, r = r, old_r - quot * r
        old_x, x = x, old_x - quot * x
        old_y, y = y, old_y - quot * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y, divisions
