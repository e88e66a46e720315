import random

import pytest

from modsmith import (
    PAdicDigits,
    PrimePowerFactorization,
    crt_pair,
    is_probable_prime,
    to_digits,
    valuation,
)


def test_valuation_examples():
    assert valuation(12, 2) == 2
    assert valuation(7, 5) == 0
    assert valuation(3 ** 40 * 11, 3) == 40


def test_valuation_zero_is_infinite():
    with pytest.raises(ValueError):
        valuation(0, 5)


def test_valuation_shift_property():
    rng = random.Random(7)
    for _ in range(200):
        p = rng.choice([2, 3, 5, 7, 11])
        a = rng.randrange(1, 10 ** 6)
        while a % p == 0:
            a += 1
        k = rng.randrange(0, 20)
        assert valuation(a * p ** k, p) == k
        assert valuation(-a * p ** k, p) == k


def test_to_digits_examples():
    assert to_digits(13, 2, 4).digits == (1, 0, 1, 1)
    assert to_digits(0, 7, 3).digits == (0, 0, 0)
    assert to_digits(255, 256, 2).digits == (255, 0)


def test_to_digits_round_trip():
    rng = random.Random(11)
    for _ in range(300):
        base = rng.randrange(2, 50)
        length = rng.randrange(1, 12)
        a = rng.randrange(-(10 ** 9), 10 ** 9)
        d = to_digits(a, base, length)
        assert d.value() % base ** length == a % base ** length
        assert all(0 <= v < base for v in d.digits)
        assert len(d.digits) == length


def test_padic_digits_rejects_bad_digit():
    with pytest.raises(ValueError):
        PAdicDigits(2, (0, 2))


def test_crt_pair_examples():
    assert crt_pair([(2, 3), (3, 4)]) == 11
    assert crt_pair([(0, 5), (0, 9)]) == 0
    assert crt_pair([(1, 2), (2, 3), (3, 5)]) == 23


def test_crt_pair_names_offending_moduli():
    with pytest.raises(ValueError, match="4 and 6"):
        crt_pair([(1, 4), (1, 6)])


def test_crt_pair_residue_property():
    rng = random.Random(13)
    for _ in range(300):
        moduli = rng.sample([3, 4, 5, 7, 9, 11, 13, 16, 25], rng.randrange(1, 4))
        ok = True
        for i in range(len(moduli)):
            for j in range(i + 1, len(moduli)):
                import math

                if math.gcd(moduli[i], moduli[j]) != 1:
                    ok = False
        if not ok:
            continue
        residues = [(rng.randrange(m), m) for m in moduli]
        x = crt_pair(residues)
        total = 1
        for _, m in residues:
            total *= m
        assert 0 <= x < total
        for xi, m in residues:
            assert x % m == xi


def test_crt_pair_exhaustive_small():
    # full scan of the output against every residue tuple
    for m1, m2 in [(3, 4), (5, 9), (7, 8), (16, 27)]:
        for x1 in range(m1):
            for x2 in range(m2):
                x = crt_pair([(x1, m1), (x2, m2)])
                assert x % m1 == x1 and x % m2 == x2
    for x1 in range(5):
        for x2 in range(7):
            for x3 in range(8):
                x = crt_pair([(x1, 5), (x2, 7), (x3, 8)])
                assert (x % 5, x % 7, x % 8) == (x1, x2, x3)


def test_crt_pair_with_prime_hints():
    x = crt_pair([(3, 4), (1, 3), (2, 25)], primes=[2, 3, 5])
    assert x % 4 == 3 and x % 3 == 1 and x % 25 == 2


def test_is_probable_prime():
    primes = [2, 3, 5, 97, 101, 2 ** 61 - 1]
    composites = [1, 0, 4, 91, 561, 2 ** 64, 2 ** 61 + 1]
    assert all(is_probable_prime(p) for p in primes)
    assert not any(is_probable_prime(c) for c in composites)


def test_factorization_validation():
    fac = PrimePowerFactorization.for_modulus(12, [(3, 1), (2, 2)])
    assert fac.factors == ((2, 2), (3, 1))  # normalized ascending
    assert fac.modulus() == 12
    with pytest.raises(ValueError, match="not prime"):
        PrimePowerFactorization.for_modulus(8, [(8, 1)])
    with pytest.raises(ValueError, match="twice"):
        PrimePowerFactorization.for_modulus(4, [(2, 1), (2, 1)])
    with pytest.raises(ValueError, match="expected"):
        PrimePowerFactorization.for_modulus(10, [(2, 1), (3, 1)])
    with pytest.raises(ValueError):
        PrimePowerFactorization.for_modulus(2, [(2, 0)])
