import itertools
import random
from fractions import Fraction

import pytest

from modsmith import (
    FieldMatrix,
    PrimeField,
    RationalField,
    kernel_basis,
    rank,
    solve_field_constrained,
    unique_case_check,
)

Q = RationalField()


def _fm(field, rows):
    return FieldMatrix.from_ints(field, rows)


def test_prime_field_requires_prime():
    with pytest.raises(ValueError):
        PrimeField(6)


def test_rank_and_kernel_examples():
    assert rank(_fm(Q, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3
    assert kernel_basis(_fm(Q, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == []

    zero = _fm(Q, [[0, 0], [0, 0]])
    assert rank(zero) == 0
    assert len(kernel_basis(zero)) == 2

    M = _fm(Q, [[1, 2], [2, 4]])
    assert rank(M) == 1
    basis = kernel_basis(M)
    assert len(basis) == 1
    v = basis[0]
    assert v[0] + 2 * v[1] == 0 and v != (0, 0)


def test_kernel_vectors_annihilate():
    rng = random.Random(89)
    for _ in range(100):
        p = rng.choice([2, 3, 5, 7])
        f = PrimeField(p)
        k, l = rng.randrange(1, 4), rng.randrange(1, 4)
        M = _fm(f, [[rng.randrange(p) for _ in range(l)] for _ in range(k)])
        for v in kernel_basis(M):
            for row in M.rows:
                assert sum(a * b for a, b in zip(row, v)) % p == 0
        assert rank(M) + len(kernel_basis(M)) == l


def test_solve_field_examples():
    f5 = PrimeField(5)
    res = solve_field_constrained(_fm(f5, [[1, 0]]), [2], [0, 1])
    assert res.exists and res.x == (2, 1)

    res = solve_field_constrained(
        _fm(Q, [[1, 0], [0, 1]]),
        [Fraction(1), Fraction(1)],
        [Fraction(1), Fraction(-1)],
    )
    assert not res.exists and res.failed_condition == 2

    f2 = PrimeField(2)
    res = solve_field_constrained(_fm(f2, [[1, 1]]), [1], [1, 0])
    assert res.exists and res.x == (1, 0)


def test_solve_field_inconsistent():
    res = solve_field_constrained(_fm(Q, [[1], [1]]), [Fraction(1), Fraction(2)], [Fraction(1)])
    assert not res.exists and res.failed_condition == 1


def test_unique_case_examples():
    f3 = PrimeField(3)
    assert unique_case_check(_fm(f3, [[1, 0], [0, 1]]), [1, 2], [1, 0])
    assert not unique_case_check(_fm(f3, [[1, 0], [0, 1]]), [0, 2], [1, 0])
    assert unique_case_check(_fm(Q, [[1]]), [Fraction(3)], [Fraction(1)])


def test_unique_case_rejects_nontrivial_kernel():
    with pytest.raises(ValueError):
        unique_case_check(_fm(Q, [[1, 1]]), [Fraction(1)], [Fraction(1), Fraction(0)])


def test_field_solver_matches_enumeration():
    rng = random.Random(97)
    for _ in range(300):
        p = rng.choice([2, 3, 5, 7])
        f = PrimeField(p)
        k, l = rng.randrange(1, 4), rng.randrange(1, 4)
        A = _fm(f, [[rng.randrange(p) for _ in range(l)] for _ in range(k)])
        b = [rng.randrange(p) for _ in range(k)]
        w = [rng.randrange(p) for _ in range(l)]
        res = solve_field_constrained(A, b, w)
        witness = None
        for x in itertools.product(range(p), repeat=l):
            good = all(
                sum(a * v for a, v in zip(row, x)) % p == bb
                for row, bb in zip(A.rows, b)
            )
            if good and sum(wi * xi for wi, xi in zip(w, x)) % p != 0:
                witness = x
                break
        assert res.exists == (witness is not None)
        if res.exists:
            for row, bb in zip(A.rows, b):
                assert sum(a * v for a, v in zip(row, res.x)) % p == bb
            assert sum(wi * xi for wi, xi in zip(w, res.x)) % p != 0


def test_unique_case_agrees_with_solver():
    # scoped to the rank-test's hypothesis: trivial kernel, consistent system
    rng = random.Random(101)
    checked = 0
    for _ in range(400):
        p = rng.choice([2, 3, 5, 7])
        f = PrimeField(p)
        l = rng.randrange(1, 3)
        k = rng.randrange(l, 4)
        A = _fm(f, [[rng.randrange(p) for _ in range(l)] for _ in range(k)])
        if kernel_basis(A):
            continue
        xstar = [rng.randrange(p) for _ in range(l)]
        b = [sum(a * v for a, v in zip(row, xstar)) % p for row in A.rows]
        w = [rng.randrange(p) for _ in range(l)]
        res = solve_field_constrained(A, b, w)
        assert unique_case_check(A, b, w) == res.exists
        checked += 1
    assert checked > 100


def test_unimodular_rank_is_min_field_rank():
    # for square-free n, the minor-gcd rank equals the worst rank mod p | n
    from modsmith import IntMatrix, unimodular_rank

    rng = random.Random(107)
    for _ in range(100):
        n, primes = rng.choice(
            [(6, (2, 3)), (15, (3, 5)), (30, (2, 3, 5)), (105, (3, 5, 7))]
        )
        k, l = rng.randrange(1, 4), rng.randrange(1, 4)
        rows = [[rng.randrange(-9, 10) for _ in range(l)] for _ in range(k)]
        expected = min(rank(_fm(PrimeField(p), rows)) for p in primes)
        assert unimodular_rank(IntMatrix(rows), n) == expected


def test_rational_solver_random():
    rng = random.Random(103)
    for _ in range(100):
        k, l = rng.randrange(1, 4), rng.randrange(1, 4)
        A = _fm(Q, [[rng.randrange(-4, 5) for _ in range(l)] for _ in range(k)])
        xstar = [Fraction(rng.randrange(-4, 5)) for _ in range(l)]
        b = [sum(a * v for a, v in zip(row, xstar)) for row in A.rows]
        w = [Fraction(rng.randrange(-4, 5)) for _ in range(l)]
        res = solve_field_constrained(A, b, w)
        if res.exists:
            for row, bb in zip(A.rows, b):
                assert sum(a * v for a, v in zip(row, res.x)) == bb
            assert sum(wi * xi for wi, xi in zip(w, res.x)) != 0
