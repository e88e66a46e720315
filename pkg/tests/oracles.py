"""Independent reference implementations used to check the library.

Nothing here shares code with the solver paths under test: determinants are
expanded by Laplace recursion, solution sets come from exhaustive
enumeration, gcds from math.gcd.
"""

from __future__ import annotations

import itertools
import math

import numpy as np


def laplace_det(rows) -> int:
    """Determinant by cofactor expansion (small matrices only)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * laplace_det(minor)
    return total


def minors_gcd(rows, size: int) -> int:
    """gcd of all size x size minors (0 when all vanish)."""
    k, m = len(rows), len(rows[0])
    g = 0
    for ri in itertools.combinations(range(k), size):
        for ci in itertools.combinations(range(m), size):
            sub = [[rows[i][j] for j in ci] for i in ri]
            g = math.gcd(g, laplace_det(sub))
    return g


def enumerate_solutions(A, b, n, w=None, limit=None, chunk=1 << 20):
    """All x in Z_n^l with A x = b mod n (and gcd(<w,x>, n) = 1 if w given).

    Enumerates the full cube Z_n^l with numpy, chunked over a flat index.
    With `limit` set, stops once that many solutions were collected.
    """
    arr = np.array(A, dtype=np.int64) % n
    rhs = np.array(b, dtype=np.int64) % n
    l = arr.shape[1]
    total = n ** l
    out = []
    powers = np.array([n ** j for j in range(l)], dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        X = (idx[:, None] // powers[None, :]) % n
        ok = np.all((X @ arr.T - rhs[None, :]) % n == 0, axis=1)
        if w is not None:
            phi = (X @ np.array(w, dtype=np.int64)) % n
            ok &= np.gcd(phi, n) == 1
        for row in X[ok]:
            out.append(tuple(int(v) for v in row))
            if limit is not None and len(out) >= limit:
                return out
    return out


def count_solutions(A, b, n, w=None) -> int:
    """Number of solutions in Z_n^l (same filters as enumerate_solutions)."""
    arr = np.array(A, dtype=np.int64) % n
    rhs = np.array(b, dtype=np.int64) % n
    l = arr.shape[1]
    total = n ** l
    powers = np.array([n ** j for j in range(l)], dtype=np.int64)
    count = 0
    for start in range(0, total, 1 << 20):
        idx = np.arange(start, min(start + (1 << 20), total), dtype=np.int64)
        X = (idx[:, None] // powers[None, :]) % n
        ok = np.all((X @ arr.T - rhs[None, :]) % n == 0, axis=1)
        if w is not None:
            phi = (X @ np.array(w, dtype=np.int64)) % n
            ok &= np.gcd(phi, n) == 1
        count += int(ok.sum())
    return count


def any_solution(A, b, n, w=None) -> bool:
    return bool(enumerate_solutions(A, b, n, w=w, limit=1))


def check_exact(A, b, n, x, w=None) -> bool:
    """Pure-Python exact verification of one solution."""
    for row, want in zip(A, b):
        if (sum(a * v for a, v in zip(row, x)) - want) % n != 0:
            return False
    if w is not None:
        phi = sum(wi * xi for wi, xi in zip(w, x))
        if math.gcd(phi, n) != 1:
            return False
    return True
