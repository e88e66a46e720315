"""Smith normal form over the integers, with full unimodular certificates.

Two pivoting engines share the decomposition record:

* `smith_form` is the general algorithm: minimal-|entry| pivoting, division
  with remainder, and a 2x2 fix-up pass that restores the divisibility chain.
* `smith_form_prime_power` reduces the augmented matrix [A, -p**r * I] using
  only p-valuation comparisons and `bezout_multi` column collapses: the
  identity block supplies a pure power p**r in every row, the global
  minimum-valuation pivot makes all column clearings exact, and the
  invariant factors come out as powers of p with nondecreasing exponents.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import valuation
from .bezout import bezout_multi, extended_euclid
from .matrices import IntMatrix


@dataclass(frozen=True)
class SmithDecomposition:
    """Certificate P @ A @ Q == S with |det P| = |det Q| = 1.

    S is rectangular diagonal; `invariant_factors` are its positive diagonal
    entries f_1 | f_2 | ... | f_rank.
    """

    P: IntMatrix
    Q: IntMatrix
    S: IntMatrix
    rank: int
    invariant_factors: tuple[int, ...]


def verify_decomposition(A: IntMatrix, dec: SmithDecomposition) -> None:
    """Exact re-check of every decomposition invariant; raises on failure."""
    if (dec.P @ A @ dec.Q) != dec.S:
        raise ArithmeticError("P @ A @ Q != S")
    if abs(dec.P.det()) != 1:
        raise ArithmeticError("P is not unimodular")
    if abs(dec.Q.det()) != 1:
        raise ArithmeticError("Q is not unimodular")
    s = dec.S.rows
    for i in range(len(s)):
        for j in range(len(s[0])):
            if i != j and s[i][j] != 0:
                raise ArithmeticError("S is not diagonal")
    f = dec.invariant_factors
    if len(f) != dec.rank:
        raise ArithmeticError("rank / factor count mismatch")
    for i, v in enumerate(f):
        if v <= 0 or s[i][i] != v:
            raise ArithmeticError("bad invariant factor entry")
        if i + 1 < len(f) and f[i + 1] % v != 0:
            raise ArithmeticError(f"chain broken: {v} does not divide {f[i + 1]}")
    for i in range(dec.rank, min(len(s), len(s[0]))):
        if s[i][i] != 0:
            raise ArithmeticError("nonzero entry beyond the rank")


def _swap_rows(w: list[list[int]], p: list[list[int]], i: int, j: int) -> None:
    w[i], w[j] = w[j], w[i]
    p[i], p[j] = p[j], p[i]


def _swap_cols(w: list[list[int]], q: list[list[int]], i: int, j: int) -> None:
    for row in w:
        row[i], row[j] = row[j], row[i]
    for row in q:
        row[i], row[j] = row[j], row[i]


def _add_row(w: list[list[int]], p: list[list[int]], dst: int, src: int, c: int) -> None:
    w[dst] = [a + c * b for a, b in zip(w[dst], w[src])]
    p[dst] = [a + c * b for a, b in zip(p[dst], p[src])]


def _add_col(w: list[list[int]], q: list[list[int]], dst: int, src: int, c: int) -> None:
    for row in w:
        row[dst] += c * row[src]
    for row in q:
        row[dst] += c * row[src]


def _negate_col(w: list[list[int]], q: list[list[int]], j: int) -> None:
    for row in w:
        row[j] = -row[j]
    for row in q:
        row[j] = -row[j]


def _min_abs_entry(w: list[list[int]], t: int) -> tuple[int, int] | None:
    best = None
    best_val = 0
    for i in range(t, len(w)):
        for j in range(t, len(w[0])):
            v = w[i][j]
            if v != 0 and (best is None or abs(v) < best_val):
                best = (i, j)
                best_val = abs(v)
    return best


def _diagonalize(w: list[list[int]], p: list[list[int]], q: list[list[int]], start: int) -> int:
    """Bring w[start:, start:] to diagonal form; returns the final rank."""
    k, m = len(w), len(w[0])
    t = start
    while t < min(k, m):
        pos = _min_abs_entry(w, t)
        if pos is None:
            break
        while True:
            i, j = pos
            if i != t:
                _swap_rows(w, p, t, i)
            if j != t:
                _swap_cols(w, q, t, j)
            if w[t][t] < 0:
                _negate_col(w, q, t)
            piv = w[t][t]
            dirty = False
            for i2 in range(t + 1, k):
                if w[i2][t]:
                    _add_row(w, p, i2, t, -(w[i2][t] // piv))
                    if w[i2][t]:
                        dirty = True
            for j2 in range(t + 1, m):
                if w[t][j2]:
                    _add_col(w, q, j2, t, -(w[t][j2] // piv))
                    if w[t][j2]:
                        dirty = True
            if not dirty:
                break
            # remainders are smaller than |piv|: re-pick and repeat
            pos = _min_abs_entry(w, t)
        t += 1
    return t


def _repair_chain(w: list[list[int]], p: list[list[int]], q: list[list[int]], rank: int) -> None:
    """2x2 fix-up sweeps until every diagonal entry divides the next."""
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            a, b = w[i][i], w[i + 1][i + 1]
            if b % a == 0:
                continue
            changed = True
            g, u, v, _ = extended_euclid(a, b)
            # col_i += col_{i+1}: block becomes [[a, 0], [b, b]]
            _add_col(w, q, i, i + 1, 1)
            # left-multiply rows (i, i+1) by [[u, v], [-b/g, a/g]] (det 1)
            ri = [u * x + v * y for x, y in zip(w[i], w[i + 1])]
            rj = [(-b // g) * x + (a // g) * y for x, y in zip(w[i], w[i + 1])]
            w[i], w[i + 1] = ri, rj
            pi = [u * x + v * y for x, y in zip(p[i], p[i + 1])]
            pj = [(-b // g) * x + (a // g) * y for x, y in zip(p[i], p[i + 1])]
            p[i], p[i + 1] = pi, pj
            # clear the leftover (i, i+1) entry; g divides it
            _add_col(w, q, i + 1, i, -(w[i][i + 1] // g))


def smith_form(A: IntMatrix) -> SmithDecomposition:
    """Canonical Smith decomposition of any integer matrix."""
    k, m = A.shape
    w = A.copy_rows()
    p = IntMatrix.identity(k).copy_rows()
    q = IntMatrix.identity(m).copy_rows()
    rank = _diagonalize(w, p, q, 0)
    for i in range(rank):
        if w[i][i] < 0:
            _negate_col(w, q, i)
    _repair_chain(w, p, q, rank)
    factors = tuple(w[i][i] for i in range(rank))
    return SmithDecomposition(
        IntMatrix(p), IntMatrix(q), IntMatrix(w), rank, factors
    )


def augmented_matrix(A: IntMatrix, n: int) -> IntMatrix:
    """[A, -n*I]: the integral system whose solutions encode A x = b mod n."""
    k = A.nrows
    return IntMatrix(
        [A.rows[i] + [-n if j == i else 0 for j in range(k)] for i in range(k)]
    )


def smith_form_augmented(A: IntMatrix, n: int) -> SmithDecomposition:
    """Smith decomposition of [A, -n*I]; always full row rank k."""
    if n < 2:
        raise ValueError("modulus must be >= 2")
    dec = smith_form(augmented_matrix(A, n))
    if dec.rank != A.nrows:
        raise ArithmeticError("augmented matrix lost rank")  # cannot happen
    return dec


def smith_form_prime_power(A: IntMatrix, p: int, r: int) -> SmithDecomposition:
    """Smith decomposition of [A, -p**r * I] using only valuations and
    `bezout_multi` collapses.

    Each identity-block column supplies a pure power p**r anchored at its
    row, so any row can be collapsed by one multi-element Bezout step.
    Picking the pivot of globally minimal valuation makes the subsequent
    column clearing an exact division by p**g, which keeps the untouched
    anchors pure and the pivot exponents nondecreasing.
    """
    if r < 1:
        raise ValueError("exponent r must be >= 1")
    k, l = A.shape
    m = k + l
    pr = p ** r
    aug = augmented_matrix(A, pr)
    w = aug.copy_rows()
    pm = IntMatrix.identity(k).copy_rows()
    qm = IntMatrix.identity(m).copy_rows()
    for c in range(l, m):  # flip -p**r anchors to +p**r
        _negate_col(w, qm, c)
    anchor = {i: l + i for i in range(k)}
    active_rows = list(range(k))
    active_cols = set(range(m))
    pivots: list[tuple[int, int, int]] = []  # (row, col, exponent)

    for _ in range(k):
        scols = sorted(active_cols)
        best = None  # (valuation, row, col)
        for i in active_rows:
            for j in scols:
                v = w[i][j]
                if v:
                    val = valuation(v, p)
                    if best is None or val < best[0]:
                        best = (val, i, j)
            if best is not None and best[0] == 0:
                break
        row = best[1]
        alpha = anchor[row]
        cols = [j for j in scols if j != alpha and w[row][j]]
        if cols:
            reducer = bezout_multi([w[row][j] for j in cols], p, r)
            order = cols + [alpha]
            block = reducer.Q.rows
            for target in (w, qm):
                for line in target:
                    old = [line[c] for c in order]
                    for t, c in enumerate(order):
                        line[c] = sum(
                            old[u] * block[u][t] for u in range(len(order)) if block[u][t]
                        )
            piv_col = cols[0]
            g = valuation(reducer.g, p)
        else:
            piv_col = alpha
            g = r
        pg = p ** g
        for i in active_rows:
            if i != row and w[i][piv_col]:
                _add_row(w, pm, i, row, -(w[i][piv_col] // pg))
        pivots.append((row, piv_col, g))
        active_rows.remove(row)
        active_cols.discard(piv_col)

    # exponents are nondecreasing by construction; the stable sort is the
    # divisibility-repair pass for the prime-power case
    pivots.sort(key=lambda t: t[2])
    row_order = [t[0] for t in pivots]
    col_order = [t[1] for t in pivots] + sorted(active_cols)
    w2 = [[w[i][j] for j in col_order] for i in row_order]
    p2 = [pm[i] for i in row_order]
    q2 = [[qrow[j] for j in col_order] for qrow in qm]
    factors = tuple(p ** t[2] for t in pivots)
    return SmithDecomposition(
        IntMatrix(p2), IntMatrix(q2), IntMatrix(w2), k, factors
    )
