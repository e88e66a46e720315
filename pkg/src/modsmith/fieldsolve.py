"""Constrained linear systems over a field: A x = b with <w, x> != 0.

Everything is exact: the two carriers are reduced rationals (Fraction) and
residues mod a prime.  Elimination pivots on the first nonzero entry in
column order; there are no tolerances anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import is_probable_prime


class RationalField:
    """Exact rational arithmetic carrier."""

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, v: int) -> Fraction:
        return Fraction(v)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def __repr__(self) -> str:
        return "RationalField()"


class PrimeField:
    """Residue arithmetic mod a prime p."""

    def __init__(self, p: int):
        if not is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def from_int(self, v: int) -> int:
        return v % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


@dataclass(frozen=True)
class FieldMatrix:
    """Rectangular matrix over one of the field carriers."""

    field: object
    rows: tuple[tuple[object, ...], ...]

    @classmethod
    def from_ints(cls, field, rows: Sequence[Sequence[int]]) -> "FieldMatrix":
        return cls(
            field, tuple(tuple(field.from_int(v) for v in r) for r in rows)
        )

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])


def _rref(M: FieldMatrix) -> tuple[list[list[object]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column list)."""
    f = M.field
    rows = [list(r) for r in M.rows]
    nrows, ncols = len(rows), len(rows[0])
    pivots = []
    cur = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(cur, nrows):
            if rows[i][col] != f.zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[cur], rows[pivot_row] = rows[pivot_row], rows[cur]
        inv = f.inv(rows[cur][col])
        rows[cur] = [f.mul(inv, v) for v in rows[cur]]
        for i in range(nrows):
            if i != cur and rows[i][col] != f.zero:
                c = rows[i][col]
                rows[i] = [
                    f.sub(v, f.mul(c, pv)) for v, pv in zip(rows[i], rows[cur])
                ]
        pivots.append(col)
        cur += 1
        if cur == nrows:
            break
    return rows, pivots


def rank(M: FieldMatrix) -> int:
    """Rank by exact elimination."""
    return len(_rref(M)[1])


def kernel_basis(M: FieldMatrix) -> list[tuple[object, ...]]:
    """Basis of the right kernel, one vector per free column."""
    f = M.field
    rows, pivots = _rref(M)
    ncols = M.ncols
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [f.zero] * ncols
        v[fc] = f.one
        for i, pc in enumerate(pivots):
            v[pc] = f.neg(rows[i][fc])
        basis.append(tuple(v))
    return basis


def _particular_solution(
    A: FieldMatrix, b: Sequence[object]
) -> tuple[object, ...] | None:
    """One solution of A x = b, or None when inconsistent."""
    f = A.field
    aug = FieldMatrix(f, tuple(
        tuple(row) + (bv,) for row, bv in zip(A.rows, b)
    ))
    rows, pivots = _rref(aug)
    if A.ncols in pivots:
        return None
    x = [f.zero] * A.ncols
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][A.ncols]
    return tuple(x)


def _dot(f, u: Sequence[object], v: Sequence[object]):
    acc = f.zero
    for a, b in zip(u, v):
        acc = f.add(acc, f.mul(a, b))
    return acc


@dataclass(frozen=True)
class FieldSolveResult:
    exists: bool
    x: tuple[object, ...] | None
    failed_condition: int | None  # 1 = inconsistent, 2 = functional vanishes


def solve_field_constrained(
    A: FieldMatrix, b: Sequence[object], w: Sequence[object]
) -> FieldSolveResult:
    """Solve A x = b over the field with <w, x> != 0.

    Finds a particular solution, takes it if its functional value is
    nonzero, otherwise scans the kernel basis for a direction with nonzero
    functional value and shifts by it.  Fails with condition 1 when the
    system is inconsistent, condition 2 when the functional vanishes on the
    whole solution set.
    """
    f = A.field
    x0 = _particular_solution(A, b)
    if x0 is None:
        return FieldSolveResult(False, None, 1)
    if _dot(f, w, x0) != f.zero:
        return FieldSolveResult(True, x0, None)
    for v in kernel_basis(A):
        if _dot(f, w, v) != f.zero:
            x = tuple(f.add(a, c) for a, c in zip(x0, v))
            return FieldSolveResult(True, x, None)
    return FieldSolveResult(False, None, 2)


def unique_case_check(
    A: FieldMatrix, b: Sequence[object], w: Sequence[object]
) -> bool:
    """Rank test for the zero-kernel case: the constrained system is
    solvable iff appending the functional row strictly raises the rank of
    the augmented block [[A, b], [w, 0]] over [A; w].

    Requires ker A = 0; raises otherwise.
    """
    f = A.field
    if kernel_basis(A):
        raise ValueError("unique_case_check requires a trivial kernel")
    stacked = FieldMatrix(f, A.rows + (tuple(w),))
    bordered = FieldMatrix(
        f,
        tuple(row + (bv,) for row, bv in zip(A.rows, b))
        + ((tuple(w) + (f.zero,)),),
    )
    return rank(stacked) < rank(bordered)
