"""Exact linear algebra over Fraction: determinants and linear solves."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _to_frac_matrix(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def det_exact(rows: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction Gaussian elimination."""
    a = _to_frac_matrix(rows)
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("det_exact: matrix must be square")
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        inv = Fraction(1) / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                factor = a[r][col] * inv
                for c in range(col, n):
                    a[r][c] -= factor * a[col][c]
    return det


def _rref(a: list[list[Fraction]], b: list[Fraction]) -> tuple[list[tuple[int, int]], bool]:
    """In-place reduced row echelon form; returns (pivots, consistent)."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        piv = next((r for r in range(row, nrows) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        b[row], b[piv] = b[piv], b[row]
        inv = Fraction(1) / a[row][col]
        a[row] = [x * inv for x in a[row]]
        b[row] *= inv
        for r in range(nrows):
            if r != row and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
                b[r] -= f * b[row]
        pivots.append((row, col))
        row += 1
    consistent = all(b[r] == 0 for r in range(row, nrows))
    return pivots, consistent


def solve_consistent(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One exact solution of a (possibly rectangular) system, or None.

    Returns None when the system is inconsistent.  Underdetermined systems get
    the particular solution with all free variables set to zero.
    """
    a = _to_frac_matrix(rows)
    b = [Fraction(x) for x in rhs]
    if len(a) != len(b):
        raise ValueError("solve_consistent: row/rhs length mismatch")
    ncols = len(a[0]) if a else 0
    if any(len(row) != ncols for row in a):
        raise ValueError("solve_consistent: ragged matrix")
    pivots, consistent = _rref(a, b)
    if not consistent:
        return None
    sol = [Fraction(0)] * ncols
    for prow, pcol in pivots:
        sol[pcol] = b[prow]
    return sol


def solve_square(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve a nonsingular square system exactly; raises on singular input."""
    a = _to_frac_matrix(rows)
    n = len(a)
    if any(len(row) != n for row in a) or len(rhs) != n:
        raise ValueError("solve_square: dimension mismatch")
    b = [Fraction(x) for x in rhs]
    pivots, consistent = _rref(a, b)
    if len(pivots) < n or not consistent:
        raise ValueError("solve_square: singular system")
    sol = [Fraction(0)] * n
    for prow, pcol in pivots:
        sol[pcol] = b[prow]
    return sol
