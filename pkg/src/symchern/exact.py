"""Exact integer and rational combinatorics used by every other module.

Integers are Python ints, rationals are fractions.Fraction; nothing in this
package ever touches floating point.  Partitions and weak compositions are
plain tuples of ints.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, Sequence

Partition = tuple[int, ...]
WeakComposition = tuple[int, ...]


def binomial(n: int, k: int) -> int:
    """Generalized binomial coefficient C(n, k) = n(n-1)...(n-k+1)/k!.

    Valid for any integer n (including negative) and k >= 0.
    """
    if k < 0:
        raise ValueError(f"binomial: lower index must be nonnegative, got {k}")
    if n >= 0:
        return comb(n, k)
    num = 1
    for i in range(k):
        num *= n - i
    # k! always divides a product of k consecutive integers
    return num // factorial(k)


@lru_cache(maxsize=None)
def stirling1_unsigned(n: int, k: int) -> int:
    """Permutations of n letters with exactly k cycles (unsigned, 1st kind)."""
    if n == 0 and k == 0:
        return 1
    if n <= 0 or k <= 0 or k > n:
        return 0
    return stirling1_unsigned(n - 1, k - 1) + (n - 1) * stirling1_unsigned(n - 1, k)


@lru_cache(maxsize=None)
def stirling2(q: int, r: int) -> int:
    """Set partitions of a q-element set into r nonempty blocks (2nd kind)."""
    if q == 0 and r == 0:
        return 1
    if q <= 0 or r <= 0 or r > q:
        return 0
    return stirling2(q - 1, r - 1) + r * stirling2(q - 1, r)


@lru_cache(maxsize=None)
def defect_derangements(N: int, K: int) -> int:
    """Fixed-point-free permutations of N letters with N-K cycles.

    Zero outside K+1 <= N <= 2K, except for the empty permutation (0, 0).
    Satisfies D(N,K) = (N-1)(D(N-1,K-1) + D(N-2,K-1)): the cycle through a
    distinguished letter either has length >= 3 (delete the letter) or is a
    transposition (delete it whole).
    """
    if N == 0 and K == 0:
        return 1
    if K <= 0 or N < K + 1 or N > 2 * K:
        return 0
    return (N - 1) * (defect_derangements(N - 1, K - 1) + defect_derangements(N - 2, K - 1))


def weak_compositions(n: int, d: int) -> Iterator[WeakComposition]:
    """All length-n tuples of nonnegative ints summing to d, in lex order."""
    if n < 1:
        raise ValueError("weak_compositions: n must be >= 1")
    if n == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in weak_compositions(n - 1, d - first):
            yield (first,) + rest


def count_weak_compositions(n: int, d: int) -> int:
    return comb(d + n - 1, n - 1)


def partitions(m: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of m with parts <= max_part, largest part first."""
    if m == 0:
        yield ()
        return
    if max_part is None or max_part > m:
        max_part = m
    for first in range(max_part, 0, -1):
        for rest in partitions(m - first, first):
            yield (first,) + rest


def multiplicities(lam: Sequence[int]) -> dict[int, int]:
    """Part multiplicities m_i of a partition."""
    out: dict[int, int] = {}
    for part in lam:
        out[part] = out.get(part, 0) + 1
    return out


def is_partition(lam: Sequence[int]) -> bool:
    lam = tuple(lam)
    return all(a >= 1 for a in lam) and all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1))


# --- sequence predicates -------------------------------------------------
#
# Empty and all-zero sequences pass every predicate (vacuous truth: zero rows
# such as A_{3,2} are legitimate inputs).

Number = int | Fraction


def is_nonnegative(seq: Sequence[Number]) -> bool:
    return all(v >= 0 for v in seq)


def is_log_concave(seq: Sequence[Number]) -> bool:
    """Contiguous nonzero support and b_r^2 >= b_{r-1} b_{r+1} throughout."""
    vals = list(seq)
    nonzero = [i for i, v in enumerate(vals) if v != 0]
    if len(nonzero) <= 1:
        return True
    lo, hi = nonzero[0], nonzero[-1]
    if any(vals[i] == 0 for i in range(lo, hi + 1)):
        return False  # internal zero
    for i in range(len(vals)):
        left = vals[i - 1] if i >= 1 else 0
        right = vals[i + 1] if i + 1 < len(vals) else 0
        if vals[i] * vals[i] < left * right:
            return False
    return True


def is_strongly_log_concave(seq: Sequence[Number]) -> bool:
    """f(p)f(q) >= f(p-1)f(q+1) for all p <= q; out-of-range terms are 0."""
    vals = list(seq)
    n = len(vals)

    def get(i: int) -> Number:
        return vals[i] if 0 <= i < n else 0

    for p in range(n):
        for q in range(p, n):
            if get(p) * get(q) < get(p - 1) * get(q + 1):
                return False
    return True
