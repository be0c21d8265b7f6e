"""Symmetric polynomials in n variables and conversions between bases.

A SymFunc holds coordinates (partition -> Fraction) in one of four bases:
monomial (m), elementary (e), Schur (s), power sum (p).  Conversion goes
through realization in x_1..x_n followed by an exact linear solve against the
target basis, so one mechanism covers all bases; round-trip identities anchor
correctness.  Schur polynomials are realized by the bialternant ratio
det(x_i^{lam_j + n - j}) / det(x_i^{n - j}), with exact division by the
Vandermonde factors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations

from .exact import Partition, is_partition, partitions
from .linalg import solve_square
from .poly import MPoly, UPoly, divide_linear


def x_vars(n: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n))


BASES = ("m", "e", "s", "p")


@dataclass
class SymFunc:
    basis: str
    n: int
    coords: dict[Partition, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"unknown basis {self.basis!r}")
        clean: dict[Partition, Fraction] = {}
        for lam, c in self.coords.items():
            lam = tuple(lam)
            if not is_partition(lam):
                raise ValueError(f"not a partition: {lam}")
            if self.basis in ("m", "s") and len(lam) > self.n:
                raise ValueError(
                    f"partition {lam} longer than n={self.n} in basis {self.basis!r}"
                )
            c = Fraction(c)
            if c != 0:
                clean[lam] = c
        self.coords = clean

    @property
    def is_zero(self) -> bool:
        return not self.coords

    def degree_blocks(self) -> dict[int, dict[Partition, Fraction]]:
        out: dict[int, dict[Partition, Fraction]] = {}
        for lam, c in self.coords.items():
            out.setdefault(sum(lam), {})[lam] = c
        return out

    def __add__(self, other: "SymFunc") -> "SymFunc":
        if not isinstance(other, SymFunc) or other.basis != self.basis or other.n != self.n:
            raise ValueError("can only add SymFunc in the same basis and rank")
        coords = dict(self.coords)
        for lam, c in other.coords.items():
            coords[lam] = coords.get(lam, Fraction(0)) + c
        return SymFunc(self.basis, self.n, coords)

    def scale(self, c) -> "SymFunc":
        c = Fraction(c)
        return SymFunc(self.basis, self.n, {lam: c * v for lam, v in self.coords.items()})


# --- realizations ---------------------------------------------------------

def monomial_symmetric(lam: Partition, vars: tuple[str, ...]) -> MPoly:
    """m_lam: the orbit sum of x^lam."""
    n = len(vars)
    if len(lam) > n:
        raise ValueError(f"partition {lam} longer than variable count {n}")
    padded = tuple(lam) + (0,) * (n - len(lam))
    exps = set(permutations(padded))
    return MPoly(vars, {e: Fraction(1) for e in exps})


def elementary(r: int, vars: tuple[str, ...]) -> MPoly:
    """e_r = sum of squarefree degree-r monomials; zero for r > n."""
    n = len(vars)
    if r < 0:
        raise ValueError("negative degree")
    terms = {}
    for idx in combinations(range(n), r):
        e = [0] * n
        for i in idx:
            e[i] = 1
        terms[tuple(e)] = Fraction(1)
    return MPoly(vars, terms)


def power_sum(r: int, vars: tuple[str, ...]) -> MPoly:
    if r < 1:
        raise ValueError("power sum index must be >= 1")
    n = len(vars)
    terms = {}
    for i in range(n):
        e = [0] * n
        e[i] = r
        terms[tuple(e)] = Fraction(1)
    return MPoly(vars, terms)


def schur(lam: Partition, vars: tuple[str, ...]) -> MPoly:
    """s_lam via the bialternant ratio (exact Vandermonde division)."""
    n = len(vars)
    if len(lam) > n:
        raise ValueError(f"partition {lam} longer than variable count {n}")
    padded = tuple(lam) + (0,) * (n - len(lam))
    exps = [padded[j] + n - 1 - j for j in range(n)]  # lam_j + n - j, 1-based j
    numerator = MPoly.zero(vars)
    for perm in permutations(range(n)):
        sign = _perm_sign(perm)
        mono = [0] * n
        for i in range(n):
            mono[i] = exps[perm[i]]
        numerator = numerator + MPoly.monomial(vars, tuple(mono), sign)
    result = numerator
    for i in range(n):
        for j in range(i + 1, n):
            result = divide_linear(result, vars[i], vars[j])
    return result


def _perm_sign(perm: tuple[int, ...]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _product_basis(basis: str, lam: Partition, vars: tuple[str, ...]) -> MPoly:
    if basis == "m":
        return monomial_symmetric(lam, vars)
    if basis == "s":
        return schur(lam, vars)
    maker = elementary if basis == "e" else power_sum
    out = MPoly.const(1, vars)
    for part in lam:
        out = out * maker(part, vars)
    return out


def expand_to_monomials(sf: SymFunc, vars: tuple[str, ...] | None = None) -> MPoly:
    """Realize a SymFunc as an explicit polynomial in x_1..x_n."""
    if vars is None:
        vars = x_vars(sf.n)
    if len(vars) != sf.n:
        raise ValueError("variable count does not match rank")
    out = MPoly.zero(vars)
    for lam, c in sf.coords.items():
        out = out + _product_basis(sf.basis, lam, vars) * c
    return out


# --- collection and conversion --------------------------------------------

def _swap_positions(p: MPoly, i: int, j: int) -> MPoly:
    out = MPoly.zero(p.vars)
    terms = {}
    for e, c in p.terms.items():
        le = list(e)
        le[i], le[j] = le[j], le[i]
        terms[tuple(le)] = c
    out.terms = terms
    return out


def collect_symmetric(p: MPoly, vars: tuple[str, ...]) -> SymFunc:
    """Exact m-basis coordinates of a symmetric polynomial; raises otherwise."""
    n = len(vars)
    if any(v not in vars for v in p.vars):
        raise ValueError("polynomial uses variables outside the symmetric set")
    p = MPoly(vars, p._embed(tuple(vars)))
    for i in range(n - 1):
        if _swap_positions(p, i, i + 1) != p:
            raise ValueError("polynomial is not symmetric")
    coords: dict[Partition, Fraction] = {}
    for e, c in p.terms.items():
        lam = tuple(sorted((x for x in e if x), reverse=True))
        if lam not in coords:
            coords[lam] = c
        elif coords[lam] != c:  # cannot happen for symmetric input
            raise ValueError("inconsistent orbit coefficients")
    return SymFunc("m", n, coords)


def _basis_partitions(basis: str, deg: int, n: int) -> list[Partition]:
    if deg == 0:
        return [()]
    if basis in ("m", "s"):
        return [lam for lam in partitions(deg) if len(lam) <= n]
    # e- and p-products are only linearly independent through degree n
    if deg > n:
        raise ValueError(
            f"cannot convert degree {deg} to basis {basis!r} with only n={n} variables"
        )
    return list(partitions(deg))


_transition_cache: dict[tuple[str, int, int], tuple[list[Partition], list[Partition], list[list[Fraction]]]] = {}


def _transition(basis: str, deg: int, n: int):
    """Matrix of m-coordinates of the target basis elements of one degree."""
    key = (basis, deg, n)
    if key not in _transition_cache:
        cols = _basis_partitions(basis, deg, n)
        rows = [lam for lam in partitions(deg) if len(lam) <= n]
        vars = x_vars(n)
        matrix_cols = []
        for mu in cols:
            realized = collect_symmetric(_product_basis(basis, mu, vars), vars)
            matrix_cols.append([realized.coords.get(lam, Fraction(0)) for lam in rows])
        matrix = [[matrix_cols[c][r] for c in range(len(cols))] for r in range(len(rows))]
        _transition_cache[key] = (cols, rows, matrix)
    return _transition_cache[key]


def convert_basis(sf: SymFunc, target: str) -> SymFunc:
    if target not in BASES:
        raise ValueError(f"unknown basis {target!r}")
    if target == sf.basis:
        return sf
    n = sf.n
    out: dict[Partition, Fraction] = {}
    for deg, block in sf.degree_blocks().items():
        if deg == 0:
            out[()] = block[()]
            continue
        block_sf = SymFunc(sf.basis, n, block)
        mvec = (
            block_sf
            if sf.basis == "m"
            else collect_symmetric(expand_to_monomials(block_sf), x_vars(n))
        )
        if target == "m":
            out.update(mvec.coords)
            continue
        cols, rows, matrix = _transition(target, deg, n)
        rhs = [mvec.coords.get(lam, Fraction(0)) for lam in rows]
        sol = solve_square(matrix, rhs)
        for mu, c in zip(cols, sol):
            if c != 0:
                out[mu] = c
    return SymFunc(target, n, out)


def sym_equal(a: SymFunc, b: SymFunc) -> bool:
    """Semantic equality: same polynomial after realization."""
    if a.n != b.n:
        return False
    return expand_to_monomials(a) == expand_to_monomials(b)


def rank2_schur_coeffs(c_poly: UPoly, k: int) -> list[Fraction]:
    """Schur coefficients A_0..A_{k//2} of a rank-two class from C(u).

    With C(u) the class specialized at (u, 1), the coefficient of s_{(k-j,j)}
    is [u^j] (1-u) C(u), because s_{(k-j,j)}(u,1) = u^j + ... + u^{k-j}.
    """
    product = c_poly * UPoly((1, -1))  # (1 - u) * C(u)
    out = []
    for j in range(k // 2 + 1):
        out.append(product.coeffs[j] if j <= product.degree else Fraction(0))
    return out
