"""Sparse multivariate and dense univariate polynomials over Fraction.

MPoly maps exponent tuples (one entry per named variable) to nonzero Fraction
coefficients.  Binary operations align variable sets automatically, so
polynomials built over different variable lists mix freely.  UPoly is a dense
univariate polynomial c_0..c_D; BinomialSeries is a coefficient sequence
(b_r) standing for sum_r b_r * C(x, r).

The binomial-basis transform is the forward difference table b_r = Δ^r p(0);
its inverse expands C(x, r) iteratively.  Multiplication by a linear factor
(x - alpha) acts on binomial coefficients as (r - alpha) f_r + r f_{r-1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

from .exact import binomial

Exponents = tuple[int, ...]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class MPoly:
    """Immutable-by-convention sparse multivariate polynomial."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str] = (), terms: Mapping[Exponents, object] | None = None):
        self.vars: tuple[str, ...] = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names: {self.vars}")
        clean: dict[Exponents, Fraction] = {}
        if terms:
            width = len(self.vars)
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != width:
                    raise ValueError("exponent tuple width does not match variables")
                if any(e < 0 for e in exps):
                    raise ValueError("negative exponent")
                c = _frac(c)
                if c != 0:
                    clean[exps] = clean.get(exps, Fraction(0)) + c
                    if clean[exps] == 0:
                        del clean[exps]
        self.terms: dict[Exponents, Fraction] = clean

    # --- constructors ---
    @classmethod
    def zero(cls, vars: Sequence[str] = ()) -> "MPoly":
        return cls(vars, {})

    @classmethod
    def const(cls, c, vars: Sequence[str] = ()) -> "MPoly":
        return cls(vars, {(0,) * len(tuple(vars)): _frac(c)})

    @classmethod
    def var(cls, name: str) -> "MPoly":
        return cls((name,), {(1,): Fraction(1)})

    @classmethod
    def monomial(cls, vars: Sequence[str], exps: Sequence[int], c=1) -> "MPoly":
        return cls(vars, {tuple(exps): _frac(c)})

    # --- alignment ---
    def _embed(self, newvars: tuple[str, ...]) -> dict[Exponents, Fraction]:
        if newvars == self.vars:
            return self.terms
        pos = [newvars.index(v) for v in self.vars]
        width = len(newvars)
        out: dict[Exponents, Fraction] = {}
        for exps, c in self.terms.items():
            ne = [0] * width
            for p, e in zip(pos, exps):
                ne[p] = e
            out[tuple(ne)] = c
        return out

    @staticmethod
    def _aligned(a: "MPoly", b: "MPoly") -> tuple[tuple[str, ...], dict, dict]:
        if a.vars == b.vars:
            return a.vars, a.terms, b.terms
        vs = a.vars + tuple(v for v in b.vars if v not in a.vars)
        return vs, a._embed(vs), b._embed(vs)

    @staticmethod
    def _lift(x, vars: tuple[str, ...] = ()) -> "MPoly":
        if isinstance(x, MPoly):
            return x
        return MPoly.const(x, vars)

    # --- ring operations ---
    def __add__(self, other) -> "MPoly":
        other = MPoly._lift(other)
        vs, ta, tb = MPoly._aligned(self, other)
        out = dict(ta)
        for e, c in tb.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        p = MPoly.zero(vs)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        p = MPoly.zero(self.vars)
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other) -> "MPoly":
        return self + (-MPoly._lift(other))

    def __rsub__(self, other) -> "MPoly":
        return MPoly._lift(other) + (-self)

    def __mul__(self, other) -> "MPoly":
        if not isinstance(other, MPoly):
            c = _frac(other)
            p = MPoly.zero(self.vars)
            if c:
                p.terms = {e: cc * c for e, cc in self.terms.items()}
            return p
        vs, ta, tb = MPoly._aligned(self, other)
        out: dict[Exponents, Fraction] = {}
        for ea, ca in ta.items():
            for eb, cb in tb.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, Fraction(0)) + ca * cb
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        p = MPoly.zero(vs)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power")
        result = MPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n > 1
            if base_needed:
                base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, MPoly):
            other = MPoly._lift(other)
        _, ta, tb = MPoly._aligned(self, other)
        return ta == tb

    __hash__ = None  # type: ignore[assignment]

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    # --- structure ---
    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: str) -> int:
        i = self.vars.index(var)
        if not self.terms:
            return 0
        return max(e[i] for e in self.terms)

    def coefficient(self, var: str, power: int) -> "MPoly":
        """Coefficient of var**power, as a polynomial in the other variables."""
        if var not in self.vars:
            raise ValueError(f"unknown variable {var!r}")
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        out: dict[Exponents, Fraction] = {}
        for e, c in self.terms.items():
            if e[i] == power:
                out[e[:i] + e[i + 1:]] = c
        p = MPoly.zero(rest)
        p.terms = out
        return p

    def monomial_coefficient(self, powers: Mapping[str, int]) -> Fraction:
        """Coefficient of the monomial with the given powers (others 0)."""
        for v in powers:
            if v not in self.vars:
                raise ValueError(f"unknown variable {v!r}")
        target = tuple(powers.get(v, 0) for v in self.vars)
        return self.terms.get(target, Fraction(0))

    def homogeneous_part(self, k: int) -> "MPoly":
        p = MPoly.zero(self.vars)
        p.terms = {e: c for e, c in self.terms.items() if sum(e) == k}
        return p

    def truncate_total(self, kmax: int) -> "MPoly":
        p = MPoly.zero(self.vars)
        p.terms = {e: c for e, c in self.terms.items() if sum(e) <= kmax}
        return p

    def truncate_in(self, var: str, dmax: int) -> "MPoly":
        i = self.vars.index(var)
        p = MPoly.zero(self.vars)
        p.terms = {e: c for e, c in self.terms.items() if e[i] <= dmax}
        return p

    def rename(self, mapping: Mapping[str, str]) -> "MPoly":
        newvars = tuple(mapping.get(v, v) for v in self.vars)
        p = MPoly.zero(newvars)
        p.terms = dict(self.terms)
        return p

    def substitute(self, images: Mapping[str, object]) -> "MPoly":
        """Simultaneous substitution var -> MPoly/Fraction; a ring hom."""
        for v in images:
            if v not in self.vars:
                raise ValueError(f"unknown variable {v!r} in substitution")
        kept = tuple(v for v in self.vars if v not in images)
        kept_pos = [self.vars.index(v) for v in kept]
        sub_pos = [(i, MPoly._lift(images[v])) for i, v in enumerate(self.vars) if v in images]
        powers: dict[int, list[MPoly]] = {i: [MPoly.const(1)] for i, _ in sub_pos}
        result = MPoly.zero(kept)
        for e, c in self.terms.items():
            piece = MPoly.monomial(kept, tuple(e[p] for p in kept_pos), c)
            for i, img in sub_pos:
                cache = powers[i]
                while len(cache) <= e[i]:
                    cache.append(cache[-1] * img)
                if e[i]:
                    piece = piece * cache[e[i]]
            result = result + piece
        return result

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        missing = [v for v in self.vars if v not in point]
        if missing:
            raise ValueError(f"evaluate: missing variables {missing}")
        vals = [_frac(point[v]) for v in self.vars]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, p in zip(vals, e):
                if p:
                    term *= v ** p
            total += term
        return total

    def coefficients(self) -> Iterable[Fraction]:
        return self.terms.values()

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            mono = "*".join(
                f"{v}^{p}" if p > 1 else v for v, p in zip(self.vars, e) if p
            )
            if not mono:
                bits.append(str(c))
            elif c == 1:
                bits.append(mono)
            elif c == -1:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{c}*{mono}")
        out = " + ".join(bits)
        return out.replace("+ -", "- ")


def divide_linear(p: MPoly, vb: str, va: str) -> MPoly:
    """Exact quotient p / (vb - va); raises ArithmeticError if not divisible."""
    if vb not in p.vars:
        if p.is_zero:
            return p
        raise ArithmeticError(f"{vb!r} does not occur; division not exact")
    top = p.degree_in(vb)
    by_deg = [p.coefficient(vb, t) for t in range(top + 1)]
    a = MPoly.var(va)
    h: list[MPoly] = [MPoly.zero(())] * top
    if top >= 1:
        h[top - 1] = by_deg[top]
        for t in range(top - 1, 0, -1):
            h[t - 1] = by_deg[t] + a * h[t]
    rem = by_deg[0] + (a * h[0] if top >= 1 else MPoly.zero(()))
    if not rem.is_zero:
        raise ArithmeticError("division by linear factor is not exact")
    result = MPoly.zero((vb,))
    for t, coeff in enumerate(h):
        result = result + MPoly.var(vb) ** t * coeff
    return result


def divided_difference(p: MPoly, a: str = "a", b: str = "b") -> MPoly:
    """(p(a,b) - p(b,a)) / (b - a); other variables act as scalars."""
    swapped = p.rename({a: b, b: a}) if (a in p.vars or b in p.vars) else p
    num = swapped - p  # = p(b,a)-p(a,b); dividing by (a-b) gives the standard sign
    return divide_linear(num, a, b)


class UPoly:
    """Dense univariate polynomial; coeffs[i] is the coefficient of x^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __call__(self, x) -> Fraction:
        x = _frac(x)
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def __add__(self, other) -> "UPoly":
        other = other if isinstance(other, UPoly) else UPoly((other,))
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            ]
        )

    __radd__ = __add__

    def __neg__(self) -> "UPoly":
        return UPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "UPoly":
        other = other if isinstance(other, UPoly) else UPoly((other,))
        return self + (-other)

    def __rsub__(self, other) -> "UPoly":
        return (-self) + other

    def __mul__(self, other) -> "UPoly":
        if not isinstance(other, UPoly):
            c = _frac(other)
            return UPoly([cc * c for cc in self.coeffs])
        if self.is_zero or other.is_zero:
            return UPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UPoly":
        if n < 0:
            raise ValueError("negative power")
        result = UPoly((1,))
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, UPoly):
            other = UPoly((other,))
        return self.coeffs == other.coeffs

    __hash__ = None  # type: ignore[assignment]

    def derivative(self) -> "UPoly":
        return UPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose(self, inner: "UPoly") -> "UPoly":
        """self(inner(x)) by Horner."""
        total = UPoly()
        for c in reversed(self.coeffs):
            total = total * inner + UPoly((c,))
        return total

    def shift(self, c) -> "UPoly":
        """p(x + c)."""
        return self.compose(UPoly((c, 1)))

    def to_mpoly(self, var: str) -> MPoly:
        return MPoly((var,), {(i,): c for i, c in enumerate(self.coeffs)})

    def __repr__(self) -> str:
        if self.is_zero:
            return "UPoly(0)"
        return "UPoly(" + ", ".join(str(c) for c in self.coeffs) + ")"


def interpolate(points: Sequence[tuple]) -> UPoly:
    """Exact Lagrange interpolation; abscissae must be distinct."""
    xs = [_frac(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolate: duplicate abscissae")
    total = UPoly()
    for i, (xi, yi) in enumerate(points):
        yi = _frac(yi)
        if yi == 0:
            continue
        num = UPoly((1,))
        den = Fraction(1)
        xi = _frac(xi)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            xj = _frac(xj)
            num = num * UPoly((-xj, 1))
            den *= xi - xj
        total = total + num * (yi / den)
    return total


class BinomialSeries:
    """Finite sequence (b_r) standing for sum_r b_r * C(x, r)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    def eval_at(self, x: int) -> Fraction:
        return sum((c * binomial(x, r) for r, c in enumerate(self.coeffs)), Fraction(0))

    def min_support(self) -> int | None:
        for r, c in enumerate(self.coeffs):
            if c != 0:
                return r
        return None

    def __eq__(self, other) -> bool:
        if isinstance(other, (tuple, list)):
            other = BinomialSeries(other)
        if not isinstance(other, BinomialSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None  # type: ignore[assignment]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self) -> str:
        return "BinomialSeries(" + ", ".join(str(c) for c in self.coeffs) + ")"


def to_binomial_basis(p: UPoly) -> BinomialSeries:
    """Forward-difference transform: b_r = Δ^r p(0)."""
    if p.is_zero:
        return BinomialSeries()
    vals = [p(i) for i in range(p.degree + 1)]
    out = []
    while vals:
        out.append(vals[0])
        vals = [vals[i + 1] - vals[i] for i in range(len(vals) - 1)]
    return BinomialSeries(out)


def from_binomial_basis(b: BinomialSeries | Sequence) -> UPoly:
    """Inverse transform: expand sum b_r * C(x, r) into the power basis."""
    if not isinstance(b, BinomialSeries):
        b = BinomialSeries(b)
    acc = UPoly()
    basis = UPoly((1,))  # C(x, 0)
    for r, coeff in enumerate(b.coeffs):
        if r > 0:
            basis = basis * UPoly((-(r - 1), 1)) * Fraction(1, r)
        if coeff:
            acc = acc + basis * coeff
    return acc


def times_linear(f: BinomialSeries | Sequence, alpha: int) -> BinomialSeries:
    """Multiply by (x - alpha) in the binomial basis.

    (result)_r = (r - alpha) f_r + r f_{r-1}, by the absorption identity.
    """
    if not isinstance(f, BinomialSeries):
        f = BinomialSeries(f)
    cs = f.coeffs
    out = []
    for r in range(len(cs) + 1):
        fr = cs[r] if r < len(cs) else Fraction(0)
        fr1 = cs[r - 1] if 1 <= r <= len(cs) else Fraction(0)
        out.append((r - alpha) * fr + r * fr1)
    return BinomialSeries(out)


@dataclass
class ShiftResult:
    """Outcome of a positivity-preserving multiplication by (x - c)."""

    series: BinomialSeries
    precondition_ok: bool   # input nonnegative with min support >= c
    nonnegative: bool
    min_support: int | None


def times_linear_nonneg(a: BinomialSeries | Sequence, c: int) -> ShiftResult:
    """Multiply a nonnegative series by (x - c), certifying nonnegativity.

    When the input is nonnegative with minimum support I >= c, the output is
    nonnegative with minimum support >= max(I, c+1).  A violated precondition
    is reported in the result rather than silently certifying positivity.
    """
    if not isinstance(a, BinomialSeries):
        a = BinomialSeries(a)
    support = a.min_support()
    ok = all(x >= 0 for x in a.coeffs) and (support is None or support >= c)
    out = times_linear(a, c)
    return ShiftResult(
        series=out,
        precondition_ok=ok,
        nonnegative=all(x >= 0 for x in out.coeffs),
        min_support=out.min_support(),
    )


def resultant(p: UPoly, q: UPoly) -> Fraction:
    """Resultant via the Sylvester determinant."""
    m, n = p.degree, q.degree
    if m < 0 or n < 0:
        raise ValueError("resultant of the zero polynomial")
    if m == 0 and n == 0:
        return Fraction(1)
    from .linalg import det_exact

    size = m + n
    pc = list(reversed(p.coeffs))  # descending
    qc = list(reversed(q.coeffs))
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + pc + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + qc + [Fraction(0)] * (size - n - 1 - i))
    return det_exact(rows)


def discriminant(p: UPoly) -> Fraction:
    """(-1)^{n(n-1)/2} resultant(p, p') / lc(p) for deg(p) = n >= 1."""
    n = p.degree
    if n < 1:
        raise ValueError("discriminant requires degree >= 1")
    res = resultant(p, p.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res / p.leading()


def binomial_row_poly(r: int) -> UPoly:
    """C(x, r) as a polynomial."""
    out = UPoly((1,))
    for i in range(r):
        out = out * UPoly((-i, 1)) * Fraction(1, i + 1)
    return out


def comb_int(n: int, k: int) -> int:
    return comb(n, k)
