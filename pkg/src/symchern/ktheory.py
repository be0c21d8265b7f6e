"""The normalized multiplicative analogue of the total Chern class.

For the weight set A_{n,d} the product

    NN(z, zeta, u) = prod_alpha (1 + z (1 - prod_j (1 - zeta u_j)^{alpha_j}))

is expanded exactly with z- and zeta-degree caps.  Its [z^k zeta^k] diagonal
recovers c_k(n,d), its [z^q zeta^m] coefficient vanishes for q > m, and every
coefficient is a polynomial in the moment binomials T_1..T_m.  The symbolic
route rebuilds those T-polynomials constructively: each factor contributes
sums of binomials C(alpha_j, beta_j), whose products expand in falling
factorials of alpha_j, and the factorial-moment identity collapses the sum
over weights to a single T; Newton identities then assemble the z-powers.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial

from .exact import Partition, binomial, partitions, stirling2, weak_compositions
from .poly import MPoly, UPoly
from .report import VerificationReport, report_from_counterexamples
from .symfunc import SymFunc, collect_symmetric, convert_basis, monomial_symmetric

ZVAR = "z"
WVAR = "zeta"


def u_vars(n: int) -> tuple[str, ...]:
    return tuple(f"u{j + 1}" for j in range(n))


@dataclass
class Expansion:
    n: int
    d: int
    zmax: int
    wmax: int
    value: MPoly  # variables: z, zeta, u1..un


def expansion(n: int, d: int, zmax: int, wmax: int, budget: int = 10_000) -> Expansion:
    """Exact expansion modulo zeta^{wmax+1} with z-degree capped at zmax."""
    factors = binomial(d + n - 1, n - 1)
    if factors > budget:
        raise ValueError(f"product over {factors} weights exceeds budget {budget}")
    uv = u_vars(n)
    vars = (ZVAR, WVAR) + uv
    acc = MPoly.const(1, vars)
    z = MPoly.var(ZVAR)
    for alpha in weak_compositions(n, d):
        inner = MPoly.const(1, vars)
        for j, a in enumerate(alpha):
            if a == 0:
                continue
            # (1 - zeta u_j)^a truncated at zeta^wmax
            fac = MPoly.zero(vars)
            for t in range(min(a, wmax) + 1):
                exps = [0] * len(vars)
                exps[1] = t
                exps[2 + j] = t
                fac = fac + MPoly.monomial(vars, tuple(exps), (-1) ** t * binomial(a, t))
            inner = (inner * fac).truncate_in(WVAR, wmax)
        a_alpha = MPoly.const(1, vars) - inner
        acc = (acc + (acc * z * a_alpha).truncate_in(ZVAR, zmax)).truncate_in(ZVAR, zmax)
        acc = acc.truncate_in(WVAR, wmax)
    zi = acc.vars.index(ZVAR)
    wi = acc.vars.index(WVAR)
    for exps in acc.terms:
        if exps[zi] > exps[wi]:
            raise AssertionError("z-degree exceeding zeta-degree in expansion")
    return Expansion(n, d, zmax, wmax, acc)


def coefficient(n: int, d: int, q: int, m: int, basis: str | None = None) -> SymFunc:
    """[z^q zeta^m] of the expansion, as a symmetric function of u_1..u_n.

    Returned in the e-basis when m <= n (otherwise the e-products are not
    independent and the m-basis is returned instead, unless forced).
    """
    exp = expansion(n, d, q, m)
    upart = exp.value.coefficient(ZVAR, q).coefficient(WVAR, m)
    uv = u_vars(n)
    sf = collect_symmetric(upart, uv)
    if basis is None:
        basis = "e" if m <= n else "m"
    return convert_basis(sf, basis)


# --- constructive symbolic coefficients -------------------------------------

def _binom_in_a(b: int) -> UPoly:
    """C(a, b) as a polynomial in a."""
    out = UPoly((1,))
    for t in range(b):
        out = out * UPoly((-t, 1)) * Fraction(1, t + 1)
    return out


def _falling_coeffs(p: UPoly) -> list[Fraction]:
    """Coefficients of p in the falling-factorial basis a^(t)."""
    if p.is_zero:
        return []
    out = [Fraction(0)] * (p.degree + 1)
    for q, c in enumerate(p.coeffs):
        if c:
            for t in range(q + 1):
                s2 = stirling2(q, t) if q else (1 if t == 0 else 0)
                if s2:
                    out[t] += c * s2
    return out


def _splits(total: int, s: int) -> list[tuple[int, ...]]:
    """Ordered s-tuples of nonnegative ints with the given sum."""
    if s == 1:
        return [(total,)]
    out = []
    for first in range(total + 1):
        for rest in _splits(total - first, s - 1):
            out.append((first,) + rest)
    return out


def _moment_poly_for_pattern(mu: Partition, s: int, tvars: tuple[str, ...]) -> MPoly:
    """sum over weights of [zeta^{|mu|} u^mu] of A_alpha^s, as a T-polynomial.

    Enumerates s-tuples of nonzero beta-vectors summing to mu; for each
    position the product of C(a, beta) expands in falling factorials, and the
    factorial-moment identity turns each choice of falling degrees (t_j) into
    (prod t_j!) T_{sum t_j}.
    """
    npos = len(mu)
    vars = tvars
    total = MPoly.zero(vars)
    per_position = [_splits(part, s) for part in mu]
    for combo in product(*per_position):
        # combo[j][i] = beta_j^{(i)}; every factor i must be nonzero somewhere
        if any(all(combo[j][i] == 0 for j in range(npos)) for i in range(s)):
            continue
        falling = []
        for j in range(npos):
            poly = UPoly((1,))
            for i in range(s):
                if combo[j][i]:
                    poly = poly * _binom_in_a(combo[j][i])
            falling.append(_falling_coeffs(poly))
        # distribute over falling degrees per position
        choices = [range(len(f)) for f in falling]
        for ts in product(*choices):
            coeff = Fraction(1)
            for j, t in enumerate(ts):
                coeff *= falling[j][t] * factorial(t)
            if coeff == 0:
                continue
            rsum = sum(ts)
            if rsum == 0:
                raise AssertionError("constant falling term should not occur")
            exps = [0] * len(vars)
            exps[rsum - 1] = 1
            total = total + MPoly.monomial(vars, tuple(exps), coeff)
    sign = -1 if (sum(mu) + s) % 2 else 1
    return sign * total


def _symbolic_power_sum(s: int, m: int) -> MPoly:
    """sum_alpha A_alpha^s with T-symbolic coefficients, modulo zeta^{m+1}.

    Variables: T_1..T_m, zeta, u_1..u_m (m ambient variables are enough to
    represent all symmetric functions of degree <= m faithfully).
    """
    tvars = tuple(f"T{r}" for r in range(1, m + 1))
    uv = u_vars(m)
    vars = tvars + (WVAR,) + uv
    out = MPoly.zero(vars)
    for mprime in range(s, m + 1):
        for mu in partitions(mprime):
            if len(mu) > m:
                continue
            tpoly = _moment_poly_for_pattern(mu, s, tvars)
            if tpoly.is_zero:
                continue
            realized = monomial_symmetric(mu, uv)
            wexps = [0] * len(vars)
            wexps[len(tvars)] = mprime
            zeta_m = MPoly.monomial(vars, tuple(wexps), 1)
            out = out + tpoly * realized * zeta_m
    return out


def symbolic_coefficient(q: int, m: int, max_order: int = 4) -> dict[Partition, MPoly]:
    """[z^q zeta^m] with coefficients as polynomials in T_1..T_m, by e-partition.

    Specializing T_r -> C(d+n-1, n+r-1) must reproduce coefficient(n, d, q, m)
    for every n >= m.
    """
    if q < 0 or m < 0:
        raise ValueError("negative orders")
    if m > max_order:
        raise ValueError(f"zeta order {m} exceeds the configured bound {max_order}")
    if q == 0:
        return {(): MPoly.const(1)} if m == 0 else {}
    if q > m:
        return {}
    tvars = tuple(f"T{r}" for r in range(1, m + 1))
    uv = u_vars(m)
    vars = tvars + (WVAR,) + uv
    psums = {s: _symbolic_power_sum(s, m) for s in range(1, q + 1)}
    es = [MPoly.const(1, vars)]
    for qq in range(1, q + 1):
        acc = MPoly.zero(vars)
        for s in range(1, qq + 1):
            acc = acc + ((-1) ** (s - 1)) * (es[qq - s] * psums[s]).truncate_in(WVAR, m)
        es.append(acc * Fraction(1, qq))
    target = es[q].coefficient(WVAR, m)  # MPoly in T-vars and u-vars
    # slice by T-monomial, collect the symmetric u-part of each slice
    present_t = tuple(v for v in tvars if v in target.vars)
    present_u = tuple(v for v in uv if v in target.vars)
    tidx = [target.vars.index(v) for v in present_t]
    uidx = [target.vars.index(v) for v in present_u]
    slices: dict[tuple[int, ...], dict[tuple[int, ...], Fraction]] = {}
    for exps, c in target.terms.items():
        tkey = tuple(exps[i] for i in tidx)
        ukey = tuple(exps[i] for i in uidx)
        slices.setdefault(tkey, {})[ukey] = c
    out: dict[Partition, MPoly] = {}
    for tkey, terms in slices.items():
        upoly = MPoly(present_u, terms)
        sf = convert_basis(collect_symmetric(upoly, uv), "e")
        texps = [0] * m
        for v, e in zip(present_t, tkey):
            texps[int(v[1:]) - 1] = e
        tmono = MPoly.monomial(tvars, tuple(texps), 1)
        for lam, coeff in sf.coords.items():
            cur = out.get(lam, MPoly.zero(tvars))
            out[lam] = cur + tmono * coeff
    return {lam: p for lam, p in out.items() if not p.is_zero}


def specialize_symbolic(sym: dict[Partition, MPoly], n: int, d: int) -> SymFunc:
    """Evaluate a symbolic coefficient at concrete (n, d)."""
    coords: dict[Partition, Fraction] = {}
    for lam, tp in sym.items():
        subs = {v: Fraction(binomial(d + n - 1, n + int(v[1:]) - 1)) for v in tp.vars}
        value = tp.substitute(subs)
        coords[lam] = value.monomial_coefficient({})
    return SymFunc("e", n, coords)


# --- printed small coefficients and grid checks ------------------------------

def _printed_small() -> dict[tuple[int, int], dict[Partition, MPoly]]:
    T1, T2, T3 = (MPoly.var(f"T{r}") for r in (1, 2, 3))
    half = Fraction(1, 2)
    sixth = Fraction(1, 6)
    return {
        (1, 1): {(1,): T1},
        (1, 2): {(1, 1): -T2, (2,): T2},
        (2, 2): {(1, 1): (T1 * T1 - T1 - 2 * T2) * half, (2,): T1 + T2},
        (1, 3): {(1, 1, 1): T3, (2, 1): -2 * T3, (3,): T3},
        (2, 3): {
            (1, 1, 1): 3 * T3 + 2 * T2 - T1 * T2,
            (2, 1): T1 * T2 - 6 * T3 - 5 * T2,
            (3,): 3 * T3 + 3 * T2,
        },
        (3, 3): {
            (1, 1, 1): (T1 ** 3 - 3 * T1 ** 2 - 6 * T1 * T2 + 12 * T3 + 12 * T2 + 2 * T1) * sixth,
            (2, 1): T1 ** 2 + T1 * T2 - 4 * T3 - 5 * T2 - T1,
            (3,): 2 * T3 + 3 * T2 + T1,
        },
    }


def check_printed_small(grid=None) -> VerificationReport:
    """The six printed small coefficients, symbolically and on a grid."""
    start = time.perf_counter()
    if grid is None:
        grid = [(n, d) for n in (2, 3) for d in (1, 2, 3)]
    counterexamples = []
    for (q, m), want in _printed_small().items():
        got = symbolic_coefficient(q, m)
        keys = set(got) | set(want)
        for lam in keys:
            a = got.get(lam, MPoly.zero(()))
            if not a == want.get(lam, MPoly.zero(())):
                counterexamples.append({"q": q, "m": m, "lam": list(lam), "got": repr(a)})
        for n, d in grid:
            from .symfunc import sym_equal

            spec = specialize_symbolic(got, n, d)
            direct = coefficient(n, d, q, m, basis=None)
            if not sym_equal(convert_basis(spec, "m"), convert_basis(direct, "m")):
                counterexamples.append({"q": q, "m": m, "n": n, "d": d, "reason": "specialization mismatch"})
    return report_from_counterexamples("nn-small", {"grid": [list(c) for c in grid]}, counterexamples, start)


def check_diagonal_and_vanishing(kmax: int = 3, grid=None) -> VerificationReport:
    """Diagonal [z^k zeta^k] = c_k(n,d) and vanishing for q > m."""
    from .chern import chern_oracle
    from .symfunc import sym_equal

    start = time.perf_counter()
    if grid is None:
        grid = [(n, d) for n in (2, 3) for d in (1, 2, 3)]
    counterexamples = []
    for n, d in grid:
        classes = chern_oracle(n, d, kmax)
        for k in range(1, kmax + 1):
            got = coefficient(n, d, k, k, basis="m")
            want = classes[k]
            # compare over u- and x-variables via coordinates (both m-basis)
            if got.coords != want.coords:
                counterexamples.append({"n": n, "d": d, "k": k, "reason": "diagonal mismatch"})
        for m in range(0, kmax):
            for q in range(m + 1, kmax + 1):
                got = coefficient(n, d, q, m, basis="m")
                if not got.is_zero:
                    counterexamples.append({"n": n, "d": d, "q": q, "m": m, "reason": "vanishing violated"})
    return report_from_counterexamples(
        "nn-diagonal", {"kmax": kmax, "grid": [list(c) for c in grid]}, counterexamples, start
    )
