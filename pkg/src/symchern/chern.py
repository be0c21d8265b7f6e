"""Chern classes of Sym^d(C^n): oracle product, moment formulas, universal
polynomials, the d=2 determinant, leading terms, rank-two Euler classes.

The oracle multiplies out prod_{|alpha|=d} (1 + alpha.x) with an on-the-fly
degree cut.  Everything else is checked against it: the power sums via
factorial moments of weak compositions, the universal polynomials via Newton
identities, the d=2 Schur coefficients via the binomial determinant.
"""

from __future__ import annotations

import time
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .exact import (
    Partition,
    binomial,
    multiplicities,
    partitions,
    stirling1_unsigned,
    stirling2,
    weak_compositions,
)
from .linalg import det_exact, solve_consistent
from .poly import MPoly, UPoly, interpolate
from .report import VerificationReport, report_from_counterexamples
from .symfunc import (
    SymFunc,
    collect_symmetric,
    convert_basis,
    expand_to_monomials,
    rank2_schur_coeffs,
    x_vars,
)


class OracleBudgetError(ValueError):
    """The requested product has more factors than the configured budget."""


def moment_binomial(n: int, d: int, r: int) -> int:
    """T_r(n,d) = C(d+n-1, n+r-1): the r-th factorial moment of the weight
    multiset of Sym^d(C^n), divided by r!."""
    return binomial(d + n - 1, n + r - 1)


def chern_oracle(n: int, d: int, kmax: int, budget: int = 10_000) -> list[SymFunc]:
    """c_0..c_kmax of Sym^d(C^n) by direct truncated product expansion."""
    factors = binomial(d + n - 1, n - 1)
    if factors > budget:
        raise OracleBudgetError(
            f"product over {factors} weights exceeds budget {budget}"
        )
    acc: dict[tuple[int, ...], int] = {(0,) * n: 1}
    for alpha in weak_compositions(n, d):
        nxt = dict(acc)
        for mono, c in acc.items():
            if sum(mono) >= kmax:
                continue
            for i, a in enumerate(alpha):
                if a:
                    m2 = mono[:i] + (mono[i] + 1,) + mono[i + 1:]
                    nxt[m2] = nxt.get(m2, 0) + c * a
        acc = nxt
    vars = x_vars(n)
    out = []
    for k in range(kmax + 1):
        part = MPoly(vars, {m: Fraction(c) for m, c in acc.items() if sum(m) == k})
        out.append(collect_symmetric(part, vars))
    return out


def chern_class(n: int, d: int, k: int, basis: str = "e", budget: int = 10_000) -> SymFunc:
    """Single class c_k(n,d) in the requested basis."""
    sf = chern_oracle(n, d, k, budget=budget)[k]
    return convert_basis(sf, basis)


# --- power sums via factorial moments --------------------------------------

def _mixed_moment(n: int, d: int, mu: Partition) -> Fraction:
    """sum over weights of alpha_1^{mu_1} ... alpha_s^{mu_s} (distinct slots).

    Powers convert to falling factorials by Stirling numbers of the second
    kind; each falling-factorial product sums to a single moment binomial.
    """
    total = Fraction(0)

    def rec(idx: int, rsum: int, coeff: int):
        nonlocal total
        if idx == len(mu):
            total += coeff * moment_binomial(n, d, rsum)
            return
        for r in range(1, mu[idx] + 1):
            rec(idx + 1, rsum + r, coeff * stirling2(mu[idx], r) * factorial(r))

    rec(0, 0, 1)
    return total


def power_sum_moment(n: int, d: int, m: int) -> SymFunc:
    """P_m(n,d) = sum of m-th powers of the weights, via factorial moments."""
    if m < 1:
        raise ValueError("power sum index must be >= 1")
    coords: dict[Partition, Fraction] = {}
    for mu in partitions(m):
        if len(mu) > n:
            continue
        coeff = Fraction(factorial(m))
        for part in mu:
            coeff /= factorial(part)
        value = coeff * _mixed_moment(n, d, mu)
        if value:
            coords[mu] = value
    return SymFunc("m", n, coords)


def oracle_power_sum(n: int, d: int, m: int) -> SymFunc:
    """P_m(n,d) summed weight by weight (independent of the moment route)."""
    coords: dict[tuple[int, ...], Fraction] = {}
    exps = [nu for nu in weak_compositions(n, m)]
    for alpha in weak_compositions(n, d):
        for nu in exps:
            coeff = factorial(m)
            value = 1
            for a, e in zip(alpha, nu):
                coeff //= factorial(e)
                value *= a ** e
            if value:
                coords[nu] = coords.get(nu, Fraction(0)) + coeff * value
    vars = x_vars(n)
    return collect_symmetric(MPoly(vars, coords), vars)


# --- universal polynomials --------------------------------------------------

def t_names(k: int) -> tuple[str, ...]:
    return tuple(f"T{r}" for r in range(1, k + 1))


def e_names(k: int) -> tuple[str, ...]:
    return tuple(f"e{r}" for r in range(1, k + 1))


@lru_cache(maxsize=None)
def _m_to_e(deg: int) -> dict[Partition, dict[Partition, Fraction]]:
    """Universal expansion of each m_mu (|mu| = deg) in the e-basis."""
    out = {}
    for mu in partitions(deg):
        unit = SymFunc("m", deg, {mu: Fraction(1)})
        out[mu] = dict(convert_basis(unit, "e").coords)
    return out


def _e_monomial(lam: Partition, vars: tuple[str, ...], k: int) -> tuple[int, ...]:
    exps = [0] * len(vars)
    for part in lam:
        exps[k + part - 1] += 1  # e-variables sit after the k T-variables
    return tuple(exps)


@lru_cache(maxsize=None)
def _universal_power_sum(j: int, k: int) -> MPoly:
    """P_j as a polynomial in T_1..T_j and e_1..e_j (embedded in rank k vars)."""
    vars = t_names(k) + e_names(k)
    m2e = _m_to_e(j)
    out = MPoly.zero(vars)
    for mu in partitions(j):
        coeff = Fraction(factorial(j))
        for part in mu:
            coeff /= factorial(part)
        # mixed moment with symbolic T_r: linear combination of T variables
        tpoly = MPoly.zero(vars)

        def rec(idx: int, rsum: int, c: int):
            nonlocal tpoly
            if idx == len(mu):
                exps = [0] * len(vars)
                exps[rsum - 1] = 1
                tpoly = tpoly + MPoly.monomial(vars, tuple(exps), c)
                return
            for r in range(1, mu[idx] + 1):
                rec(idx + 1, rsum + r, c * stirling2(mu[idx], r) * factorial(r))

        rec(0, 0, 1)
        epoly = MPoly.zero(vars)
        for lam, ec in m2e[mu].items():
            epoly = epoly + MPoly.monomial(vars, _e_monomial(lam, vars, k), ec)
        out = out + coeff * (tpoly * epoly)
    return out


@lru_cache(maxsize=None)
def universal_poly(k: int) -> MPoly:
    """The universal expression of c_k in T_1..T_k and e_1..e_k.

    Built by the Newton recursion k c_k = sum_j (-1)^{j-1} c_{k-j} P_j with
    the power sums P_j expressed through moment binomials.
    """
    vars = t_names(k) + e_names(k)
    cs = [MPoly.const(1, vars)]
    for kk in range(1, k + 1):
        acc = MPoly.zero(vars)
        for j in range(1, kk + 1):
            term = cs[kk - j] * _universal_power_sum(j, k)
            acc = acc + ((-1) ** (j - 1)) * term
        cs.append(acc * Fraction(1, kk))
    return cs[k]


def specialize_universal(k: int, n: int, d: int) -> SymFunc:
    """c_k(n,d) in the e-basis, from the universal polynomial."""
    q = universal_poly(k)
    subs = {f"T{r}": Fraction(moment_binomial(n, d, r)) for r in range(1, k + 1)}
    numeric = q.substitute(subs) if k >= 1 else q
    coords: dict[Partition, Fraction] = {}
    for exps, c in numeric.terms.items():
        lam: list[int] = []
        for pos, e in enumerate(exps):
            part = pos + 1  # remaining variables are e1..ek
            lam.extend([part] * e)
        coords[tuple(sorted(lam, reverse=True))] = c
    return SymFunc("e", n, coords)


def elementary_coefficient(n: int, d: int, lam: Partition) -> Fraction:
    """Coefficient of e_lam in c_k(n,d), k = |lam| (universal route)."""
    lam = tuple(sorted(lam, reverse=True))
    k = sum(lam)
    return specialize_universal(k, n, d).coords.get(lam, Fraction(0))


def c2_closed(n: int, d: int) -> SymFunc:
    """The closed second class: C(d+n,n+1) e_2 + (u^2/2 - u/2 - v) e_1^2
    with u = C(d+n-1,n) and v = C(d+n-1,n+1)."""
    u = Fraction(binomial(d + n - 1, n))
    v = Fraction(binomial(d + n - 1, n + 1))
    return SymFunc(
        "e",
        n,
        {
            (2,): Fraction(binomial(d + n, n + 1)),
            (1, 1): u * u / 2 - u / 2 - v,
        },
    )


# --- the d = 2 determinant ---------------------------------------------------

def sym2_schur_coefficient(lam: Partition, n: int) -> Fraction:
    """Schur coefficient of s_lam in c(Sym^2 C^n) by the binomial determinant."""
    lam = tuple(lam)
    if len(lam) > n:
        raise ValueError("partition longer than the rank")
    k = sum(lam)
    padded = lam + (0,) * (n - len(lam))
    rows = []
    for i in range(1, n + 1):
        rows.append(
            [binomial(2 * n - 2 * j + 1, padded[i - 1] + n - i) for j in range(1, n + 1)]
        )
    power = k - comb(n, 2)
    scale = Fraction(2) ** power if power >= 0 else Fraction(1, 2 ** (-power))
    return scale * det_exact(rows)


# --- leading terms -----------------------------------------------------------

def check_leading_term(lam: Partition, d: int) -> VerificationReport:
    """Interpolate n -> [e_lam] c_k(n,d) and verify degree and leading term.

    Expected degree (d-1) * len(lam) with leading coefficient
    1 / (prod m_i! * ((d-1)!)^len(lam)).
    """
    start = time.perf_counter()
    lam = tuple(sorted(lam, reverse=True))
    if d < 2:
        raise ValueError("leading-term check requires d >= 2")
    deg = (d - 1) * len(lam)
    samples = [(n, elementary_coefficient(n, d, lam)) for n in range(1, deg + 3)]
    poly = interpolate(samples)
    extra_n = deg + 3
    counterexamples = []
    if poly(extra_n) != elementary_coefficient(extra_n, d, lam):
        counterexamples.append({"reason": "degree bound validation failed", "n": extra_n})
    if poly.degree != deg:
        counterexamples.append({"reason": "unexpected degree", "degree": poly.degree, "expected": deg})
    expected_lead = Fraction(1)
    for m in multiplicities(lam).values():
        expected_lead /= factorial(m)
    expected_lead /= factorial(d - 1) ** len(lam)
    if poly.is_zero or poly.leading() != expected_lead:
        counterexamples.append(
            {
                "reason": "unexpected leading coefficient",
                "leading": str(None if poly.is_zero else poly.leading()),
                "expected": str(expected_lead),
            }
        )
    return report_from_counterexamples(
        "leading-term", {"lam": list(lam), "d": d}, counterexamples, start
    )


# --- rank-two Euler classes ---------------------------------------------------

def euler_top_rank2(d: int) -> UPoly:
    """The top class of Sym^d(C^2) specialized at (u, 1)."""
    out = UPoly((1,))
    for i in range(d + 1):
        out = out * UPoly((d - i, i))
    return out


def euler_schur_rank2(d: int, b: int) -> int:
    """Schur coefficient of s_{(d+1-b, b)} in the rank-two top class.

    Closed form: sum_r (-1)^{r-b} C(r+1, b) d^{d+1-r} [d+1, d+1-r] with the
    unsigned Stirling numbers of the first kind.
    """
    if not 0 <= b <= (d + 1) // 2:
        raise ValueError("index out of the admissible range")
    total = 0
    for r in range(max(b - 1, 0), d + 1):
        sign = -1 if (r - b) % 2 else 1
        total += sign * binomial(r + 1, b) * d ** (d + 1 - r) * stirling1_unsigned(d + 1, d + 1 - r)
    return total


def euler_schur_oracle(d: int, b: int) -> Fraction:
    """The same coefficient read off the expanded product."""
    return rank2_schur_coeffs(euler_top_rank2(d), d + 1)[b]


# --- verification suites -------------------------------------------------------

def check_d2_printed(nmax: int = 6) -> VerificationReport:
    """Determinant vs the closed k <= 3 rows for 2 <= n <= nmax."""
    start = time.perf_counter()
    counterexamples = []
    for n in range(2, nmax + 1):
        nf = Fraction(n)
        expected = {
            (1,): nf + 1,
            (2,): (nf - 1) * (nf + 2) / 2,
            (1, 1): (nf + 1) * (nf + 2) / 2,
            (3,): (nf - 2) * (nf - 1) * (nf + 3) / 6,
            (2, 1): (nf + 2) * (nf * nf + nf - 3) / 3,
            (1, 1, 1): (nf + 1) * (nf + 2) * (nf + 3) / 6,
        }
        for lam, want in expected.items():
            if len(lam) > n:
                continue
            got = sym2_schur_coefficient(lam, n)
            if got != want:
                counterexamples.append({"n": n, "lam": list(lam), "got": str(got), "want": str(want)})
    return report_from_counterexamples("d2-printed", {"nmax": nmax}, counterexamples, start)


def check_d2_oracle(nmax: int = 4, kmax: int = 4) -> VerificationReport:
    """Determinant vs the oracle Schur expansion of c(Sym^2 C^n)."""
    start = time.perf_counter()
    counterexamples = []
    for n in range(2, nmax + 1):
        classes = chern_oracle(n, 2, kmax)
        for k in range(kmax + 1):
            schur_form = convert_basis(classes[k], "s")
            for lam in partitions(k):
                if len(lam) > n:
                    continue
                got = sym2_schur_coefficient(lam, n)
                want = schur_form.coords.get(lam, Fraction(0))
                if got != want:
                    counterexamples.append(
                        {"n": n, "k": k, "lam": list(lam), "got": str(got), "want": str(want)}
                    )
    return report_from_counterexamples(
        "d2-oracle", {"nmax": nmax, "kmax": kmax}, counterexamples, start
    )


def check_euler_rank2(dmax: int = 7) -> VerificationReport:
    start = time.perf_counter()
    counterexamples = []
    for d in range(1, dmax + 1):
        for b in range((d + 1) // 2 + 1):
            closed = euler_schur_rank2(d, b)
            oracle = euler_schur_oracle(d, b)
            if oracle != closed:
                counterexamples.append({"d": d, "b": b, "closed": closed, "oracle": str(oracle)})
    return report_from_counterexamples("euler-rank2", {"dmax": dmax}, counterexamples, start)


def check_leading_suite(ds: tuple[int, ...] = (2, 3), kmax: int = 3) -> VerificationReport:
    start = time.perf_counter()
    counterexamples = []
    for d in ds:
        for k in range(1, kmax + 1):
            for lam in partitions(k):
                rep = check_leading_term(lam, d)
                if rep.status != "pass":
                    counterexamples.extend(
                        {**ce, "lam": list(lam), "d": d} for ce in rep.counterexamples
                    )
    return report_from_counterexamples(
        "leading", {"ds": list(ds), "kmax": kmax}, counterexamples, start
    )


def check_schur_t_fit(k: int) -> VerificationReport:
    """Fit each Schur coefficient of c_k(n,d) by T-monomials, then extrapolate.

    The fit uses monomials in T_1..T_k of total degree <= k over a grid of
    (n, d) cells and is validated on held-out cells; rank deficiency of the
    fit is tolerated because validation is performed on unseen points.
    """
    start = time.perf_counter()
    exps = _t_monomials(k)
    fit_grid = [(n, d) for n in range(k, k + 5) for d in range(2, 7)]
    held_out = [(k + 5, 3), (k + 5, 5), (k, 7)]
    lam_list = list(partitions(k))
    coeffs: dict[tuple[int, int], dict[Partition, Fraction]] = {}
    for n, d in fit_grid + held_out:
        schur_form = convert_basis(chern_oracle(n, d, k)[k], "s")
        coeffs[(n, d)] = schur_form.coords
    counterexamples = []
    rows = []
    for n, d in fit_grid:
        tvals = [Fraction(moment_binomial(n, d, r)) for r in range(1, k + 1)]
        rows.append([_eval_monomial(tvals, e) for e in exps])
    for lam in lam_list:
        rhs = [coeffs[cell].get(lam, Fraction(0)) for cell in fit_grid]
        sol = solve_consistent(rows, rhs)
        if sol is None:
            counterexamples.append({"lam": list(lam), "reason": "no T-polynomial fit"})
            continue
        for n, d in held_out:
            tvals = [Fraction(moment_binomial(n, d, r)) for r in range(1, k + 1)]
            pred = sum((c * _eval_monomial(tvals, e) for c, e in zip(sol, exps)), Fraction(0))
            want = coeffs[(n, d)].get(lam, Fraction(0))
            if pred != want:
                counterexamples.append(
                    {"lam": list(lam), "cell": [n, d], "pred": str(pred), "want": str(want)}
                )
    return report_from_counterexamples("schur-T-fit", {"k": k}, counterexamples, start)


def _t_monomials(k: int) -> list[tuple[int, ...]]:
    """Exponent tuples over T_1..T_k with total degree <= k."""
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], remaining: int):
        if len(prefix) == k:
            out.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e)

    rec([], k)
    return out


def _eval_monomial(tvals: list[Fraction], exps: tuple[int, ...]) -> Fraction:
    out = Fraction(1)
    for v, e in zip(tvals, exps):
        if e:
            out *= v ** e
    return out
