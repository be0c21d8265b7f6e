"""The rank-two program: Schur coefficients of c_k(2,d) in the binomial basis.

Writing c_k(2,d) = sum_j A_{k,j}(d) s_{(k-j,j)} and A_{k,j}(d) =
sum_r B_{k,j,r} C(d,r), this module computes the rows A/B two independent
ways (elementary symmetric of the specialized weights, and the
rising-factorial / Stirling formula), provides the derangement closed forms
for j = 0, 1, scans the positivity and log-concavity conjectures, verifies
the forward-difference identity behind the j = 2 positivity proof, and runs
the discrete-Abel prefix-sum pipeline that certifies the j = 1 log-concavity
inequality through seventeen explicitly nonnegative polynomials.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    binomial,
    defect_derangements,
    is_log_concave,
    is_nonnegative,
    is_strongly_log_concave,
    stirling1_unsigned,
)
from .poly import BinomialSeries, MPoly, UPoly, from_binomial_basis, interpolate, to_binomial_basis
from .report import VerificationReport, report_from_counterexamples


def chern_poly_u(k: int, d: int, method: str = "stirling") -> UPoly:
    """c_k(2,d) specialized at (u, 1), i.e. e_k(i + (d-i)u : 0 <= i <= d).

    Both routes agree exactly; "roots" multiplies out the specialized
    weights, "stirling" uses the rising-factorial expansion
    sum_s [d+1, d+1-k+s] C(d+1-k+s, s) d^s u^s (1-u)^{k-s}.
    """
    if method == "roots":
        es = [UPoly((1,))] + [UPoly()] * k
        for i in range(d + 1):
            root = UPoly((i, d - i))  # i + (d-i) u
            for j in range(min(k, i + 1), 0, -1):
                es[j] = es[j] + root * es[j - 1]
        return es[k]
    if method != "stirling":
        raise ValueError(f"unknown method {method!r}")
    one_minus_u = UPoly((1, -1))
    total = UPoly()
    for s in range(k + 1):
        s1 = stirling1_unsigned(d + 1, d + 1 - k + s)
        if s1 == 0:
            continue
        c = s1 * binomial(d + 1 - k + s, s) * d ** s
        total = total + (one_minus_u ** (k - s)) * UPoly((0,) * s + (c,))
    return total


def schur_coefficient(k: int, j: int, d: int) -> int:
    """A_{k,j}(d) = [u^j] (1-u) c_k(2,d)(u,1), by the Stirling formula.

    For j <= k//2 this is the Schur coefficient of s_{(k-j,j)}; the extraction
    is well-defined for every j >= 0 (and antisymmetric under j -> k+1-j),
    which the forward-difference identity relies on.
    """
    if j < 0:
        raise ValueError("negative index")
    total = 0
    for s in range(j + 1):
        sign = -1 if (j - s) % 2 else 1
        total += (
            sign
            * binomial(k - s + 1, j - s)
            * d ** s
            * binomial(d + 1 - k + s, s)
            * stirling1_unsigned(d + 1, d + 1 - k + s)
        )
    return total


class DegreeBoundError(RuntimeError):
    """Interpolation validation failed: the sampled degree bound is wrong."""


@dataclass
class SchurRow:
    k: int
    j: int
    poly: UPoly           # A_{k,j} as a polynomial in d
    binom: BinomialSeries  # B_{k,j,r}


def schur_row(k: int, j: int) -> SchurRow:
    """Interpolate A_{k,j} from 2k+2 samples, validating on 2 extra points."""
    npts = 2 * k + 2
    pts = [(d, schur_coefficient(k, j, d)) for d in range(npts)]
    poly = interpolate(pts)
    for d in (npts, npts + 1):
        if poly(d) != schur_coefficient(k, j, d):
            raise DegreeBoundError(f"degree bound failed for row ({k}, {j}) at d={d}")
    binom = to_binomial_basis(poly)
    if k >= 1 and binom.coeffs and binom.coeffs[0] != 0:
        raise AssertionError(f"B_({k},{j},0) must vanish, got {binom.coeffs[0]}")
    return SchurRow(k, j, poly, binom)


def row_ints(k: int, j: int) -> list[int]:
    """The B_{k,j,r} row as plain integers."""
    out = []
    for c in schur_row(k, j).binom.coeffs:
        if c.denominator != 1:
            raise AssertionError(f"non-integer binomial coefficient in row ({k},{j})")
        out.append(int(c))
    return out


# --- closed forms via defect derangements ------------------------------------

def binomial_coeff_j0(k: int, r: int) -> int:
    """B_{k,0,r} = D(r,k) + D(r+1,k)."""
    return defect_derangements(r, k) + defect_derangements(r + 1, k)


def _j1_p_coeffs(k: int, r: int) -> list[tuple[int, int]]:
    """The four (coefficient, window offset) summands of B_{k,1,r}."""
    return [
        (r * (r + 2 - k), 1),
        (r * (3 * r + 2 - 3 * k), 0),
        (3 * r * r - 3 * k * r - 2 * r + k + 1, -1),
        ((r - 1) * (r - k - 1), -2),
    ]


def j1_closed_terms(k: int, r: int) -> list[tuple[int, int]]:
    """(coefficient, derangement value) pairs whose sum is B_{k,1,r}."""
    return [
        (coeff, defect_derangements(r + off, k - 1)) for coeff, off in _j1_p_coeffs(k, r)
    ]


def binomial_coeff_j1(k: int, r: int) -> int:
    """B_{k,1,r} from the four-term defect-derangement expression."""
    return sum(c * d for c, d in j1_closed_terms(k, r))


def derangement_poly(k: int) -> UPoly:
    """Generating polynomial sum_N D(N,k) t^N via t^2 d/dt((1+t) P_{k-1})."""
    if k < 0:
        raise ValueError("negative index")
    p = UPoly((1,))
    for _ in range(k):
        p = (p * UPoly((1, 1))).derivative() * UPoly((0, 0, 1))
    return p


# --- conjecture scans ---------------------------------------------------------

def _scan_pairs(kmax: int, jmax: int) -> list[tuple[int, int]]:
    return [(k, j) for k in range(1, kmax + 1) for j in range(min(jmax, k // 2) + 1)]


def _row_task(pair: tuple[int, int]) -> tuple[tuple[int, int], list[int]]:
    k, j = pair
    return pair, row_ints(k, j)


def _collect_rows(kmax: int, jmax: int, jobs: int) -> dict[tuple[int, int], list[int]]:
    pairs = _scan_pairs(kmax, jmax)
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = dict(pool.map(_row_task, pairs))
    else:
        results = dict(_row_task(p) for p in pairs)
    return {pair: results[pair] for pair in sorted(results)}


def check_positivity(kmax: int, jmax: int, jobs: int = 1) -> VerificationReport:
    """Scan B_{k,j,r} >= 0 over the requested rectangle."""
    start = time.perf_counter()
    counterexamples = []
    rows = []
    for (k, j), b in _collect_rows(kmax, jmax, jobs).items():
        rows.append({"k": k, "j": j, "B": b})
        if not is_nonnegative(b):
            bad = [r for r, x in enumerate(b) if x < 0]
            counterexamples.append({"k": k, "j": j, "negative_at": bad, "B": b})
    return report_from_counterexamples(
        "conjecture-positivity", {"kmax": kmax, "jmax": jmax}, counterexamples, start, rows
    )


def check_log_concavity(kmax: int, jmax: int, jobs: int = 1) -> VerificationReport:
    """Scan rows for contiguous support and B_r^2 >= B_{r-1} B_{r+1}."""
    start = time.perf_counter()
    counterexamples = []
    rows = []
    for (k, j), b in _collect_rows(kmax, jmax, jobs).items():
        rows.append({"k": k, "j": j, "B": b})
        if not is_log_concave(b):
            counterexamples.append({"k": k, "j": j, "B": b})
    return report_from_counterexamples(
        "conjecture-log-concavity", {"kmax": kmax, "jmax": jmax}, counterexamples, start, rows
    )


def check_closed_forms(kmax: int = 12) -> VerificationReport:
    """Interpolated rows equal the derangement closed forms for j = 0, 1."""
    start = time.perf_counter()
    counterexamples = []
    for k in range(1, kmax + 1):
        b0 = row_ints(k, 0)
        b1 = row_ints(k, 1)
        for r in range(2 * k + 2):
            want0 = binomial_coeff_j0(k, r)
            got0 = b0[r] if r < len(b0) else 0
            if got0 != want0:
                counterexamples.append({"k": k, "j": 0, "r": r, "got": got0, "want": want0})
            want1 = binomial_coeff_j1(k, r)
            got1 = b1[r] if r < len(b1) else 0
            if got1 != want1:
                counterexamples.append({"k": k, "j": 1, "r": r, "got": got1, "want": want1})
            # each active summand of the j=1 form is individually nonnegative
            for coeff, dval in j1_closed_terms(k, r):
                if dval != 0 and coeff < 0:
                    counterexamples.append(
                        {"k": k, "r": r, "reason": "negative active summand", "coeff": coeff}
                    )
    return report_from_counterexamples("closed-forms", {"kmax": kmax}, counterexamples, start)


# --- the forward-difference identity ------------------------------------------

def _row_poly(k: int, j: int) -> UPoly:
    if k < 0:
        return UPoly()
    if k == 0:
        return UPoly((1,)) if j == 0 else UPoly()
    return schur_row(k, j).poly


def check_difference_identity(k: int) -> bool:
    """Exact polynomial identity for the forward difference of the j=2 row:

    Delta A_{k,2}(x) = (x-k+2) A_{k-1,1} + C(x-k+3,2) A_{k-2,0}
                     + (x+1) A_{k-1,2} + (x+1)(x-k+3) A_{k-2,1}
                     + (x+1) C(x-k+4,2) A_{k-3,0}.
    """
    if k < 3:
        raise ValueError("identity is stated for k >= 3")
    a_k2 = _row_poly(k, 2)
    lhs = a_k2.shift(1) - a_k2
    x = UPoly((0, 1))
    half = Fraction(1, 2)

    def ch2(shifted: UPoly) -> UPoly:
        return shifted * (shifted - 1) * half

    rhs = (
        (x - (k - 2)) * _row_poly(k - 1, 1)
        + ch2(x - (k - 3)) * _row_poly(k - 2, 0)
        + (x + 1) * _row_poly(k - 1, 2)
        + (x + 1) * (x - (k - 3)) * _row_poly(k - 2, 1)
        + (x + 1) * ch2(x - (k - 4)) * _row_poly(k - 3, 0)
    )
    return lhs == rhs


def check_difference_identity_range(kmin: int = 4, kmax: int = 12) -> VerificationReport:
    start = time.perf_counter()
    counterexamples = []
    for k in range(kmin, kmax + 1):
        if not check_difference_identity(k):
            counterexamples.append({"k": k})
    return report_from_counterexamples(
        "forward-difference-identity", {"kmin": kmin, "kmax": kmax}, counterexamples, start
    )


# --- value log-concavity property ----------------------------------------------

def random_binom_positive_lc(rng: random.Random) -> BinomialSeries:
    """A random binomially positive, log-concave series (possibly shifted)."""
    lead_zeros = rng.randint(0, 4)
    length = rng.randint(1, 7)
    b = [Fraction(rng.randint(1, 12))]
    ratios = sorted(
        (Fraction(rng.randint(1, 24), rng.randint(1, 6)) for _ in range(length - 1)),
        reverse=True,
    )
    for q in ratios:
        b.append(b[-1] * q)
    return BinomialSeries([Fraction(0)] * lead_zeros + b)


def value_log_concavity_trials(trials: int = 1000, seed: int = 20250809) -> VerificationReport:
    """Value sequences of random positive log-concave series stay log-concave."""
    start = time.perf_counter()
    rng = random.Random(seed)
    counterexamples = []
    for t in range(trials):
        series = random_binom_positive_lc(rng)
        top = len(series.coeffs)
        vals = [series.eval_at(d) for d in range(top + 8)]
        while vals and vals[0] == 0:
            vals.pop(0)
        if not is_log_concave(vals):
            counterexamples.append({"trial": t, "coeffs": [str(c) for c in series.coeffs]})
    return report_from_counterexamples(
        "value-log-concavity", {"trials": trials, "seed": seed}, counterexamples, start
    )


def check_derangement_strong_lc(kmax: int = 10) -> VerificationReport:
    """Rows D(., K) are strongly log-concave (padded by a zero on each side)."""
    start = time.perf_counter()
    counterexamples = []
    for K in range(kmax + 1):
        row = [defect_derangements(N, K) for N in range(max(0, K), 2 * K + 2)]
        if not is_strongly_log_concave(row):
            counterexamples.append({"K": K, "row": row})
    return report_from_counterexamples("derangement-strong-lc", {"kmax": kmax}, counterexamples, start)


# --- the prefix-sum pipeline ----------------------------------------------------
#
# B_{k,1,r} = p_1 D_1 + p_0 D_0 + p_{-1} D_{-1} + p_{-2} D_{-2} with
# D_i = D(r+i, k-1).  The quadratic L = B^2 - B_- B_+ (the shifted factors
# rewritten in the same window) groups by trace S = a+b of the products
# D_a D_b; Abel summation over each slice against the center-outward pair
# order turns nonnegativity of L into nonnegativity of prefix sums, which
# become polynomials in the support coordinates X, Y.

PAIR_ORDER: dict[int, list[tuple[int, int]]] = {
    -4: [(-2, -2), (-3, -1)],
    -3: [(-2, -1), (-3, 0)],
    -2: [(-1, -1), (-2, 0), (-3, 1)],
    -1: [(-1, 0), (-2, 1), (-3, 2)],
    0: [(0, 0), (-1, 1), (-2, 2)],
    1: [(0, 1), (-1, 2)],
    2: [(1, 1), (0, 2)],
}

# expected expansions of the seventeen prefix sums W_{S,i}(X, Y)
PREFIX_SUM_TABLE: dict[tuple[int, int], dict[tuple[int, int], int]] = {
    (-4, 0): {(4, 0): 4, (3, 1): 4, (3, 0): 20, (2, 2): 1, (2, 1): 14, (2, 0): 37,
              (1, 2): 2, (1, 1): 16, (1, 0): 30, (0, 2): 1, (0, 1): 6, (0, 0): 9},
    (-4, 1): {(2, 0): 5, (1, 1): 4, (1, 0): 28, (0, 2): 1, (0, 1): 12, (0, 0): 39},
    (-3, 0): {(4, 0): 12, (3, 1): 12, (3, 0): 84, (2, 2): 3, (2, 1): 58, (2, 0): 221,
              (1, 2): 8, (1, 1): 94, (1, 0): 258, (0, 2): 6, (0, 1): 52, (0, 0): 112},
    (-3, 1): {(2, 0): 30, (1, 1): 24, (1, 0): 204, (0, 2): 6, (0, 1): 88, (0, 0): 344},
    (-2, 0): {(4, 0): 24, (3, 1): 24, (3, 0): 94, (2, 2): 6, (2, 1): 61, (2, 0): 140,
              (1, 2): 7, (1, 1): 51, (1, 0): 94, (0, 2): 2, (0, 1): 14, (0, 0): 24},
    (-2, 1): {(4, 0): 12, (3, 1): 12, (3, 0): 110, (2, 2): 3, (2, 1): 77, (2, 0): 401,
              (1, 2): 11, (1, 1): 181, (1, 0): 696, (0, 2): 15, (0, 1): 168, (0, 0): 481},
    (-2, 2): {(2, 0): 75, (1, 1): 60, (1, 0): 598, (0, 2): 15, (0, 1): 258, (0, 0): 1187},
    (-1, 0): {(4, 0): 32, (3, 1): 32, (3, 0): 196, (2, 2): 8, (2, 1): 134, (2, 0): 442,
              (1, 2): 18, (1, 1): 174, (1, 0): 432, (0, 2): 8, (0, 1): 68, (0, 0): 152},
    (-1, 1): {(4, 0): 4, (3, 1): 4, (3, 0): 46, (2, 2): 1, (2, 1): 33, (2, 0): 270,
              (1, 2): 5, (1, 1): 145, (1, 0): 832, (0, 2): 20, (0, 1): 272, (0, 0): 976},
    (-1, 2): {(2, 0): 100, (1, 1): 80, (1, 0): 912, (0, 2): 20, (0, 1): 392, (0, 0): 2080},
    (0, 0): {(4, 0): 24, (3, 1): 24, (3, 0): 78, (2, 2): 6, (2, 1): 53, (2, 0): 94,
             (1, 2): 7, (1, 1): 37, (1, 0): 50, (0, 2): 2, (0, 1): 8, (0, 0): 10},
    (0, 1): {(4, 0): 12, (3, 1): 12, (3, 0): 102, (2, 2): 3, (2, 1): 73, (2, 0): 339,
             (1, 2): 11, (1, 1): 151, (1, 0): 522, (0, 2): 11, (0, 1): 112, (0, 0): 309},
    (0, 2): {(2, 0): 75, (1, 1): 60, (1, 0): 558, (0, 2): 15, (0, 1): 238, (0, 0): 1027},
    (1, 0): {(4, 0): 12, (3, 1): 12, (3, 0): 68, (2, 2): 3, (2, 1): 50, (2, 0): 138,
             (1, 2): 8, (1, 1): 60, (1, 0): 116, (0, 2): 3, (0, 1): 18, (0, 0): 32},
    (1, 1): {(2, 0): 30, (1, 1): 24, (1, 0): 172, (0, 2): 6, (0, 1): 72, (0, 0): 240},
    (2, 0): {(4, 0): 4, (3, 1): 4, (3, 0): 12, (2, 2): 1, (2, 1): 10, (2, 0): 13,
             (1, 2): 2, (1, 1): 8, (1, 0): 6, (0, 2): 1, (0, 1): 2, (0, 0): 1},
    (2, 1): {(2, 0): 5, (1, 1): 4, (1, 0): 20, (0, 2): 1, (0, 1): 8, (0, 0): 19},
}


def _d_name(i: int) -> str:
    return f"D{i}" if i >= 0 else f"Dm{-i}"


def _window_form(k: MPoly, r, shift: int) -> MPoly:
    """B_{k,1,r+shift} written in the common window D_{-3}..D_2.

    The p-coefficients are evaluated at r+shift and the derangement indices
    translate by the same shift.
    """
    rs = r + shift
    ps = {
        1: rs * (rs + 2 - k),
        0: rs * (3 * rs + 2 - 3 * k),
        -1: 3 * rs * rs - 3 * k * rs - 2 * rs + k + 1,
        -2: (rs - 1) * (rs - k - 1),
    }
    out = MPoly.zero(())
    for off, coeff in ps.items():
        out = out + coeff * MPoly.var(_d_name(off + shift))
    return out


def _quad_coefficient(L: MPoly, a: int, b: int) -> MPoly:
    """Coefficient of D_a D_b in a quadratic form over the window variables."""
    if a == b:
        sliced = L.coefficient(_d_name(a), 2)
    else:
        sliced = L.coefficient(_d_name(a), 1).coefficient(_d_name(b), 1)
    for v in sliced.vars:
        if v.startswith("D") and sliced.degree_in(v) > 0:
            sliced = sliced.coefficient(v, 0)
    return sliced


def prefix_sum_certificates() -> tuple[VerificationReport, dict[tuple[int, int], MPoly]]:
    """Derive the seventeen prefix-sum polynomials and certify nonnegativity.

    Builds L = B^2 - B_- B_+ symbolically, groups by trace, forms Abel prefix
    sums, substitutes the support coordinates, compares against the expected
    table verbatim, and checks that every coefficient is nonnegative.
    """
    start = time.perf_counter()
    kv = MPoly.var("k")
    rv = MPoly.var("r")
    B0 = _window_form(kv, rv, 0)
    Bm = _window_form(kv, rv, -1)
    Bp = _window_form(kv, rv, +1)
    L = B0 * B0 - Bm * Bp

    counterexamples = []
    derived: dict[tuple[int, int], MPoly] = {}
    consumed = MPoly.zero(())
    X = MPoly.var("X")
    Y = MPoly.var("Y")
    for S, pairs in PAIR_ORDER.items():
        running = MPoly.zero(())
        for i, (a, b) in enumerate(pairs):
            c = _quad_coefficient(L, a, b)
            consumed = consumed + c * MPoly.var(_d_name(a)) * MPoly.var(_d_name(b))
            running = running + c
            # support coordinates: X = r + a - k >= 0, Y = 2k - 2 - (r + b) >= 0
            ksub = X + Y + (b - a) + 2
            rsub = 2 * X + Y + (b - 2 * a) + 2
            w = running.substitute({"k": ksub, "r": rsub})
            derived[(S, i)] = w
            expected = MPoly(("X", "Y"), {e: Fraction(c2) for e, c2 in PREFIX_SUM_TABLE[(S, i)].items()})
            if not w == expected:
                counterexamples.append({"S": S, "i": i, "derived": repr(w)})
            if any(c2 < 0 for c2 in w.coefficients()):
                counterexamples.append({"S": S, "i": i, "reason": "negative coefficient"})
    if not consumed == L:
        counterexamples.append({"reason": "trace decomposition did not exhaust the quadratic form"})
    if len(derived) != 17:
        counterexamples.append({"reason": f"expected 17 polynomials, derived {len(derived)}"})
    report = report_from_counterexamples(
        "prefix-sums",
        {"slices": len(PAIR_ORDER)},
        counterexamples,
        start,
        rows=[{"S": S, "i": i, "W": repr(w)} for (S, i), w in sorted(derived.items())],
    )
    return report, derived
