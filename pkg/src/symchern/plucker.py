"""Shifted-binomial machinery for Plücker coefficients of root strata.

A Plücker polynomial P(d) counts lines with prescribed tangency multiplicities
lambda (all parts >= 2) to a general degree-d hypersurface.  Shifting to the
enumerative threshold x = d - |lambda| and transforming to the binomial basis
exposes positivity and log-concavity that the unshifted basis lacks.  The
polynomials themselves enter as explicit inputs: the recursive construction of
the underlying equivariant classes is out of scope, so this module carries the
known closed forms and worked vectors, plus the checkers.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .exact import is_log_concave, is_nonnegative, multiplicities
from .poly import BinomialSeries, UPoly, discriminant, from_binomial_basis, to_binomial_basis
from .report import VerificationReport, report_from_counterexamples


@dataclass
class PluckerDatum:
    label: str
    lam: tuple[int, ...]
    schur_index: int       # i in the Schur expansion, ceil(M/2) <= i <= M
    pl_index: int          # tangency-count convention, equal to 2i - M
    N: int                 # |lambda|
    M: int                 # |lambda| - len(lambda)
    poly_d: UPoly          # P(d)
    shifted: UPoly         # Q(x) = P(N + x)
    binom: BinomialSeries  # shifted-binomial coefficients C_r


def _validate_lambda(lam) -> tuple[int, ...]:
    lam = tuple(sorted(lam, reverse=True))
    if not lam or any(part < 2 for part in lam):
        raise ValueError(f"parts of the tangency partition must all be >= 2: {lam}")
    return lam


def shifted_datum(lam, index: int, poly_d: UPoly, convention: str = "schur", label: str = "") -> PluckerDatum:
    """Shift P(d) to the threshold d = N + x and take the binomial transform.

    The index may be given in either convention; they are related by
    pl_index = 2 * schur_index - M.
    """
    lam = _validate_lambda(lam)
    N = sum(lam)
    M = N - len(lam)
    if convention == "schur":
        i = index
    elif convention == "pl":
        if (index + M) % 2:
            raise ValueError(f"Plücker index {index} has the wrong parity for M={M}")
        i = (index + M) // 2
    else:
        raise ValueError(f"unknown index convention {convention!r}")
    if not ((M + 1) // 2 <= i <= M):
        raise ValueError(f"index i={i} outside the admissible range for M={M}")
    shifted = poly_d.shift(N)
    return PluckerDatum(
        label=label or f"lam={lam} i={i}",
        lam=lam,
        schur_index=i,
        pl_index=2 * i - M,
        N=N,
        M=M,
        poly_d=poly_d,
        shifted=shifted,
        binom=to_binomial_basis(shifted),
    )


def top_datum(lam) -> PluckerDatum:
    """The top coefficient: P(d) = d(d-1)...(d-N+1) / prod e_q!.

    Its shifted row is (N!/prod e_q!) * (C(N,0), ..., C(N,N)), a positive
    multiple of a binomial row, hence log-concave.
    """
    lam = _validate_lambda(lam)
    N = sum(lam)
    scale = Fraction(1)
    for m in multiplicities(lam).values():
        scale /= factorial(m)
    poly = UPoly((scale,))
    for t in range(N):
        poly = poly * UPoly((-t, 1))
    datum = shifted_datum(lam, sum(lam) - len(lam), poly, label=f"top lam={lam}")
    expected = [scale * factorial(N) * comb(N, r) for r in range(N + 1)]
    if datum.binom != BinomialSeries(expected):
        raise AssertionError("top-coefficient closed form disagrees with the transform")
    return datum


# --- the worked vectors -------------------------------------------------------

# factors of the lam=(3,3) example: Q(x) = (x+1)(x+2)(x+6)/2 * cubic, and the
# generating polynomial of its binomial row is 18 (z+1)^2 * quartic
CUBIC_33 = UPoly((402, 188, 27, 1))
QUARTIC_33 = UPoly((134, 319, 304, 130, 20))


def _poly_from_roots(scale, roots) -> UPoly:
    out = UPoly((Fraction(scale),))
    for r in roots:
        out = out * UPoly((-r, 1))
    return out


def builtin_vectors() -> list[PluckerDatum]:
    """The four worked shifted-binomial vectors, consistency-checked."""
    data = []

    bitangent = shifted_datum(
        (2, 2), 0, _poly_from_roots(Fraction(1, 2), (0, 2, 3, -3)),
        convention="pl", label="bitangent lam=(2,2)",
    )
    _expect(bitangent, [28, 92, 112, 60, 12])
    data.append(bitangent)

    top22 = top_datum((2, 2))
    _expect(top22, [12, 48, 72, 48, 12])
    data.append(top22)

    triple = shifted_datum(
        (2, 2, 2), 1,
        _poly_from_roots(Fraction(1, 3), (0, 5, 4, 3)) * UPoly((-2, 3, 1)),
        convention="pl", label="lam=(2,2,2) pl-index 1",
    )
    _expect(triple, [624, 3184, 6768, 7680, 4912, 1680, 240])
    data.append(triple)

    q33 = _poly_from_roots(Fraction(1, 2), (-1, -2, -6)) * CUBIC_33
    s31 = shifted_datum((3, 3), 3, q33.shift(-6), convention="schur", label="lam=(3,3) s_(3,1)")
    _expect(s31, [2412, 10566, 19368, 19026, 10512, 3060, 360])
    data.append(s31)

    return data


def _expect(datum: PluckerDatum, row: list[int]) -> None:
    if datum.binom != BinomialSeries(row):
        raise AssertionError(f"builtin vector {datum.label} disagrees with its expected row")
    if datum.shifted(0) != datum.binom.coeffs[0]:
        raise AssertionError(f"builtin vector {datum.label}: Q(0) != C_0")


def flex_example() -> tuple[UPoly, BinomialSeries, PluckerDatum]:
    """The flex count 3d(d-2): negative in the unshifted basis, positive shifted."""
    poly = UPoly((0, -6, 3))
    unshifted = to_binomial_basis(poly)
    datum = shifted_datum((3,), 0, poly, convention="pl", label="flex lam=(3)")
    return poly, unshifted, datum


# --- checkers -------------------------------------------------------------------

def check_shifted_conjectures(datum: PluckerDatum, value_window: int | None = None) -> VerificationReport:
    """Nonnegativity and log-concavity of C, and of the value sequence Q(0..D)."""
    start = time.perf_counter()
    coeffs = list(datum.binom.coeffs)
    if value_window is None:
        value_window = 2 * max(datum.shifted.degree, 1) + 8
    values = [datum.shifted(x) for x in range(value_window + 1)]
    while values and values[0] == 0:
        values.pop(0)
    checks = {
        "coefficients_nonnegative": is_nonnegative(coeffs),
        "coefficients_log_concave": is_log_concave(coeffs),
        "values_log_concave": is_log_concave(values),
    }
    counterexamples = [
        {"datum": datum.label, "check": name} for name, ok in checks.items() if not ok
    ]
    rows = [{"datum": datum.label, "check": name, "ok": ok} for name, ok in checks.items()]
    return report_from_counterexamples(
        "plucker-shifted", {"datum": datum.label}, counterexamples, start, rows
    )


def csm_shifted_check(lam, f: int, c: int, signed_coeff: UPoly) -> VerificationReport:
    """Shift a signed stable-class coefficient by y = d - |lambda| - 2(f - c)
    and test shifted-binomial nonnegativity and log-concavity."""
    start = time.perf_counter()
    lam = _validate_lambda(lam)
    if f < c:
        raise ValueError("homogeneous degree must be at least the codimension")
    offset = sum(lam) + 2 * (f - c)
    shifted = signed_coeff.shift(offset)
    gamma = to_binomial_basis(shifted)
    checks = {
        "gamma_nonnegative": is_nonnegative(gamma.coeffs),
        "gamma_log_concave": is_log_concave(gamma.coeffs),
    }
    counterexamples = [
        {"lam": list(lam), "f": f, "c": c, "check": name, "gamma": [str(g) for g in gamma.coeffs]}
        for name, ok in checks.items()
        if not ok
    ]
    rows = [{"check": name, "ok": ok} for name, ok in checks.items()]
    return report_from_counterexamples(
        "csm-shifted", {"lam": list(lam), "f": f, "c": c}, counterexamples, start, rows
    )


def check_builtin_suite() -> VerificationReport:
    """All worked vectors pass both checkers; discriminants and the flex
    contrast reproduce."""
    start = time.perf_counter()
    counterexamples = []
    rows = []
    for datum in builtin_vectors():
        rep = check_shifted_conjectures(datum)
        rows.extend(rep.rows)
        counterexamples.extend(rep.counterexamples)

    if discriminant(CUBIC_33) != -96548:
        counterexamples.append({"check": "cubic discriminant", "got": str(discriminant(CUBIC_33))})
    if discriminant(QUARTIC_33) != -975021840:
        counterexamples.append({"check": "quartic discriminant", "got": str(discriminant(QUARTIC_33))})

    s31 = next(d for d in builtin_vectors() if d.lam == (3, 3))
    gen = UPoly(s31.binom.coeffs)
    if gen != UPoly((18,)) * UPoly((1, 1)) ** 2 * QUARTIC_33:
        counterexamples.append({"check": "row generating polynomial factorization"})

    _, unshifted, flex = flex_example()
    if list(unshifted.coeffs) != [0, -3, 6]:
        counterexamples.append({"check": "flex unshifted row", "got": [str(c) for c in unshifted.coeffs]})
    if flex.binom != BinomialSeries((9, 15, 6)):
        counterexamples.append({"check": "flex shifted row", "got": [str(c) for c in flex.binom.coeffs]})
    flex_rep = check_shifted_conjectures(flex)
    counterexamples.extend(flex_rep.counterexamples)
    rows.extend(flex_rep.rows)
    return report_from_counterexamples("plucker-vectors", {}, counterexamples, start, rows)
