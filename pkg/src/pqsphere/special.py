"""Scalar special functions: complex log-gamma, Pochhammer symbols, Gegenbauer
polynomials, Gauss 2F1, terminating 3F2(1) and Appell F2 sums.

Everything here is a pure function of its arguments and safe to call from any
number of threads.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import ConvergenceError, PoleError

TERM_BUDGET = 10**6


@dataclass(frozen=True)
class SeriesValue:
    """Numeric result of a truncated series.

    ``tail_estimate`` is relative to ``|value|`` (floored at 1 for near-zero
    sums); ``converged`` is True only when the estimate is at or below the
    tolerance that was requested.
    """

    value: complex
    tail_estimate: float
    terms_used: int
    converged: bool


# Lanczos approximation, g = 7, 9 coefficients.  Relative accuracy on the
# right half-plane is a few ulp; the left half-plane is reached through the
# recurrence loggamma(z) = loggamma(z + 1) - log(z), which preserves the
# principal branch off the negative real axis.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _lanczos_loggamma(z: complex) -> complex:
    # valid for Re z >= 0.5
    zm1 = z - 1.0
    x = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        x += c / (zm1 + i)
    t = zm1 + _LANCZOS_G + 0.5
    return 0.5 * math.log(2.0 * math.pi) + (zm1 + 0.5) * cmath.log(t) - t + cmath.log(x)


def ln_gamma(z: complex) -> complex:
    """Principal branch of log Gamma(z).

    Real positive arguments are delegated to ``math.lgamma``; complex and
    negative-real arguments use a Lanczos evaluation shifted into the right
    half-plane.  Non-positive integers raise :class:`PoleError`.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError("ln_gamma requires a finite argument")
    if z.imag == 0.0:
        x = z.real
        if x <= 0.0 and x == int(x):
            raise PoleError(f"log-gamma pole at non-positive integer {x}")
        if x > 0.0:
            try:
                return complex(math.lgamma(x), 0.0)
            except OverflowError as exc:
                raise OverflowError(f"ln_gamma overflow at {x}") from exc
    m = max(0, math.ceil(0.5 - z.real))
    if m > 10**6:
        raise OverflowError("argument too far into the left half-plane")
    shift = 0.0 + 0.0j
    for j in range(m):
        shift += cmath.log(z + j)
    return _lanczos_loggamma(z + m) - shift


def pochhammer(a: complex, n: int) -> complex:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1.

    Computed as a direct product so that non-positive-integer bases give the
    exact terminating zeros needed by finite hypergeometric sums.
    """
    if n < 0:
        raise ValueError("pochhammer order must be >= 0")
    out = 1.0 + 0.0j
    for k in range(n):
        out *= a + k
        if cmath.isinf(out):
            raise OverflowError(f"pochhammer({a}, {n}) overflows")
    return out


def gegenbauer(n: int, lam: float, x: float) -> float:
    """Gegenbauer polynomial C_n^lam(x) by the three-term recurrence.

    Requires lam > -1/2.  The degenerate weight lam = 0 (which arises formally
    for 2-dimensional axes) is accepted but gives the literal recurrence limit
    C_n^0 = 0 for n >= 1; 2-dimensional axes should use Fourier modes instead.
    """
    if n < 0:
        raise ValueError("degree must be >= 0")
    if lam <= -0.5:
        raise ValueError("gegenbauer requires lam > -1/2")
    if n == 0:
        return 1.0
    cm2, cm1 = 1.0, 2.0 * lam * x
    if n == 1:
        return cm1
    for k in range(2, n + 1):
        cm2, cm1 = cm1, (2.0 * x * (k + lam - 1.0) * cm1 - (k + 2.0 * lam - 2.0) * cm2) / k
    return cm1


def _tail_stop(term_mags: list[float], total: complex, tol: float) -> bool:
    # shared truncation rule: three consecutive terms below tol * |partial sum|
    if len(term_mags) < 3:
        return False
    scale = max(abs(total), 1e-300)
    return all(t <= tol * scale for t in term_mags[-3:])


def gauss_2f1(a: complex, b: complex, c: complex, x: float, tol: float = 1e-14,
              max_terms: int = TERM_BUDGET) -> SeriesValue:
    """Gauss hypergeometric series 2F1(a, b; c; x) for |x| < 1.

    A non-positive-integer ``c`` is only admitted when a numerator parameter
    terminates the series first.
    """
    if abs(x) >= 1.0:
        raise ValueError("gauss_2f1 requires |x| < 1")
    total = 1.0 + 0.0j
    term = 1.0 + 0.0j
    mags: list[float] = []
    for k in range(max_terms):
        den = c + k
        if den == 0:
            raise PoleError(f"2F1 lower parameter hits a pole at k={k}")
        term *= (a + k) * (b + k) / (den * (k + 1)) * x
        total += term
        mags.append(abs(term))
        if _tail_stop(mags, total, tol):
            tail = max(mags[-3:]) / max(abs(total), 1e-300)
            return SeriesValue(total, tail, k + 2, True)
    raise ConvergenceError(f"2F1 did not converge within {max_terms} terms")


def hyp3f2_unit(a1: complex, a2: complex, a3: complex, b1: complex, b2: complex) -> complex:
    """Terminating 3F2(a1, a2, a3; b1, b2; 1).

    At least one upper parameter must be a non-positive integer; the finite
    sum runs to the earliest termination.
    """
    kmax = None
    for a in (a1, a2, a3):
        a = complex(a)
        if a.imag == 0.0 and a.real <= 0.0 and a.real == int(a.real):
            k = int(-a.real)
            kmax = k if kmax is None else min(kmax, k)
    if kmax is None:
        raise ValueError("hyp3f2_unit requires a terminating upper parameter")
    total = 1.0 + 0.0j
    term = 1.0 + 0.0j
    for k in range(kmax):
        den = (b1 + k) * (b2 + k)
        if den == 0:
            raise PoleError(f"3F2 lower parameter vanishes at k={k} before termination")
        term *= (a1 + k) * (a2 + k) * (a3 + k) / (den * (k + 1))
        total += term
    return total


def appell_f2_terminating(a: complex, l1: int, l2: int, b1: complex, b2: complex,
                          x: float, y: float) -> complex:
    """Terminating Appell F2 double sum with upper parameters -l1, -l2.

    Exact finite sum over m <= l1, n <= l2 of
    (a)_{m+n} (-l1)_m (-l2)_n / ((b1)_m (b2)_n m! n!) x^m y^n.
    """
    if l1 < 0 or l2 < 0:
        raise ValueError("termination orders must be >= 0")
    total = 0.0 + 0.0j
    row = 1.0 + 0.0j
    for m in range(l1 + 1):
        if m:
            den = (b1 + m - 1) * m
            if den == 0:
                raise PoleError("F2 first lower parameter vanishes before termination")
            row *= (a + m - 1) * (-l1 + m - 1) / den * x
        term = row
        total += term
        for n in range(1, l2 + 1):
            den = (b2 + n - 1) * n
            if den == 0:
                raise PoleError("F2 second lower parameter vanishes before termination")
            term *= (a + m + n - 1) * (-l2 + n - 1) / den * y
            total += term
    return total


# --- stable unit-argument Appell F2 -----------------------------------------
#
# The spherical-function series need F2(a, -l1, -l2; b1, b2; 1, 1) up to
# l ~ 60, where the direct double sum cancels catastrophically (the terms
# carry binomial factors ~ 2^l while the value stays O(1)).  Summing the
# second index by Chu-Vandermonde gives the single sum
#
#   F2 = [(b2-a)_{l2} / (b2)_{l2}]
#        * sum_m (a)_m (-l1)_m (1+a-b2)_m / ((b1)_m (1+a-b2-l2)_m m!)
#
# whose terms are same-signed for all the parameter families used here, so it
# is evaluated in plain double precision.  The collapsed axis is chosen as the
# longer one (summing over the shorter axis is empirically the stable order),
# vetoed when a denominator factor comes close to zero; when both orientations
# are vetoed, fall back to the row-wise Vandermonde products, which contain no
# ratios at all.


def _f2_unit_collapsed(a: complex, l1: int, l2: int, b1: complex, b2: complex):
    pref = 1.0 + 0.0j
    for i in range(l2):
        pref *= (b2 - a + i) / (b2 + i)
    if pref == 0:
        return None
    c = 1.0 + a - b2
    total = 1.0 + 0.0j
    term = 1.0 + 0.0j
    for m in range(1, l1 + 1):
        den = (b1 + m - 1) * (c - l2 + m - 1) * m
        if den == 0:
            return None
        term *= (a + m - 1) * (-l1 + m - 1) * (c + m - 1) / den
        total += term
    return pref * total


def _f2_unit_risk(a: complex, l1: int, l2: int, b2: complex) -> float:
    # closest approach of the collapsed-sum denominators / prefactor to zero
    if l1 == 0:
        return math.inf
    d = a - b2
    worst = min(abs(d - l2 + i) for i in range(1, l1 + 1))
    if l2 > 0:
        worst = min(worst, min(abs(b2 - a + i) for i in range(l2)))
    return worst


def _f2_unit_rowwise(a: complex, l1: int, l2: int, b1: complex, b2: complex) -> complex:
    den_pref = 1.0 + 0.0j
    for i in range(l2):
        den_pref *= b2 + i
    if den_pref == 0:
        raise PoleError("F2 second lower parameter vanishes before termination")
    total = 0.0 + 0.0j
    cm = 1.0 + 0.0j
    for m in range(l1 + 1):
        if m:
            den = (b1 + m - 1) * m
            if den == 0:
                raise PoleError("F2 first lower parameter vanishes before termination")
            cm *= (a + m - 1) * (-l1 + m - 1) / den
        row = 1.0 + 0.0j
        z = b2 - a - m
        for i in range(l2):
            row *= z + i
        total += cm * row
    return total / den_pref


def appell_f2_unit(a: complex, l1: int, l2: int, b1: complex, b2: complex) -> complex:
    """Terminating Appell F2 at unit arguments, F2(a, -l1, -l2; b1, b2; 1, 1).

    Equals ``appell_f2_terminating(a, l1, l2, b1, b2, 1, 1)`` but stays
    accurate for large termination orders.
    """
    if l1 < 0 or l2 < 0:
        raise ValueError("termination orders must be >= 0")
    candidates = [(l1, l2, b1, b2), (l2, l1, b2, b1)]
    if l2 < l1:
        candidates.reverse()
    for m1, m2, c1, c2 in candidates:
        if _f2_unit_risk(a, m1, m2, c2) > 0.1:
            v = _f2_unit_collapsed(a, m1, m2, c1, c2)
            if v is not None:
                return v
    if l1 <= l2:
        return _f2_unit_rowwise(a, l1, l2, b1, b2)
    return _f2_unit_rowwise(a, l2, l1, b2, b1)
