"""Zonal and associated spherical functions of SO0(p,q).

Conventions used throughout (matching the quadrature oracle in
:mod:`pqsphere.quadrature`):

* the x axis carries the p-dimensional sphere data (Gegenbauer order ``mu``),
  the y axis the q-dimensional one (order ``lam``);
* ``sigma`` is the complex homogeneity degree; the unitary principal series
  sits on Re sigma = -(p+q-2)/2;
* ``alpha >= 0`` is the boost parameter.  The kernel is even under
  (alpha, x) -> (-alpha, -x), so negative boosts carry no new information.

The zonal series is the shell sum

    Z(alpha) = (1/cosh alpha) * sum_l (1/2)_l / l!
               * F2(-sigma/2, -l, -l; p/2, q/2; 1, 1) * tanh(alpha)^{2l},

which satisfies Z(0) = 1 and Z|_{sigma=0} = 1 exactly and reproduces the
independent quadrature oracle; some published transcriptions of this series
differ (wrong tanh power, stray 1/cosh at sigma = 0) and are documented with
evidence in DISCREPANCIES.md.  The associated series generalizes the shell
sum with terminating F2(...; 1, 1) inner sums; its closed-form prefactor was
re-derived here (per-axis moment constants) because the commonly transcribed
constant fails against the oracle for every index beyond the zonal one.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConvergenceError
from .horn import HornSeriesSpec, evaluate_horn, make_spec
from .special import SeriesValue, appell_f2_unit, gauss_2f1, ln_gamma, pochhammer

MAX_SHELLS = 500


@dataclass(frozen=True)
class GroupSignature:
    """The pair (p, q) selecting the group SO0(p, q)."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 2 or self.q < 1:
            raise ValueError("signature requires p >= 2 and q >= 1")

    @property
    def swapped(self) -> "GroupSignature":
        if self.q < 2:
            raise ValueError("swapped signature would violate p >= 2")
        return GroupSignature(self.q, self.p)


def principal_sigma(sig: GroupSignature, t: float = 0.0) -> complex:
    """Homogeneity degree -(p+q-2)/2 + i t of the unitary principal series."""
    return complex(-(sig.p + sig.q - 2) / 2.0, t)


@dataclass(frozen=True)
class RepLabel:
    """Representation label (sigma, epsilon); zonal machinery needs epsilon = 0."""

    sigma: complex
    epsilon: int = 0

    def __post_init__(self):
        if self.epsilon not in (0, 1):
            raise ValueError("epsilon must be 0 or 1")

    @classmethod
    def principal(cls, sig: GroupSignature, t: float = 0.0, epsilon: int = 0) -> "RepLabel":
        return cls(principal_sigma(sig, t), epsilon)

    @classmethod
    def general(cls, sigma: complex, epsilon: int = 0) -> "RepLabel":
        return cls(complex(sigma), epsilon)


@dataclass(frozen=True)
class AssocIndex:
    """Index (nu, r, s) of an associated function; nu is the common parity."""

    nu: int
    r: int
    s: int

    def __post_init__(self):
        if self.nu not in (0, 1):
            raise ValueError("nu must be 0 or 1")
        if self.r < 0 or self.s < 0:
            raise ValueError("r and s must be >= 0")

    @property
    def lam(self) -> int:
        """Order on the q-dimensional (y) axis."""
        return self.nu + 2 * self.r

    @property
    def mu(self) -> int:
        """Order on the p-dimensional (x) axis."""
        return self.nu + 2 * self.s


def index_map(lam: int, mu: int) -> AssocIndex:
    """Invert (lam, mu) -> (nu, r, s); lam + mu must be even."""
    if lam < 0 or mu < 0:
        raise ValueError("orders must be >= 0")
    if (lam + mu) % 2:
        raise ValueError(f"parity violation: lam + mu = {lam + mu} is odd")
    nu = lam % 2
    return AssocIndex(nu, (lam - nu) // 2, (mu - nu) // 2)


# --- kernel ------------------------------------------------------------------

def lambda_kernel(alpha: float, x, y):
    """Positive kernel 1 + (x^2+y^2) sinh^2(a) - 2xy sinh(a) cosh(a).

    Accepts scalars or numpy arrays for x, y (broadcasting applies).
    """
    sh, ch = np.sinh(alpha), np.cosh(alpha)
    if np.any(np.abs(x) > 1.0 + 1e-12) or np.any(np.abs(y) > 1.0 + 1e-12):
        raise ValueError("kernel arguments must lie in [-1, 1]")
    out = 1.0 + (np.square(x) + np.square(y)) * sh * sh - 2.0 * np.multiply(x, y) * sh * ch
    if np.any(out <= 0.0):
        raise ArithmeticError("kernel lost positivity (should be impossible on the domain)")
    return out


def lambda_kernel_angles(alpha: float, phi, chi):
    """Same kernel in angular form, (cos(phi) cosh(a) - cos(chi) sinh(a))^2 + sin^2(phi)."""
    sh, ch = np.sinh(alpha), np.cosh(alpha)
    return np.square(np.cos(phi) * ch - np.cos(chi) * sh) + np.square(np.sin(phi))


def lambda_power(alpha: float, x, y, sigma: complex):
    """Kernel raised to sigma/2 through the real positive logarithm."""
    return np.exp(0.5 * complex(sigma) * np.log(lambda_kernel(alpha, x, y)))


# --- zonal functions ----------------------------------------------------------

def _require_alpha(alpha: float) -> float:
    if not math.isfinite(alpha) or alpha < 0:
        raise ValueError("alpha must be finite and >= 0 (the kernel is even under "
                         "the joint reflection alpha -> -alpha, x -> -x)")
    return float(alpha)


def _require_sigma(sigma: complex) -> complex:
    sigma = complex(sigma)
    if not (math.isfinite(sigma.real) and math.isfinite(sigma.imag)):
        raise ValueError("sigma must have finite components")
    return sigma


def _shell_sum(coeffs, tol: float, max_shells: int, what: str) -> SeriesValue:
    """Sum coeffs(l) for l = 0.. with the shared three-small-terms stop rule."""
    total = 0.0 + 0.0j
    mags: list[float] = []
    for l in range(max_shells):
        term = coeffs(l)
        total += term
        mags.append(abs(term))
        if len(mags) >= 3 and all(m <= tol * max(abs(total), 1e-300) for m in mags[-3:]):
            tail = max(mags[-3:]) / max(abs(total), 1e-300)
            return SeriesValue(total, tail, l + 1, True)
    raise ConvergenceError(f"{what} did not settle within {max_shells} shells")


def _zonal_lsum(b1: float, b2: float, sigma: complex, alpha: float, tol: float,
                max_shells: int) -> SeriesValue:
    t2 = math.tanh(alpha) ** 2
    inv_cosh = 1.0 / math.cosh(alpha)
    state = {"c": 1.0}

    def coeffs(l: int) -> complex:
        if l:
            state["c"] *= (l - 0.5) / l * t2
        return state["c"] * appell_f2_unit(-sigma / 2, l, l, b1, b2)

    sv = _shell_sum(coeffs, tol, max_shells, "zonal series")
    return SeriesValue(sv.value * inv_cosh, sv.tail_estimate, sv.terms_used, sv.converged)


def zonal_series(sig: GroupSignature, sigma: complex, alpha: float,
                 tol: float = 1e-12, max_shells: int = MAX_SHELLS) -> SeriesValue:
    """Zonal spherical function Z_sigma^{[p,q]}(alpha) by the shell sum.

    Valid for every signature p >= 2, q >= 1 and all alpha >= 0 (the shells
    decay like tanh(alpha)^{2l}).
    """
    alpha = _require_alpha(alpha)
    return _zonal_lsum(sig.p / 2.0, sig.q / 2.0, _require_sigma(sigma), alpha, tol, max_shells)


def zonal_q1(p: int, sigma: complex, alpha: float, tol: float = 1e-14) -> complex:
    """Closed form for q = 1: 2F1(-s/2, (1-s)/2; p/2; tanh^2 a) cosh(a)^s."""
    if p < 2:
        raise ValueError("p must be >= 2")
    alpha = _require_alpha(alpha)
    sigma = _require_sigma(sigma)
    t2 = math.tanh(alpha) ** 2
    f = gauss_2f1(-sigma / 2, (1 - sigma) / 2, p / 2.0, t2, tol=tol)
    return f.value * cmath.exp(sigma * math.log(math.cosh(alpha)))


def zonal_horn_spec(sig: GroupSignature, sigma: complex) -> HornSeriesSpec:
    """Two-variable closed-form spec of the zonal function (both arguments
    are tanh^2 alpha; multiply the evaluation by 1/cosh alpha).

    Building this spec at the swapped signature gives the companion form whose
    equality expresses the p <-> q symmetry.
    """
    p, q = sig.p, sig.q
    sigma = complex(sigma)
    return make_spec(
        [(-sigma / 2, (1, 0)),
         (1 - (sigma + q) / 2, (1, 0)),
         ((sigma + q) / 2, (0, 1)),
         (0.5, (1, 1))],
        [(q / 2.0, (1, 1)),
         (p / 2.0, (1, 0))],
        2,
    )


def zonal_horn_spec_symmetric(sig: GroupSignature, sigma: complex) -> HornSeriesSpec:
    """Manifestly p <-> q symmetric five-parameter companion spec."""
    p, q = sig.p, sig.q
    sigma = complex(sigma)
    return make_spec(
        [(1.0, (1, 1)),
         (0.5, (1, 1)),
         (-sigma / 2, (1, 0)),
         ((q + sigma) / 2, (0, 1)),
         ((p + sigma) / 2, (0, 1))],
        [(p / 2.0, (1, 1)),
         (q / 2.0, (1, 1)),
         (1.0, (0, 1))],
        2,
    )


def zonal_horn(sig: GroupSignature, sigma: complex, alpha: float, tol: float = 1e-12,
               max_terms: int = 10**6, symmetric: bool = False) -> SeriesValue:
    """Zonal function evaluated through the generic Horn engine."""
    alpha = _require_alpha(alpha)
    spec = (zonal_horn_spec_symmetric if symmetric else zonal_horn_spec)(sig, sigma)
    t2 = math.tanh(alpha) ** 2
    sv = evaluate_horn(spec, (t2, t2), tol=tol, max_terms=max_terms)
    return SeriesValue(sv.value / math.cosh(alpha), sv.tail_estimate,
                       sv.terms_used, sv.converged)


class SpecialGroup(Enum):
    SO41 = "so41"
    SO32 = "so32"
    SO42 = "so42"


def zonal_special(group: SpecialGroup, sigma: complex, alpha: float,
                  tol: float = 1e-12) -> SeriesValue:
    """Zonal functions of the de Sitter and conformal groups.

    SO(4,1) uses the q = 1 Gauss closed form; SO(3,2) and SO(4,2) use their
    explicit shell sums (lower parameters (3/2, 1) and (2, 1)).
    """
    group = SpecialGroup(group)
    alpha = _require_alpha(alpha)
    sigma = _require_sigma(sigma)
    if group is SpecialGroup.SO41:
        t2 = math.tanh(alpha) ** 2
        f = gauss_2f1(-sigma / 2, (1 - sigma) / 2, 2.0, t2, tol=tol)
        value = f.value * cmath.exp(sigma * math.log(math.cosh(alpha)))
        return SeriesValue(value, f.tail_estimate, f.terms_used, f.converged)
    if group is SpecialGroup.SO32:
        return _zonal_lsum(1.5, 1.0, sigma, alpha, tol, MAX_SHELLS)
    return _zonal_lsum(2.0, 1.0, sigma, alpha, tol, MAX_SHELLS)


# --- normalization constants ---------------------------------------------------

def _lg(x: float) -> float:
    return ln_gamma(x).real


def norm_constant_a(sig: GroupSignature, lam: int, l: int, mu: int, m: int) -> float:
    """Canonical-basis normalization constant (the boost-relevant rows).

    For q >= 3 this is the constant multiplying
    C_{lam-l}^{l+(q-2)/2}(cos phi) sin^l(phi) C_{mu-m}^{m+(p-2)/2}(cos chi) sin^m(chi);
    for q = 2 the Fourier variant (independent of lam); for p = q = 2 the
    plain Fourier normalization 1/(2 pi).  Orthonormality of the resulting
    functions under the invariant angular measure is covered by the tests.
    """
    p, q = sig.p, sig.q
    if not (lam >= l >= 0 and mu >= m >= 0):
        raise ValueError("need lam >= l >= 0 and mu >= m >= 0")
    if q >= 3:
        if p < 3:
            raise ValueError("this variant needs p >= 3; swap the signature instead")
        log = (_lg(l + (q - 2) / 2.0) + _lg(m + (p - 2) / 2.0)
               - math.log(math.pi) - (4 - l - m - (p + q) / 2.0) * math.log(2.0))
        log += 0.5 * (_lg(lam - l + 1) + _lg(mu - m + 1)
                      + math.log(2 * lam + q - 2) + math.log(2 * mu + p - 2)
                      - _lg(lam + l + q - 2) - _lg(mu + m + p - 2))
        return math.exp(log)
    if q == 2 and p >= 3:
        log = (_lg(m + (p - 2) / 2.0) - math.log(math.pi)
               + 0.5 * ((p + 2 * m - 5) * math.log(2.0) + _lg(mu - m + 1)
                        + math.log(2 * mu + p - 2) - _lg(mu + m + p - 2)))
        return math.exp(log)
    if p == q == 2:
        if l or m:
            raise ValueError("inner indices do not exist for p = q = 2")
        return 1.0 / (2.0 * math.pi)
    raise ValueError(f"unsupported signature {(p, q)} for basis constants")


def norm_constant_integral(sig: GroupSignature, lam: int, mu: int) -> float:
    """Prefactor of the associated-function integral representation.

    Regimes: Gegenbauer x Gegenbauer for p, q >= 3; Gegenbauer x Fourier for
    q = 2 (constant independent of lam) and mirrored for p = 2; plain
    1/(4 pi^2) for p = q = 2.  At lam = mu = 0 each variant reduces to the
    reciprocal of its axis measure masses, so the associated function
    coincides with the zonal one there.
    """
    p, q = sig.p, sig.q
    if lam < 0 or mu < 0:
        raise ValueError("orders must be >= 0")
    if p >= 3 and q >= 3:
        log = (_lg((p - 2) / 2.0) + _lg((q - 2) / 2.0)
               + 0.5 * ((p + q - 8) * math.log(2.0) + _lg(p / 2.0) + _lg(q / 2.0)
                        - 3 * math.log(math.pi) - _lg((p - 1) / 2.0) - _lg((q - 1) / 2.0))
               + 0.5 * (_lg(lam + 1) + _lg(mu + 1)
                        + math.log(2 * mu + p - 2) + math.log(2 * lam + q - 2)
                        - _lg(lam + q - 2) - _lg(mu + p - 2)))
        return math.exp(log)
    if p >= 3 and q == 2:
        log = (_lg((p - 2) / 2.0)
               + 0.5 * ((p - 6) * math.log(2.0) + _lg(mu + 1) + math.log(2 * mu + p - 2)
                        + _lg(p / 2.0) - 3.5 * math.log(math.pi)
                        - _lg(mu + p - 2) - _lg((p - 1) / 2.0)))
        return math.exp(log)
    if p == 2 and q >= 3:
        return norm_constant_integral(GroupSignature(q, 2), mu, lam)
    if p == q == 2:
        return 1.0 / (4.0 * math.pi ** 2)
    raise ValueError(f"associated functions need p >= 2 and q >= 2, got {(p, q)}")


def _axis_moment_weight(dim: int, s: int, nu: int) -> float:
    """Per-axis constant produced by integrating x^{2m+nu} against the order
    mu = 2s+nu basis function (Gegenbauer for dim >= 3, Fourier for dim = 2);
    the m-dependence common to both cases is factored into the shell sum."""
    mu = 2 * s + nu
    poch_half = math.exp(_lg(nu + 0.5 + s) - _lg(nu + 0.5))  # (nu+1/2)_s
    if dim == 2:
        return 2.0 * math.pi / (2.0 ** mu * poch_half * math.factorial(s))
    log = (0.5 * math.log(math.pi) + _lg((dim - 1) / 2.0) + _lg(dim - 2 + mu)
           - _lg(dim - 2) - mu * math.log(2.0) - _lg(mu + dim / 2.0))
    return math.exp(log) / (poch_half * math.factorial(s))


def _assoc_constant(sig: GroupSignature, sigma: complex, idx: AssocIndex) -> complex:
    nu, r, s = idx.nu, idx.r, idx.s
    const = (norm_constant_integral(sig, idx.lam, idx.mu)
             * _axis_moment_weight(sig.p, s, nu)
             * _axis_moment_weight(sig.q, r, nu)
             * 2.0 ** nu * (-1.0) ** (s + r))
    return const * pochhammer(-sigma / 2, s + r + nu)


def assoc_series(sig: GroupSignature, sigma: complex, idx: AssocIndex, alpha: float,
                 tol: float = 1e-12, max_shells: int = MAX_SHELLS) -> SeriesValue:
    """Associated spherical function P_{sigma,lam,mu}^{[p,q]}(alpha).

    Shell sum over l >= max(s, r) of

        l! (nu+1/2)_l / ((l-s)! (l-r)!) * tanh(alpha)^{2l+nu}
        * F2(s+r+nu-sigma/2, s-l, r-l; 2s+nu+p/2, 2r+nu+q/2; 1, 1)

    times the oracle-validated constant.  Valid for p, q >= 2 and either
    ordering of (r, s); reduces exactly to :func:`zonal_series` at
    nu = r = s = 0 and vanishes at alpha = 0 for any other index.
    """
    if sig.q < 2:
        raise ValueError("associated functions need q >= 2")
    alpha = _require_alpha(alpha)
    sigma = _require_sigma(sigma)
    nu, r, s = idx.nu, idx.r, idx.s
    const = _assoc_constant(sig, sigma, idx)
    t = math.tanh(alpha)
    inv_cosh = 1.0 / math.cosh(alpha)
    l0 = max(s, r)
    a = s + r + nu - sigma / 2
    b1 = 2 * s + nu + sig.p / 2.0
    b2 = 2 * r + nu + sig.q / 2.0

    def coeffs(j: int) -> complex:
        l = l0 + j
        c = math.exp(_lg(l + 1) + _lg(nu + 0.5 + l) - _lg(nu + 0.5)
                     - _lg(l - s + 1) - _lg(l - r + 1))
        power = t ** (2 * l + nu) if (2 * l + nu) else 1.0
        if power == 0.0:
            return 0.0 + 0.0j
        return c * power * appell_f2_unit(a, l - s, l - r, b1, b2)

    sv = _shell_sum(coeffs, tol, max_shells, "associated series")
    return SeriesValue(const * sv.value * inv_cosh, sv.tail_estimate,
                       sv.terms_used, sv.converged)


def assoc_horn_spec(sig: GroupSignature, sigma: complex, idx: AssocIndex) -> HornSeriesSpec:
    """Two-variable closed-form spec of the associated function, valid for
    s >= r (use the (p,q,r,s) -> (q,p,s,r) symmetry otherwise); both
    arguments are tanh^2 alpha and the prefactor comes from
    :func:`assoc_horn`."""
    if idx.s < idx.r:
        raise ValueError("spec form needs s >= r; evaluate the swapped index instead")
    p, q = sig.p, sig.q
    sigma = complex(sigma)
    nu, r, s = idx.nu, idx.r, idx.s
    return make_spec(
        [(s + 1.0, (1, 1)),
         (s + nu + 0.5, (1, 1)),
         (s + r + nu - sigma / 2, (1, 0)),
         ((q + sigma) / 2, (0, 1)),
         (s - r + (p + sigma) / 2, (0, 1))],
        [(2 * s + nu + p / 2.0, (1, 1)),
         (s + r + nu + q / 2.0, (1, 1)),
         (1.0 + s - r, (0, 1))],
        2,
    )


def assoc_horn(sig: GroupSignature, sigma: complex, idx: AssocIndex, alpha: float,
               tol: float = 1e-12, max_terms: int = 10**6) -> SeriesValue:
    """Associated function through the Horn engine (cross-check route).

    The commonly transcribed prefactor of this closed form misses a factor
    (-1)^{s-r} / (2r+nu+q/2)_{s-r}; the corrected constant used here matches
    the shell sum and the quadrature oracle (see DISCREPANCIES.md).
    """
    if sig.q < 2:
        raise ValueError("associated functions need q >= 2")
    alpha = _require_alpha(alpha)
    sigma = _require_sigma(sigma)
    if idx.s < idx.r:
        return assoc_horn(sig.swapped, sigma, AssocIndex(idx.nu, idx.s, idx.r),
                          alpha, tol, max_terms)
    nu, r, s = idx.nu, idx.r, idx.s
    spec = assoc_horn_spec(sig, sigma, idx)
    t = math.tanh(alpha)
    sv = evaluate_horn(spec, (t * t, t * t), tol=tol, max_terms=max_terms)
    lead = (math.factorial(s) * math.exp(_lg(nu + 0.5 + s) - _lg(nu + 0.5))
            * pochhammer((2 - sigma - sig.q) / 2, s - r) * (-1.0) ** (s - r)
            / (math.factorial(s - r) * pochhammer(2 * r + nu + sig.q / 2.0, s - r)))
    const = _assoc_constant(sig, sigma, idx)
    power = t ** (2 * s + nu) if (2 * s + nu) else 1.0
    value = const * lead * power * sv.value / math.cosh(alpha)
    return SeriesValue(value, sv.tail_estimate, sv.terms_used, sv.converged)
