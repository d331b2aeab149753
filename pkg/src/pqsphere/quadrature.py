"""Quadrature ground truth for the spherical functions.

Every series result in :mod:`pqsphere.spherical` is checkable against direct
numerical integration of the underlying kernel integrals:

* axes of dimension >= 3 use Gauss-Jacobi rules with weight
  (1-x^2)^{(dim-3)/2} (the endpoint singularity at dim = 2 would be absorbed
  exactly too, but 2-dimensional axes use the periodic trapezoid rule, which
  is spectrally accurate for these smooth periodic integrands);
* dimension 1 degenerates to the two-point set {-1, +1} with equal weight.

Zonal integrals are normalized so the total measure has mass one, which makes
Z(alpha=0) = 1 exact by construction (the printed closed-form prefactor for
the q = 2 case is off by a factor 2 against this normalization; see
DISCREPANCIES.md).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import eval_gegenbauer, roots_jacobi, roots_legendre

from .errors import AccuracyError
from .spherical import GroupSignature, norm_constant_integral

_REFINE_START = 24
_REFINE_MAX = 3072


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    kind: str
    params: tuple = ()


def make_rule(kind: str, n: int, alpha_w: float | None = None,
              beta_w: float | None = None) -> QuadratureRule:
    """Construct a quadrature rule.

    ``gauss_legendre`` and ``gauss_jacobi`` live on [-1, 1] (the latter with
    weight (1-x)^alpha_w (1+x)^beta_w); ``periodic_trapezoid`` covers [0, 2pi)
    with equal weights 2pi/n.
    """
    if n < 2:
        raise ValueError("rules need n >= 2 nodes")
    if kind == "gauss_legendre":
        x, w = roots_legendre(n)
        return QuadratureRule(x, w, kind)
    if kind == "gauss_jacobi":
        if alpha_w is None or beta_w is None:
            raise ValueError("gauss_jacobi needs alpha_w and beta_w")
        if alpha_w <= -1 or beta_w <= -1:
            raise ValueError("jacobi weight exponents must exceed -1")
        x, w = roots_jacobi(n, alpha_w, beta_w)
        return QuadratureRule(x, w, kind, (alpha_w, beta_w))
    if kind == "periodic_trapezoid":
        ang = 2.0 * math.pi * np.arange(n) / n
        return QuadratureRule(ang, np.full(n, 2.0 * math.pi / n), kind)
    raise ValueError(f"unknown rule kind {kind!r}")


def _axis(dim: int, n: int):
    """Nodes, mass-one weights and (for dim = 2) the angles of one axis."""
    if dim == 1:
        return np.array([1.0, -1.0]), np.array([0.5, 0.5]), None
    if dim == 2:
        rule = make_rule("periodic_trapezoid", n)
        return np.cos(rule.nodes), np.full(n, 1.0 / n), rule.nodes
    a = (dim - 3) / 2.0
    rule = make_rule("gauss_jacobi", n, a, a)
    return rule.nodes, rule.weights / rule.weights.sum(), None


def axis_mass(dim: int) -> float:
    """Total mass of the raw axis measure (2pi for angles, the beta integral
    of (1-x^2)^{(dim-3)/2} otherwise, 1 for the two-point set)."""
    if dim == 1:
        return 1.0
    if dim == 2:
        return 2.0 * math.pi
    return math.sqrt(math.pi) * math.gamma((dim - 1) / 2.0) / math.gamma(dim / 2.0)


def _kernel_power_grid(alpha: float, x: np.ndarray, y: np.ndarray, sigma: complex) -> np.ndarray:
    sh, ch = math.sinh(alpha), math.cosh(alpha)
    lam = 1.0 + (x[:, None] ** 2 + y[None, :] ** 2) * sh * sh - 2.0 * np.outer(x, y) * sh * ch
    return np.exp(0.5 * complex(sigma) * np.log(lam))


def _zonal_once(sig: GroupSignature, sigma: complex, alpha: float, n: int) -> complex:
    x, wx, _ = _axis(sig.p, n)
    y, wy, _ = _axis(sig.q, n)
    return complex(wx @ _kernel_power_grid(alpha, x, y, sigma) @ wy)


def _refine(evaluate, tol: float, what: str) -> complex:
    n = _REFINE_START
    prev = evaluate(n)
    while n <= _REFINE_MAX:
        n *= 2
        cur = evaluate(n)
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise AccuracyError(f"{what} did not stabilize to {tol} by n = {_REFINE_MAX}")


def zonal_oracle(sig: GroupSignature, sigma: complex, alpha: float,
                 n: int | None = None, tol: float = 1e-10) -> complex:
    """Normalized kernel integral: the zonal function, independently of any
    series.  With ``n`` given, evaluates one fixed rule size; otherwise the
    rule is doubled until two successive values agree to ``tol``.
    """
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    sigma = complex(sigma)
    if n is not None:
        return _zonal_once(sig, sigma, alpha, n)
    return _refine(lambda k: _zonal_once(sig, sigma, alpha, k), tol,
                   f"zonal oracle {(sig.p, sig.q)}")


def _axis_basis(dim: int, order: int, x: np.ndarray, ang) -> np.ndarray:
    if dim == 2:
        # cosine suffices: the kernel is even in each angle, so the odd part
        # of e^{-i order ang} integrates to zero
        return np.cos(order * ang)
    return eval_gegenbauer(order, (dim - 2) / 2.0, x)


def _assoc_once(sig: GroupSignature, sigma: complex, lam: int, mu: int,
                alpha: float, n: int) -> complex:
    x, wx, angx = _axis(sig.p, n)
    y, wy, angy = _axis(sig.q, n)
    bx = _axis_basis(sig.p, mu, x, angx)
    by = _axis_basis(sig.q, lam, y, angy)
    grid = _kernel_power_grid(alpha, x, y, sigma)
    raw = (wx * bx) @ grid @ (wy * by) * axis_mass(sig.p) * axis_mass(sig.q)
    return complex(norm_constant_integral(sig, lam, mu) * raw)


def assoc_oracle(sig: GroupSignature, sigma: complex, lam: int, mu: int, alpha: float,
                 n: int | None = None, tol: float = 1e-10) -> complex:
    """Associated-function integral with its normalization prefactor.

    ``mu`` is the order on the p-dimensional (x) axis, ``lam`` on the
    q-dimensional (y) axis; ``lam + mu`` must be even.
    """
    if sig.q < 2:
        raise ValueError("associated functions need q >= 2")
    if lam < 0 or mu < 0:
        raise ValueError("orders must be >= 0")
    if (lam + mu) % 2:
        raise ValueError(f"parity violation: lam + mu = {lam + mu} is odd")
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    sigma = complex(sigma)
    if n is not None:
        return _assoc_once(sig, sigma, lam, mu, alpha, n)
    return _refine(lambda k: _assoc_once(sig, sigma, lam, mu, alpha, k), tol,
                   f"associated oracle {(sig.p, sig.q, lam, mu)}")


def _expansion_prefactor(sig: GroupSignature) -> float | None:
    """Constant in front of the kernel-power expansion over the basis;
    None marks the p = q = 2 case, whose coefficients are the plain Fourier
    ones (no extra constant)."""
    p, q = sig.p, sig.q
    if p >= 3 and q >= 3:
        return (math.pi * math.gamma((p - 1) / 2.0) * math.gamma((q - 1) / 2.0)
                / (math.gamma(p / 2.0) * math.gamma(q / 2.0)))
    if p >= 3 and q == 2:
        return 2.0 * math.pi ** 1.5 * math.gamma((p - 1) / 2.0) / math.gamma(p / 2.0)
    if p == 2 and q >= 3:
        return 2.0 * math.pi ** 1.5 * math.gamma((q - 1) / 2.0) / math.gamma(q / 2.0)
    return None


def expansion_residual(sig: GroupSignature, sigma: complex, alpha: float,
                       cutoff: int, n: int = 96) -> float:
    """Weighted L2 distance (mass-one measure) between the kernel power and
    its basis expansion truncated to lam + mu <= cutoff (even orders only).

    Expansion coefficients are taken from :func:`assoc_oracle`, so this is a
    self-contained completeness check of the integral representations.
    """
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    if sig.q < 2:
        raise ValueError("expansions need q >= 2")
    sigma = complex(sigma)
    x, wx, angx = _axis(sig.p, n)
    y, wy, angy = _axis(sig.q, n)
    target = _kernel_power_grid(alpha, x, y, sigma)
    pref = _expansion_prefactor(sig)
    partial = np.zeros_like(target)
    for lam in range(cutoff + 1):
        for mu in range(cutoff + 1 - lam):
            if (lam + mu) % 2:
                continue
            coeff = assoc_oracle(sig, sigma, lam, mu, alpha, tol=1e-11)
            if pref is not None:
                coeff *= pref * norm_constant_integral(sig, lam, mu)
            mult = 1.0
            if sig.p == 2 and mu > 0:
                mult *= 2.0
            if sig.q == 2 and lam > 0:
                mult *= 2.0
            bx = _axis_basis(sig.p, mu, x, angx)
            by = _axis_basis(sig.q, lam, y, angy)
            partial += coeff * mult * np.outer(bx, by)
    sq = np.abs(target - partial) ** 2
    return math.sqrt(float((wx @ sq @ wy).real))
