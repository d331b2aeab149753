"""Derivative transforms of delta distributions concentrated on surfaces.

Two smooth defining systems Q_i(x) = 0 and P_i(x) = 0 of the same
(n-k)-dimensional surface are related by P_i = sum_j Q_j beta_ji with a
pointwise nonsingular matrix beta.  A derivative delta^{(q_1..q_k)}(Q) then
expands over derivatives delta^{(p_1..p_k)}(P) with |p| = |q|; the
coefficient of a target multi-index p is

    det(beta) * sum over k x k packing matrices R
                (row sums q, column sums p)
                prod_i q_i! prod_j beta_ij^{R_ij} / R_ij!

Everything is numeric and pointwise: beta enters as its value (and, for the
determinant-derivative check, its first derivatives) at one point.
Multi-indices are plain tuples of non-negative ints; matrix indices are
0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Mapping, Sequence

import numpy as np

from .errors import BudgetError, SingularMatrixError

MultiIndex = tuple[int, ...]

PACKING_BUDGET = 10**6


@dataclass(frozen=True)
class PackingMatrix:
    """k x k non-negative integer matrix with prescribed row sums."""

    entries: tuple[tuple[int, ...], ...]

    @property
    def row_sums(self) -> MultiIndex:
        return tuple(sum(row) for row in self.entries)

    @property
    def col_sums(self) -> MultiIndex:
        k = len(self.entries)
        return tuple(sum(self.entries[i][j] for i in range(k)) for j in range(k))


@dataclass(frozen=True)
class PointwiseMatrix:
    """Matrix beta evaluated at a point, optionally with first derivatives.

    ``derivs[i, j, m]`` is the derivative of beta_ij along direction m.
    """

    entries: np.ndarray
    derivs: np.ndarray | None = None

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("beta must be square")
        object.__setattr__(self, "entries", arr)
        if self.derivs is not None:
            d = np.asarray(self.derivs, dtype=float)
            if d.ndim != 3 or d.shape[:2] != arr.shape:
                raise ValueError("derivs must have shape (k, k, nvars)")
            object.__setattr__(self, "derivs", d)

    @property
    def k(self) -> int:
        return self.entries.shape[0]

    def det(self) -> float:
        d = float(np.linalg.det(self.entries))
        if not math.isfinite(d) or d == 0.0:
            raise SingularMatrixError("beta must be nonsingular")
        return d


def _check_orders(q_orders: Sequence[int]) -> MultiIndex:
    q = tuple(int(v) for v in q_orders)
    if not q:
        raise ValueError("need at least one order")
    if any(v < 0 for v in q):
        raise ValueError("orders must be non-negative")
    return q


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def packing_count(q_orders: Sequence[int]) -> int:
    """Number of packings with the given row sums (no enumeration)."""
    q = _check_orders(q_orders)
    k = len(q)
    count = 1
    for qi in q:
        count *= math.comb(qi + k - 1, k - 1)
    return count


def enumerate_packings(q_orders: Sequence[int],
                       max_count: int = PACKING_BUDGET) -> list[PackingMatrix]:
    """All k x k non-negative matrices whose i-th row sums to q_i.

    Deterministic (row-wise lexicographic) order; raises
    :class:`BudgetError` when the count would exceed ``max_count``.
    """
    q = _check_orders(q_orders)
    k = len(q)
    total = packing_count(q)
    if total > max_count:
        raise BudgetError(f"{total} packings exceed the budget of {max_count}")
    rows = [list(_compositions(qi, k)) for qi in q]
    return [PackingMatrix(tuple(combo)) for combo in product(*rows)]


def packing_multiplicity(packing: PackingMatrix) -> int:
    """Number of ordered derivative-index assignments collapsing to a packing:
    the product over rows of the multinomial q_i! / prod_j R_ij!."""
    out = 1
    for row in packing.entries:
        out *= math.factorial(sum(row))
        for e in row:
            out //= math.factorial(e)
    return out


def transform_coefficients(beta: PointwiseMatrix,
                           q_orders: Sequence[int]) -> dict[MultiIndex, float]:
    """Expansion of delta^{(q)}(Q) over delta^{(p)}(P), keyed by p.

    Keys are emitted in lexicographic order; every key satisfies |p| = |q|.
    """
    q = _check_orders(q_orders)
    if len(q) != beta.k:
        raise ValueError("order count must match the matrix dimension")
    det = beta.det()
    b = beta.entries
    acc: dict[MultiIndex, float] = {}
    for packing in enumerate_packings(q):
        coeff = det
        for i, row in enumerate(packing.entries):
            coeff *= math.factorial(q[i])
            for j, r in enumerate(row):
                if r:
                    coeff *= float(b[i, j]) ** r / math.factorial(r)
        p = packing.col_sums
        acc[p] = acc.get(p, 0.0) + coeff
    return dict(sorted(acc.items()))


def transform_index_form(beta: PointwiseMatrix,
                         index_list: Sequence[int]) -> dict[MultiIndex, float]:
    """Raw s-fold contraction det(beta) sum_j beta_{i1 j1} ... beta_{is js},
    grouped by the multiset of contracted indices (reported as a count
    vector).  Grouping must reproduce :func:`transform_coefficients` for the
    multi-index counting the i's; the tests rely on that identity.
    """
    det = beta.det()
    k = beta.k
    idx = [int(i) for i in index_list]
    if any(i < 0 or i >= k for i in idx):
        raise ValueError("indices must lie in [0, k)")
    acc: dict[MultiIndex, float] = {}
    for js in product(range(k), repeat=len(idx)):
        coeff = det
        for i, j in zip(idx, js):
            coeff *= float(beta.entries[i, j])
        key = tuple(js.count(j) for j in range(k))
        acc[key] = acc.get(key, 0.0) + coeff
    return dict(sorted(acc.items()))


def jacobi_formula_check(beta: PointwiseMatrix, alpha: np.ndarray,
                         beta_plus: Sequence[np.ndarray],
                         beta_minus: Sequence[np.ndarray], h: float) -> float:
    """Residual of the determinant-derivative identity
    d(det beta)/dx_m = beta_{ij,m} alpha_{ji} det(beta).

    The left side is a central difference of det over the supplied
    beta(x +/- h e_m) samples; the right side contracts the stored derivative
    tensor with the inverse.  Returns the largest residual over directions.
    """
    if beta.derivs is None:
        raise ValueError("beta must carry its derivative tensor")
    alpha = np.asarray(alpha, dtype=float)
    if not np.allclose(alpha @ beta.entries, np.eye(beta.k), atol=1e-10):
        raise ValueError("alpha is not the pointwise inverse of beta")
    nvars = beta.derivs.shape[2]
    if len(beta_plus) != nvars or len(beta_minus) != nvars:
        raise ValueError("need one +/- sample pair per direction")
    det = beta.det()
    worst = 0.0
    for m in range(nvars):
        numeric = (np.linalg.det(np.asarray(beta_plus[m], dtype=float))
                   - np.linalg.det(np.asarray(beta_minus[m], dtype=float))) / (2.0 * h)
        formula = float(np.einsum("ij,ji->", beta.derivs[:, :, m], alpha)) * det
        worst = max(worst, abs(numeric - formula))
    return worst


def compose_transforms(beta1: PointwiseMatrix, beta2: PointwiseMatrix,
                       q_orders: Sequence[int]) -> dict[MultiIndex, float]:
    """Apply the beta2 transform to each output of the beta1 transform.

    Equals ``transform_coefficients(beta1 @ beta2, q_orders)`` (matrix product
    in that order); the k = 1 scaling case fixes the convention and the tests
    check it for k = 2.
    """
    first = transform_coefficients(beta1, q_orders)
    acc: dict[MultiIndex, float] = {}
    for mid, c1 in first.items():
        for out, c2 in transform_coefficients(beta2, mid).items():
            acc[out] = acc.get(out, 0.0) + c1 * c2
    return dict(sorted(acc.items()))
