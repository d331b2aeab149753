"""Generic evaluator for r-variable hypergeometric series of Horn type.

A series is described by upper/lower parameters, each carrying an integer
coefficient row: the lattice term at n = (n_1, ..., n_r) is

    prod_a (a)_{u.n} / prod_b (b)_{v.n} * prod_i x_i^{n_i} / n_i!

summed over the non-negative integer lattice.  Specs must satisfy the
per-variable balance condition sum_a u_aj = sum_b v_bj + 1, which also
guarantees at most polynomial growth of the coefficients (so each x_i has
unit convergence radius).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import ConvergenceError, PoleError
from .special import SeriesValue

ALLOWED_ROW_ENTRIES = (-1, 0, 1, 2)


@dataclass(frozen=True)
class HornSeriesSpec:
    """Parameter lists plus integer coefficient rows for an r-variable series."""

    numerator: tuple[tuple[complex, tuple[int, ...]], ...]
    denominator: tuple[tuple[complex, tuple[int, ...]], ...]
    variables: int

    def __post_init__(self):
        if self.variables < 1:
            raise ValueError("a Horn spec needs at least one variable")
        for group in (self.numerator, self.denominator):
            for param, row in group:
                if not (math.isfinite(param.real) and math.isfinite(param.imag)):
                    raise ValueError("spec parameters must be finite")
                if len(row) != self.variables:
                    raise ValueError("coefficient row length must equal the variable count")
                for entry in row:
                    if entry not in ALLOWED_ROW_ENTRIES:
                        raise ValueError(
                            f"coefficient entries limited to {ALLOWED_ROW_ENTRIES}, got {entry}")


@dataclass(frozen=True)
class BalanceReport:
    """Per-variable balance check of a spec."""

    numerator_sums: tuple[int, ...]
    denominator_sums: tuple[int, ...]

    @property
    def per_variable(self) -> tuple[bool, ...]:
        return tuple(u == v + 1 for u, v in zip(self.numerator_sums, self.denominator_sums))

    @property
    def valid(self) -> bool:
        return all(self.per_variable)


def make_spec(numerator, denominator, variables: int) -> HornSeriesSpec:
    """Build a spec from (parameter, row) iterables, normalizing to tuples."""
    num = tuple((complex(a), tuple(int(e) for e in row)) for a, row in numerator)
    den = tuple((complex(b), tuple(int(e) for e in row)) for b, row in denominator)
    return HornSeriesSpec(num, den, variables)


def spec_2f1(a: complex, b: complex, c: complex) -> HornSeriesSpec:
    """The Gauss 2F1 series as a one-variable spec."""
    return make_spec([(a, (1,)), (b, (1,))], [(c, (1,))], 1)


def validate_spec(spec: HornSeriesSpec) -> BalanceReport:
    """Check the per-variable balance condition sum(u_j) = sum(v_j) + 1."""
    usums = tuple(sum(row[j] for _, row in spec.numerator) for j in range(spec.variables))
    vsums = tuple(sum(row[j] for _, row in spec.denominator) for j in range(spec.variables))
    return BalanceReport(usums, vsums)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    # lexicographic enumeration of non-negative compositions, deterministic
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _point_term(spec: HornSeriesSpec, n: Sequence[int], x: Sequence[float]) -> complex:
    """Exact lattice term at n, evaluated as an interleaved ratio product.

    The balance condition makes the numerator and denominator factor counts
    equal, so partial products stay near the term's own scale and never
    overflow for convergent arguments.
    """
    num_factors: list[complex] = []
    den_factors: list[complex] = []

    def push(base: complex, order: int, upper: bool) -> None:
        if order >= 0:
            target = num_factors if upper else den_factors
            for i in range(order):
                target.append(base + i)
        else:
            target = den_factors if upper else num_factors
            for i in range(1, -order + 1):
                target.append(base - i)

    for a, row in spec.numerator:
        push(a, sum(u * ni for u, ni in zip(row, n)), True)
    for b, row in spec.denominator:
        push(b, sum(v * ni for v, ni in zip(row, n)), False)
    for i, ni in enumerate(n):
        for k in range(1, ni + 1):
            den_factors.append(complex(k))
        num_factors.extend([complex(x[i])] * ni)

    if any(f == 0 for f in num_factors):
        return 0.0 + 0.0j
    if any(f == 0 for f in den_factors):
        raise PoleError(f"denominator Pochhammer vanishes at lattice point {tuple(n)}")

    # canonical factor order: results do not depend on how parameters were listed
    key = lambda f: (abs(f), f.real, f.imag)
    num_factors.sort(key=key)
    den_factors.sort(key=key)

    term = 1.0 + 0.0j
    for i in range(max(len(num_factors), len(den_factors))):
        if i < len(num_factors):
            term *= num_factors[i]
        if i < len(den_factors):
            term /= den_factors[i]
    return term


def shell_terms(spec: HornSeriesSpec, x: Sequence[float], degree: int) -> complex:
    """Exact sum of all lattice terms with |n| = degree."""
    report = validate_spec(spec)
    if not report.valid:
        raise ValueError(f"unbalanced spec: {report.per_variable}")
    if degree < 0:
        raise ValueError("degree must be >= 0")
    return sum((_point_term(spec, n, x) for n in _compositions(degree, spec.variables)),
               0.0 + 0.0j)


def evaluate_horn(spec: HornSeriesSpec, x: Sequence[float], tol: float = 1e-12,
                  max_terms: int = 10**6) -> SeriesValue:
    """Sum the lattice by total-degree shells with tail monitoring.

    Stops once three consecutive shell sums are below ``tol`` times the
    accumulated value; raises :class:`ConvergenceError` when the term budget
    runs out first.  Enumeration order is fixed (degree, then lexicographic),
    so results are deterministic.
    """
    report = validate_spec(spec)
    if not report.valid:
        raise ValueError(f"unbalanced spec: {report.per_variable}")
    if len(x) != spec.variables:
        raise ValueError("argument vector length must equal the variable count")
    total = 0.0 + 0.0j
    shell_mags: list[float] = []
    terms_used = 0
    degree = 0
    while terms_used <= max_terms:
        shell = 0.0 + 0.0j
        for n in _compositions(degree, spec.variables):
            shell += _point_term(spec, n, x)
            terms_used += 1
        total += shell
        shell_mags.append(abs(shell))
        if len(shell_mags) >= 3 and all(
                m <= tol * max(abs(total), 1e-300) for m in shell_mags[-3:]):
            tail = max(shell_mags[-3:]) / max(abs(total), 1e-300)
            return SeriesValue(total, tail, terms_used, True)
        degree += 1
    raise ConvergenceError(
        f"Horn series did not converge within {max_terms} lattice terms")


# --- JSON interchange --------------------------------------------------------

def spec_to_dict(spec: HornSeriesSpec) -> dict:
    return {
        "variables": spec.variables,
        "numerator": [{"re": a.real, "im": a.imag, "row": list(row)}
                      for a, row in spec.numerator],
        "denominator": [{"re": b.real, "im": b.imag, "row": list(row)}
                        for b, row in spec.denominator],
    }


def spec_from_dict(data: dict) -> HornSeriesSpec:
    try:
        variables = int(data["variables"])
        num = [(complex(e["re"], e.get("im", 0.0)), tuple(e["row"])) for e in data["numerator"]]
        den = [(complex(e["re"], e.get("im", 0.0)), tuple(e["row"])) for e in data["denominator"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed Horn spec document: {exc}") from exc
    return make_spec(num, den, variables)


def load_spec(path) -> HornSeriesSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return spec_from_dict(json.load(fh))


def dump_spec(spec: HornSeriesSpec, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(spec_to_dict(spec), fh, indent=2, sort_keys=True)
        fh.write("\n")
