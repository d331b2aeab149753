"""Command-line surface.

Commands: ``zonal``, ``assoc``, ``compare``, ``horn``, ``dist``, ``selftest``.
Exit codes are a stable contract: 0 success, 1 tolerance violation,
2 input/validation error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import acceptance
from .deltas import PointwiseMatrix, transform_coefficients
from .errors import AccuracyError, ConvergenceError, PoleError, SingularMatrixError
from .horn import evaluate_horn, load_spec, validate_spec
from .quadrature import assoc_oracle, zonal_oracle
from .spherical import (AssocIndex, GroupSignature, SpecialGroup, assoc_series,
                        zonal_horn, zonal_series, zonal_special)

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_INPUT = 2
EXIT_NUMERICAL = 3


def _parse_sigma(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise argparse.ArgumentTypeError(f"sigma must be 're' or 're,im', got {text!r}")


def _parse_alphas(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) == 1:
        return [float(parts[0])]
    if len(parts) == 3:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 1 or start < 0:
            raise argparse.ArgumentTypeError("alpha range needs count >= 1 and start >= 0")
        if count == 1:
            return [start]
        return [start + (stop - start) * i / (count - 1) for i in range(count)]
    raise argparse.ArgumentTypeError(f"alpha must be 'a' or 'start:stop:count', got {text!r}")


def _emit(rows: list[dict], columns: list[str], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps({"columns": columns, "rows": rows}, indent=2, sort_keys=True))
        return
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([repr(row[c]) if isinstance(row[c], float) else row[c]
                         for c in columns])
    sys.stdout.write(out.getvalue())


def _row_base(sig: GroupSignature, sigma: complex, alpha: float) -> dict:
    return {"p": sig.p, "q": sig.q, "re_sigma": sigma.real, "im_sigma": sigma.imag,
            "alpha": alpha}


_GROUP_SIGNATURES = {SpecialGroup.SO41: (4, 1), SpecialGroup.SO32: (3, 2),
                     SpecialGroup.SO42: (4, 2)}


def cmd_zonal(args) -> int:
    sig = GroupSignature(args.p, args.q)
    if args.group is not None:
        expected = _GROUP_SIGNATURES[SpecialGroup(args.group)]
        if (sig.p, sig.q) != expected:
            print(f"error: --group {args.group} is the signature {expected}, "
                  f"got ({sig.p}, {sig.q})", file=sys.stderr)
            return EXIT_INPUT
    rows = []
    failed = False
    for sigma in args.sigma:
        for alpha in args.alpha:
            row = _row_base(sig, sigma, alpha)
            try:
                if args.group is not None:
                    sv = zonal_special(SpecialGroup(args.group), sigma, alpha, tol=args.tol)
                elif args.method == "horn":
                    sv = zonal_horn(sig, sigma, alpha, tol=args.tol)
                else:
                    sv = zonal_series(sig, sigma, alpha, tol=args.tol)
                row.update(re_value=sv.value.real, im_value=sv.value.imag,
                           tail_estimate=sv.tail_estimate, terms_used=sv.terms_used,
                           error="")
            except (ConvergenceError, PoleError, OverflowError, ArithmeticError) as exc:
                failed = True
                row.update(re_value=float("nan"), im_value=float("nan"),
                           tail_estimate=float("nan"), terms_used=0, error=str(exc))
            rows.append(row)
    _emit(rows, ["p", "q", "re_sigma", "im_sigma", "alpha", "re_value", "im_value",
                 "tail_estimate", "terms_used", "error"], args.format)
    return EXIT_NUMERICAL if failed else EXIT_OK


def cmd_assoc(args) -> int:
    sig = GroupSignature(args.p, args.q)
    idx = AssocIndex(args.nu, args.r, args.s)
    rows = []
    failed = False
    for sigma in args.sigma:
        for alpha in args.alpha:
            row = _row_base(sig, sigma, alpha)
            row.update(nu=idx.nu, r=idx.r, s=idx.s)
            try:
                sv = assoc_series(sig, sigma, idx, alpha, tol=args.tol)
                row.update(re_value=sv.value.real, im_value=sv.value.imag,
                           tail_estimate=sv.tail_estimate, terms_used=sv.terms_used,
                           error="")
            except (ConvergenceError, PoleError, OverflowError, ArithmeticError) as exc:
                failed = True
                row.update(re_value=float("nan"), im_value=float("nan"),
                           tail_estimate=float("nan"), terms_used=0, error=str(exc))
            rows.append(row)
    _emit(rows, ["p", "q", "nu", "r", "s", "re_sigma", "im_sigma", "alpha",
                 "re_value", "im_value", "tail_estimate", "terms_used", "error"],
          args.format)
    return EXIT_NUMERICAL if failed else EXIT_OK


def cmd_compare(args) -> int:
    sig = GroupSignature(args.p, args.q)
    idx = None
    if args.nu is not None or args.r is not None or args.s is not None:
        idx = AssocIndex(args.nu or 0, args.r or 0, args.s or 0)
    rows = []
    violated = False
    failed = False
    for sigma in args.sigma:
        for alpha in args.alpha:
            row = _row_base(sig, sigma, alpha)
            if idx is not None:
                row.update(nu=idx.nu, r=idx.r, s=idx.s)
            try:
                if idx is None:
                    series = zonal_series(sig, sigma, alpha, tol=args.tol).value
                    oracle = zonal_oracle(sig, sigma, alpha, n=args.oracle_n)
                else:
                    series = assoc_series(sig, sigma, idx, alpha, tol=args.tol).value
                    oracle = assoc_oracle(sig, sigma, idx.lam, idx.mu, alpha,
                                          n=args.oracle_n)
                if args.debug_corrupt:
                    series *= 1.0 + 2e-6
                absd = abs(series - oracle)
                reld = absd / max(abs(oracle), 1e-3)
                violated = violated or reld > args.tolerance
                row.update(re_series=series.real, im_series=series.imag,
                           re_oracle=oracle.real, im_oracle=oracle.imag,
                           abs_diff=absd, rel_diff=reld, error="")
            except (ConvergenceError, PoleError, AccuracyError, OverflowError,
                    ArithmeticError) as exc:
                failed = True
                row.update(re_series=float("nan"), im_series=float("nan"),
                           re_oracle=float("nan"), im_oracle=float("nan"),
                           abs_diff=float("nan"), rel_diff=float("nan"),
                           error=str(exc))
            rows.append(row)
    columns = ["p", "q", "re_sigma", "im_sigma", "alpha", "re_series", "im_series",
               "re_oracle", "im_oracle", "abs_diff", "rel_diff", "error"]
    if idx is not None:
        columns[2:2] = ["nu", "r", "s"]
    _emit(rows, columns, args.format)
    if failed:
        return EXIT_NUMERICAL
    return EXIT_TOLERANCE if violated else EXIT_OK


def cmd_horn(args) -> int:
    try:
        spec = load_spec(args.spec)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: cannot load spec: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = validate_spec(spec)
    if not report.valid:
        for j, (u, v, ok) in enumerate(zip(report.numerator_sums,
                                           report.denominator_sums,
                                           report.per_variable)):
            status = "ok" if ok else "UNBALANCED"
            print(f"variable {j}: sum(u) = {u}, sum(v) + 1 = {v + 1} -> {status}")
        return EXIT_INPUT
    x = [float(v) for v in args.x.split(",")]
    if len(x) != spec.variables:
        print(f"error: spec has {spec.variables} variables, got {len(x)} arguments",
              file=sys.stderr)
        return EXIT_INPUT
    try:
        sv = evaluate_horn(spec, x, tol=args.tol)
    except (ConvergenceError, PoleError, OverflowError) as exc:
        print(f"error: evaluation failed: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    print(json.dumps({"re_value": sv.value.real, "im_value": sv.value.imag,
                      "tail_estimate": sv.tail_estimate,
                      "terms_used": sv.terms_used}, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_dist(args) -> int:
    try:
        with open(args.beta, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        entries = np.asarray(data["beta"] if isinstance(data, dict) else data,
                             dtype=float)
        beta = PointwiseMatrix(entries)
        orders = tuple(int(v) for v in args.orders.split(","))
        coeffs = transform_coefficients(beta, orders)
        det = beta.det()
    except (OSError, ValueError, KeyError, json.JSONDecodeError,
            SingularMatrixError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(json.dumps({"det_beta": det,
                      "terms": [{"p": list(p), "coeff": c}
                                for p, c in coeffs.items()]}, indent=2))
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = acceptance.run_all(verbose=True)
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} acceptance criteria passed")
    return EXIT_OK if passed == len(results) else EXIT_TOLERANCE


def _add_grid_flags(sub, assoc_index: bool) -> None:
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--q", type=int, required=True)
    sub.add_argument("--sigma", type=_parse_sigma, action="append", required=True,
                     metavar="RE[,IM]")
    sub.add_argument("--alpha", type=_parse_alphas, required=True,
                     metavar="A|START:STOP:COUNT")
    sub.add_argument("--tol", type=float, default=1e-12)
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    if assoc_index:
        sub.add_argument("--nu", type=int, default=0, choices=(0, 1))
        sub.add_argument("--r", type=int, default=0)
        sub.add_argument("--s", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pqsphere",
        description="Zonal/associated spherical functions of SO0(p,q), Horn series, "
                    "quadrature comparisons, and delta-derivative transforms.")
    subs = parser.add_subparsers(dest="command", required=True)

    z = subs.add_parser("zonal", help="evaluate zonal functions over a grid")
    _add_grid_flags(z, assoc_index=False)
    z.add_argument("--method", choices=("series", "horn"), default="series")
    z.add_argument("--group", choices=tuple(g.value for g in SpecialGroup),
                   default=None, help="route through a named special-group form")
    z.set_defaults(func=cmd_zonal)

    a = subs.add_parser("assoc", help="evaluate associated functions over a grid")
    _add_grid_flags(a, assoc_index=True)
    a.set_defaults(func=cmd_assoc)

    c = subs.add_parser("compare", help="series vs quadrature oracle over a grid")
    _add_grid_flags(c, assoc_index=False)
    c.add_argument("--nu", type=int, default=None, choices=(0, 1))
    c.add_argument("--r", type=int, default=None)
    c.add_argument("--s", type=int, default=None)
    c.add_argument("--oracle-n", type=int, default=None,
                   help="fixed oracle rule size (default: auto-refine)")
    c.add_argument("--tolerance", type=float, default=1e-8,
                   help="relative-difference gate deciding the exit status")
    c.add_argument("--debug-corrupt", action="store_true", help=argparse.SUPPRESS)
    c.set_defaults(func=cmd_compare)

    h = subs.add_parser("horn", help="evaluate a Horn series spec from a JSON file")
    h.add_argument("--spec", required=True)
    h.add_argument("--x", required=True, metavar="X1[,X2,...]")
    h.add_argument("--tol", type=float, default=1e-12)
    h.set_defaults(func=cmd_horn)

    d = subs.add_parser("dist", help="delta-derivative transform coefficient table")
    d.add_argument("--beta", required=True, help="JSON file with a k x k matrix")
    d.add_argument("--orders", required=True, metavar="Q1[,Q2,...]")
    d.set_defaults(func=cmd_dist)

    s = subs.add_parser("selftest", help="run the acceptance grid")
    s.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "alpha") and args.alpha is not None:
        # flatten repeated/range alpha flags into one ordered list
        flat: list[float] = []
        for chunk in args.alpha if isinstance(args.alpha[0], list) else [args.alpha]:
            flat.extend(chunk)
        args.alpha = flat
    for gate in ("tol", "tolerance"):
        if getattr(args, gate, None) is not None and getattr(args, gate) <= 0:
            print(f"error: --{gate} must be > 0", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
