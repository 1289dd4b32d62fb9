"""Command-line front end.

Subcommands: index, exact, oracle, simulate, sweep, dfk, decorrelate,
cov0. Exit codes: 0 success, 1 runtime error, 2 input error, 3
verification failure (oracle deltas exceeded). All randomness flows from
the single --seed flag; simulate and sweep write a CSV plus a JSON run
manifest that records the full parameter set.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import json
import sys
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .errors import ParameterError, ParseError, SeriesRefusalError, TicovError
from .graphcore import ModelParams, read_edge_list
from .indices import topo_index
from .moments import (
    SeriesControl,
    cov0_coefficients,
    covariance_exact,
    dfk_exact,
    dfk_poisson,
    expected_index,
    expected_product,
    moment_report,
    zero_cov_test,
)
from .montecarlo import MCConfig, run, sweep
from .oracle import EnumerationBudget, independence_check, oracle_dfk, oracle_index_moments
from .vfunc import parse_function, shift

ORACLE_REL_TOL = 1e-9

CSV_COLUMNS = [
    "n",
    "alpha",
    "p",
    "d1_exact",
    "d2_exact",
    "d1_poisson",
    "d2_poisson",
    "e_tx_closed",
    "cov_exact",
    "cov_asym_coeff",
    "mc_mean_tx",
    "mc_cov",
    "mc_stderr_cov",
    "samples",
    "seed",
]


@dataclass
class RunManifest:
    """Record of one CSV-producing run; rerunning with the recorded
    parameters reproduces the CSV byte for byte (timestamp aside)."""

    subcommand: str
    parameters: dict
    seed: int
    version: str = __version__
    timestamp: str = field(
        default_factory=lambda: datetime.datetime.now(datetime.timezone.utc).isoformat()
    )

    def write(self, path: Path) -> None:
        payload = {
            "subcommand": self.subcommand,
            "parameters": self.parameters,
            "seed": self.seed,
            "version": self.version,
            "timestamp": self.timestamp,
        }
        path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def manifest_path(csv_path: Path) -> Path:
    return Path(str(csv_path) + ".manifest.json")


def _fmt(x) -> str:
    # repr gives the shortest round-trip decimal; keeps CSV bytes stable
    return repr(float(x)) if isinstance(x, float) else str(x)


def _write_csv(path: Path, rows: list[dict]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(_fmt(row[col]) for col in CSV_COLUMNS)


def _csv_row(n, alpha, p, report, d1_poisson, d2_poisson, result) -> dict:
    return {
        "n": n,
        "alpha": alpha,
        "p": p,
        "d1_exact": report.d1,
        "d2_exact": report.d2,
        "d1_poisson": d1_poisson,
        "d2_poisson": d2_poisson,
        "e_tx_closed": report.e_tx,
        "cov_exact": report.cov_exact,
        "cov_asym_coeff": report.cov_asymptotic_coeff,
        "mc_mean_tx": result.mean_tx,
        "mc_cov": result.cov_tx_t1,
        "mc_stderr_cov": result.stderr_cov,
        "samples": result.samples,
        "seed": result.seed,
    }


# -- argument plumbing ---------------------------------------------------


def _add_prob_args(sp: argparse.ArgumentParser, lists: bool = False) -> None:
    group = sp.add_mutually_exclusive_group(required=True)
    if lists:
        sp.add_argument("--n", required=True, help="comma-separated vertex counts")
        group.add_argument("--alpha", help="comma-separated alpha values (p = alpha/n)")
        group.add_argument("--p", help="comma-separated edge probabilities")
    else:
        sp.add_argument("--n", type=int, required=True, help="vertex count")
        group.add_argument("--alpha", type=float, help="sets p = alpha/n")
        group.add_argument("--p", type=float, help="edge probability")


def _add_series_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--tol", type=float, default=1e-12, help="series tolerance (default 1e-12)")
    sp.add_argument(
        "--max-terms",
        type=int,
        default=None,
        help="explicit series term cap (required for functions that are not O(x))",
    )


def _resolve_params(args) -> ModelParams:
    if args.p is not None:
        return ModelParams.from_p(args.n, args.p)
    return ModelParams.from_alpha(args.n, args.alpha)


def _series_control(args) -> SeriesControl:
    return SeriesControl(tol=args.tol, max_terms=args.max_terms)


def _parse_int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v != ""]
    except ValueError:
        raise ParseError(f"invalid integer list for {flag}: {text!r}") from None


def _parse_float_list(text: str, flag: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v != ""]
    except ValueError:
        raise ParseError(f"invalid number list for {flag}: {text!r}") from None


# -- subcommands ----------------------------------------------------------


def cmd_index(args) -> int:
    f = parse_function(args.f)
    with open(args.graph) as fh:
        g = read_edge_list(fh)
    res = topo_index(g, f)
    print(f"T_X = {_fmt(res.value)}")
    print(f"T_1 = {res.edge_count}")
    hist = Counter(int(d) for d in g.degrees)
    print("degree histogram: " + " ".join(f"{d}:{c}" for d, c in sorted(hist.items())))
    return 0


def cmd_exact(args) -> int:
    f = parse_function(args.f)
    params = _resolve_params(args)
    ctl = _series_control(args)
    try:
        report = moment_report(f, params, ctl)
        asym = _fmt(report.cov_asymptotic_coeff)
    except SeriesRefusalError:
        # the finite-n closed forms never need the limit series
        report = None
        asym = "n/a (function not O(x); pass --max-terms)"
    if report is None:
        fields = [
            ("d1", dfk_exact(f, params, 1)),
            ("d2", dfk_exact(f, params, 2) if params.n >= 3 else float("nan")),
            ("expected_edges", params.expected_edges),
            ("e_tx", expected_index(f, params)),
            ("e_txt1", expected_product(f, params)),
            ("cov_exact", covariance_exact(f, params)),
        ]
    else:
        fields = [
            ("d1", report.d1),
            ("d2", report.d2),
            ("expected_edges", report.expected_edges),
            ("e_tx", report.e_tx),
            ("e_txt1", report.e_txt1),
            ("cov_exact", report.cov_exact),
        ]
    print(f"n = {params.n}")
    print(f"p = {_fmt(params.p)}")
    print(f"alpha = {_fmt(params.alpha)}")
    for name, value in fields:
        print(f"{name} = {_fmt(value)}")
    print(f"cov_asymptotic_coeff = {asym}")
    return 0


def cmd_oracle(args) -> int:
    f = parse_function(args.f)
    budget = EnumerationBudget(args.n, args.p if args.p is not None else args.alpha / args.n)
    params = ModelParams.from_p(budget.n, budget.p)
    om = oracle_index_moments(budget, f)
    rows = [
        ("E[T_X]", om.e_tx, expected_index(f, params)),
        ("E[T_X*T_1]", om.e_txt1, expected_product(f, params)),
        ("Cov(T_X,T_1)", om.cov, covariance_exact(f, params)),
        ("d_f(1)", oracle_dfk(budget, f, 1), dfk_exact(f, params, 1)),
    ]
    if budget.n >= 3:
        rows.append(("d_f(2)", oracle_dfk(budget, f, 2), dfk_exact(f, params, 2)))
    if budget.n <= 6:
        rows.append(("independence_dev", independence_check(budget), 0.0))
    print(f"{'quantity':<18} {'oracle':>24} {'closed_form':>24} {'rel_delta':>12}")
    ok = True
    for name, o, c in rows:
        delta = abs(o - c) / max(1.0, abs(c))
        ok = ok and delta < ORACLE_REL_TOL
        print(f"{name:<18} {_fmt(float(o)):>24} {_fmt(float(c)):>24} {delta:>12.3e}")
    print(f"all deltas < {ORACLE_REL_TOL:g}: {'yes' if ok else 'NO'}")
    return 0 if ok else 3


def cmd_dfk(args) -> int:
    f = parse_function(args.f)
    params = _resolve_params(args)
    ctl = _series_control(args)
    exact = dfk_exact(f, params, args.k)
    limit = dfk_poisson(f, params.alpha, args.k, ctl)
    print(f"dfk_exact = {_fmt(exact)}")
    print(f"dfk_poisson = {_fmt(limit)}")
    print(f"gap = {_fmt(abs(exact - limit))}")
    return 0


def cmd_simulate(args) -> int:
    f = parse_function(args.f)
    params = _resolve_params(args)
    ctl = _series_control(args)
    cfg = MCConfig(params=params, f=f, samples=args.samples, seed=args.seed, workers=args.workers)
    result = run(cfg)
    report = moment_report(f, params, ctl)
    row = _csv_row(
        params.n,
        params.alpha,
        params.p,
        report,
        dfk_poisson(f, params.alpha, 1, ctl),
        dfk_poisson(f, params.alpha, 2, ctl),
        result,
    )
    out = Path(args.out)
    _write_csv(out, [row])
    RunManifest(
        subcommand="simulate",
        parameters={
            "n": params.n,
            "p": params.p,
            "f": f.spec(),
            "samples": args.samples,
            "workers": args.workers,
            "tol": args.tol,
            "max_terms": args.max_terms,
            "out": str(out),
        },
        seed=args.seed,
    ).write(manifest_path(out))
    print(f"mean_tx = {_fmt(result.mean_tx)} (stderr {_fmt(result.stderr_mean_tx)})")
    print(f"mean_t1 = {_fmt(result.mean_t1)}")
    print(f"cov_tx_t1 = {_fmt(result.cov_tx_t1)} (stderr {_fmt(result.stderr_cov)})")
    print(f"cov_exact = {_fmt(report.cov_exact)}")
    print(f"wrote {out} and {manifest_path(out)}")
    return 0


def cmd_sweep(args) -> int:
    f = parse_function(args.f)
    ns = _parse_int_list(args.n, "--n")
    if args.alpha is not None:
        alphas = _parse_float_list(args.alpha, "--alpha")
        cells = [(n, a) for n in ns for a in alphas]
    else:
        ps = _parse_float_list(args.p, "--p")
        cells = [(n, p * n) for n in ns for p in ps]
    ctl = _series_control(args)
    rows = sweep(cells, f, args.samples, args.seed, workers=args.workers, ctl=ctl)
    csv_rows = [
        _csv_row(r.n, r.alpha, r.p, r.report, r.d1_poisson, r.d2_poisson, r.result) for r in rows
    ]
    out = Path(args.out)
    _write_csv(out, csv_rows)
    RunManifest(
        subcommand="sweep",
        parameters={
            "n": ns,
            "alpha": None if args.alpha is None else _parse_float_list(args.alpha, "--alpha"),
            "p": None if args.p is None else _parse_float_list(args.p, "--p"),
            "f": f.spec(),
            "samples": args.samples,
            "workers": args.workers,
            "tol": args.tol,
            "max_terms": args.max_terms,
            "out": str(out),
        },
        seed=args.seed,
    ).write(manifest_path(out))
    print(f"wrote {len(csv_rows)} rows to {out} and {manifest_path(out)}")
    return 0


def cmd_decorrelate(args) -> int:
    f = parse_function(args.f)
    params = _resolve_params(args)
    d1 = dfk_exact(f, params, 1)
    g = shift(f, d1)
    before = covariance_exact(f, params)
    after = covariance_exact(g, params)
    print(f"d1 = {_fmt(d1)}")
    print(f"shifted = {g.spec()}")
    print(f"cov_before = {_fmt(before)}")
    print(f"cov_after = {_fmt(after)}")
    return 0


def cmd_cov0(args) -> int:
    f = parse_function(args.f)
    ctl = _series_control(args)
    verdict = zero_cov_test(f, args.alpha, ctl)
    print(f"zero_covariance = {'yes' if verdict.zero else 'no'}")
    print(f"d1_limit = {_fmt(verdict.d1)}")
    coeffs = cov0_coefficients(f, args.jmax)
    for j, c in enumerate(coeffs):
        print(f"c_{j} = {_fmt(c)}")
    return 0


# -- entry point ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ticov",
        description="Degree-based edge-sum indices on random graphs: closed-form "
        "moments, exhaustive-enumeration checks, and seeded Monte Carlo.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("index", help="evaluate an index on an edge-list file")
    sp.add_argument("graph", help="edge-list file path")
    sp.add_argument("--f", required=True, help="vertex function spec")
    sp.set_defaults(func=cmd_index)

    sp = sub.add_parser("exact", help="closed-form moment report")
    _add_prob_args(sp)
    sp.add_argument("--f", required=True)
    _add_series_args(sp)
    sp.set_defaults(func=cmd_exact)

    sp = sub.add_parser("oracle", help="enumeration vs closed forms (exit 3 on mismatch)")
    _add_prob_args(sp)
    sp.add_argument("--f", required=True)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("dfk", help="edge-conditioned mean: finite n vs Poisson limit")
    _add_prob_args(sp)
    sp.add_argument("--f", required=True)
    sp.add_argument("--k", type=int, default=1, help="number of conditioned edges")
    _add_series_args(sp)
    sp.set_defaults(func=cmd_dfk)

    sp = sub.add_parser("simulate", help="Monte Carlo at one (n, p); writes CSV + manifest")
    _add_prob_args(sp)
    sp.add_argument("--f", required=True)
    sp.add_argument("--samples", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out", required=True, help="CSV output path")
    _add_series_args(sp)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("sweep", help="Monte Carlo over an (n, alpha) grid; writes CSV + manifest")
    _add_prob_args(sp, lists=True)
    sp.add_argument("--f", required=True)
    sp.add_argument("--samples", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out", required=True, help="CSV output path")
    _add_series_args(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("decorrelate", help="shift f by d_f(1); covariance before/after")
    _add_prob_args(sp)
    sp.add_argument("--f", required=True)
    sp.set_defaults(func=cmd_decorrelate)

    sp = sub.add_parser("cov0", help="zero-covariance test and its series coefficients")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--f", required=True)
    sp.add_argument("--jmax", type=int, default=20)
    _add_series_args(sp)
    sp.set_defaults(func=cmd_cov0)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TicovError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
