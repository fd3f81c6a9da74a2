"""Command-line surface: simulate, estimate, montecarlo, cv, curves."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import io
from .dgp import NOISE_CASES, DgpConfig, simulate
from .estimation import MODES, ONE_STEP, TWO_STEP, LagParams, estimate
from .evaluation import cross_validate, run_monte_carlo


def _add_lag_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--h0", type=int, default=2, help="lag horizon for the M matrices")
    parser.add_argument("--K", type=int, default=3, help="lag horizon for whiteness statistics")
    parser.add_argument("--i-max", type=int, default=None, help="ratio search bound (default dim/2)")


def _add_estimate_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, help="series CSV path")
    parser.add_argument("--p", type=int, required=True)
    parser.add_argument("--q", type=int, required=True)
    _add_lag_flags(parser)
    parser.add_argument("--m", type=int, default=None, help="two-step projection width")
    parser.add_argument(
        "--mode",
        choices=[ONE_STEP, TWO_STEP, "both"],
        default=TWO_STEP,
        help="estimation mode",
    )
    parser.add_argument(
        "--no-demean", action="store_true", help="skip subtracting per-entry temporal means"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matfac",
        description="Row/column factor-count estimation for matrix-variate time series",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="write a synthetic series CSV")
    p_sim.add_argument("--p", type=int, required=True)
    p_sim.add_argument("--q", type=int, required=True)
    p_sim.add_argument("--r", type=int, required=True)
    p_sim.add_argument("--c", type=int, required=True)
    p_sim.add_argument("--n", type=int, required=True)
    p_sim.add_argument("--a", type=float, default=0.5)
    p_sim.add_argument("--delta", type=float, default=0.0)
    p_sim.add_argument("--omega", type=float, default=0.0)
    p_sim.add_argument("--noise-case", choices=NOISE_CASES, default="identity")
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--output", required=True, help="series CSV to write")

    p_est = sub.add_parser("estimate", help="estimate factor counts from a series CSV")
    _add_estimate_flags(p_est)
    p_est.add_argument(
        "--output", default=".", help="directory for the per-(side, mode) curve CSVs"
    )

    p_mc = sub.add_parser("montecarlo", help="run Monte Carlo cells from a JSON config")
    p_mc.add_argument("--config", required=True, help="JSON cell or {'cells': [...]} file")
    p_mc.add_argument("--output", default=None, help="output CSV (default stdout)")
    p_mc.add_argument("--workers", type=int, default=1)
    p_mc.add_argument("--reps", type=int, default=None, help="override replications")
    p_mc.add_argument("--seed", type=int, default=None, help="override master seed")
    for flag in ("--p", "--q", "--n", "--r", "--c"):
        p_mc.add_argument(flag, type=int, default=None)
    p_mc.add_argument("--a", type=float, default=None)
    p_mc.add_argument("--delta", type=float, default=None)
    p_mc.add_argument("--omega", type=float, default=None)
    p_mc.add_argument("--noise-case", choices=NOISE_CASES, default=None)
    p_mc.add_argument("--m", type=int, default=None)

    p_cv = sub.add_parser("cv", help="cross-validated RSS over candidate (r, c) pairs")
    p_cv.add_argument("--input", required=True)
    p_cv.add_argument("--p", type=int, required=True)
    p_cv.add_argument("--q", type=int, required=True)
    p_cv.add_argument("--candidates", required=True, help='candidate list "r:c,r:c,..."')
    p_cv.add_argument("--folds", type=int, default=5)
    _add_lag_flags(p_cv)
    p_cv.add_argument("--squared", action="store_true", help="use squared residual norms")
    p_cv.add_argument(
        "--no-demean", action="store_true", help="skip subtracting per-entry temporal means"
    )
    p_cv.add_argument("--output", default=None, help="output CSV (default stdout)")

    p_curves = sub.add_parser("curves", help="write ratio-curve CSVs without the summary table")
    _add_estimate_flags(p_curves)
    p_curves.add_argument("--output", default=".", help="directory for curve CSVs")

    return parser


def _lag_params(args: argparse.Namespace) -> LagParams:
    return LagParams(h0=args.h0, K=args.K, i_max=args.i_max)


def _run_estimate(args: argparse.Namespace, print_table: bool) -> None:
    series = io.read_series_csv(args.input, args.p, args.q, demean=not args.no_demean)
    params = _lag_params(args)
    modes = [ONE_STEP, TWO_STEP] if args.mode == "both" else [args.mode]
    out_dir = io.ensure_dir(args.output)
    rows = []
    for mode in modes:
        result = estimate(series, params, mode=mode, m=args.m)
        for side_est in (result.row, result.col):
            io.write_curves_csv(
                side_est, str(out_dir / io.curves_filename(side_est.side, mode))
            )
        for method in ("ER", "SR", "MR"):
            r_hat, c_hat = result.counts(method)
            rows.append((method, mode, r_hat, c_hat))
    if print_table:
        print(f"{'method':<8}{'mode':<10}{'r_hat':>6}{'c_hat':>6}")
        for method, mode, r_hat, c_hat in rows:
            print(f"{method:<8}{mode:<10}{r_hat:>6}{c_hat:>6}")


def _run(args: argparse.Namespace) -> None:
    if args.command == "simulate":
        config = DgpConfig(
            p=args.p,
            q=args.q,
            r=args.r,
            c=args.c,
            n=args.n,
            a=args.a,
            delta=args.delta,
            omega=args.omega,
            noise_case=args.noise_case,
            seed=args.seed,
        )
        io.write_series_csv(simulate(config).y, args.output)
    elif args.command in ("estimate", "curves"):
        _run_estimate(args, print_table=args.command == "estimate")
    elif args.command == "montecarlo":
        overrides = {
            "p": args.p,
            "q": args.q,
            "n": args.n,
            "r": args.r,
            "c": args.c,
            "a": args.a,
            "delta": args.delta,
            "omega": args.omega,
            "noise_case": args.noise_case,
            "seed": args.seed,
            "replications": args.reps,
            "m": args.m,
        }
        cells = io.load_mc_config(args.config, overrides)
        results = [(cell, run_monte_carlo(cell, workers=args.workers)) for cell in cells]
        if args.output:
            io.write_mc_csv(results, args.output)
        else:
            io.write_mc_csv(results, sys.stdout)
    elif args.command == "cv":
        series = io.read_series_csv(args.input, args.p, args.q, demean=not args.no_demean)
        report = cross_validate(
            series,
            io.parse_candidates(args.candidates),
            folds=args.folds,
            params=_lag_params(args),
            squared=args.squared,
        )
        if args.output:
            io.write_cv_csv(report, args.output)
        else:
            for (r, c), rss in zip(report.candidates, report.rss):
                print(f"r={r} c={c} rss={rss:.6f}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _run(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def entrypoint() -> None:  # console-script shim
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
