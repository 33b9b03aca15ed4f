"""Command-line interface.

Subcommands: compute, verify, sigma, constants, hreg, stats, bounds.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bounds as bounds_mod
from . import figures, pipeline, primesum, ratio
from .errors import VerificationError
from .ntheory import build_field, is_prime
from .specfun import constants_table


def _require_odd_prime(q: int) -> int:
    if q < 3 or not is_prime(q) or q == 2:
        raise SystemExit(f"error: q={q} is not an odd prime")
    return q


def _cmd_compute(args) -> int:
    manifest = pipeline.compute_range(
        args.from_q,
        args.to_q,
        out=args.out,
        threads=args.threads,
        resume=args.resume,
        paranoid=args.paranoid,
    )
    print(
        f"range [{manifest.range[0]}, {manifest.range[1]}] -> {manifest.output_path} "
        f"(completed through {manifest.completed_through}, threads={manifest.thread_count})"
    )
    return 0


def _cmd_verify(args) -> int:
    q = _require_odd_prime(args.q)
    field = build_field(q)
    rec = ratio.log_ratio_fft(field)
    split = primesum.verify_ratio(q, A=args.A, delta=args.delta)
    diff = abs(split.total - rec.log_R)
    tol = 10.0 ** (-args.delta) + rec.err_est
    plan = split.plan
    print(f"q={q} A={plan.A} P={plan.P} M={plan.M} K={plan.K} delta={plan.delta}")
    print(f"fft        {rec.log_R!r}")
    print(f"prime-sum  {split.total!r}")
    print(f"difference {diff:.3e}")
    print(f"tolerance  {tol:.3e}  (certified {plan.e1_bound + plan.e2_bound:.3e} + err_est {rec.err_est:.3e})")
    ok = diff <= tol
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def _cmd_sigma(args) -> int:
    q = _require_odd_prime(args.q)
    field = build_field(q)
    rec = ratio.log_ratio_fft(field)
    try:
        split = primesum.prime_sum_split(q, rec.log_R, A=args.A, delta=args.delta)
    except VerificationError as exc:
        print(f"FAIL: {exc}")
        return 1
    bound = bounds_mod.simple_bound(q)
    print(f"q={q} delta={split.plan.delta}")
    print(f"sigma1 (primes)        {split.prime_sum!r}")
    print(f"sigma2 (prime powers)  {split.power_sum!r}")
    print(f"sum                    {split.total!r}")
    print(f"log R (fft)            {rec.log_R!r}")
    print(f"|sigma2| bound         {bound!r}  ok={abs(split.power_sum) <= bound}")
    return 0


def _cmd_constants(args) -> int:
    t = constants_table()
    rows = [
        ("euler_gamma", f"{t.euler_gamma:.16f}"),
        ("meissel_mertens", f"{t.meissel_mertens:.16f}"),
        ("power_sum_constant", f"{t.power_sum_constant:.16f}"),
        ("harmonic_loglog_min", f"{t.harmonic_loglog_min:.16f}"),
        ("k_opt", str(t.k_opt)),
    ]
    width = max(len(name) for name, _ in rows)
    for name, val in rows:
        print(f"{name:<{width}}  {val}")
    print()
    print("name,value")
    for name, val in rows:
        print(f"{name},{val}")
    return 0


def _cmd_hreg(args) -> int:
    q = _require_odd_prime(args.q)
    field = build_field(q)
    rec = ratio.log_ratio_fft(field)
    print(f"log H(q)     {ratio.log_H(q)!r}")
    print(f"log R(q)     {rec.log_R!r}")
    print(f"log h*Reg    {ratio.log_hreg(rec)!r}")
    return 0


def _cmd_stats(args) -> int:
    summary = pipeline.summarize(args.in_path)
    print(f"rows            {summary.count}")
    print(f"mean R          {summary.mean_R!r}")
    print(f"mean R_norm     {summary.mean_R_norm!r}")
    print(f"min R           {summary.min_R!r} at q={summary.min_q}")
    print(f"max R           {summary.max_R!r} at q={summary.max_q}")
    print(f"2q+1 prime      {summary.count_2qp1} rows, mean R {summary.mean_R_2qp1!r}")
    print(f"2q-1 prime      {summary.count_2qm1} rows, mean R {summary.mean_R_2qm1!r}")
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    figures.plot_scatter(args.in_path, normalized=False, out_path=outdir / "values_scatter.svg")
    figures.plot_scatter(args.in_path, normalized=True, out_path=outdir / "normalized_scatter.svg")
    if summary.count >= 2:
        figures.plot_histogram(args.in_path, normalized=False, out_path=outdir / "values_hist.svg")
        figures.plot_histogram(args.in_path, normalized=True, out_path=outdir / "normalized_hist.svg")
    print(f"figures -> {outdir}")
    return 0


def _cmd_bounds(args) -> int:
    rows = pipeline.load_rows(args.in_path)
    n_env = 0
    n_band = 0
    print("q,simple_bound,refined_bound,envelope_ok,normalized_ok")
    for row in rows:
        rec = ratio.RatioRecord(
            q=row.q,
            log_R=row.log_R,
            R=row.R,
            odd_part=0.0,
            even_part=row.log_R,
            method=ratio.Method.FFT,
            err_est=row.err_est,
        )
        rep = bounds_mod.report_for(rec)
        n_env += rep.envelope_ok
        n_band += rep.normalized_ok
        print(
            f"{row.q},{rep.simple_bound:.10f},{rep.refined_bound:.10f},"
            f"{int(rep.envelope_ok)},{int(rep.normalized_ok)}"
        )
    print(f"# envelope ok: {n_env}/{len(rows)}   normalized band ok: {n_band}/{len(rows)}")
    if args.dusart_x is not None:
        try:
            ok = bounds_mod.check_dusart(args.dusart_x)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        print(f"# dusart at x={args.dusart_x}: {'ok' if ok else 'VIOLATED'}")
        if not ok:
            return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bsratio", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="batch-compute R(q) over a prime range")
    p.add_argument("--from", dest="from_q", type=int, required=True)
    p.add_argument("--to", dest="to_q", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--resume", action="store_true")
    p.add_argument("--paranoid", action="store_true")
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("verify", help="cross-check one q against the prime-sum route")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--delta", type=int, default=8)
    p.add_argument("--A", type=int, default=primesum.DEFAULT_A)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sigma", help="prime / prime-power split of log R(q)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--delta", type=int, default=8)
    p.add_argument("--A", type=int, default=primesum.DEFAULT_A)
    p.set_defaults(func=_cmd_sigma)

    p = sub.add_parser("constants", help="print the constants table")
    p.set_defaults(func=_cmd_constants)

    p = sub.add_parser("hreg", help="print log H(q), log R(q), log h*Reg")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=_cmd_hreg)

    p = sub.add_parser("stats", help="summary statistics and SVG figures")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--out-dir", dest="out_dir", default=".")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("bounds", help="bound report for a results CSV")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--dusart-x", dest="dusart_x", type=float, default=None)
    p.set_defaults(func=_cmd_bounds)

    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
