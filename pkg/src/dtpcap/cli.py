"""Command-line surface: point evaluation, CSV sweeps, verification, capacity.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
CSV sweeps are byte-deterministic: UTF-8, comma-separated, header
``mu,<bound>[,<bound>...]``, shortest round-trip decimals, empty cells
where a bound's expression is undefined, and a bare ``\\n`` newline.
Values are always written in nats; ``--bits`` only rescales printed output.
"""

import argparse
import math
import sys

from . import bounds as bnd
from .distributions import ChannelParams
from .numeric_capacity import ba_capacity_constrained
from .verify import SUITE_NAMES, run_suite

_LN2 = math.log(2.0)

_WHICH = (
    "main",
    "elementary",
    "cr19a",
    "bv",
    "lapidoth",
    "lapidoth-under",
    "ww",
    "ww-nosup",
    "aminian",
    "best",
)

_PRESETS = {
    # curve sets follow the two comparison figures: the full field at
    # lam = 0.1 (peak 1 for the covariance bound, sup term dropped from
    # the small-power bound, asymptotic margin dropped), and the
    # three-way close-up
    "fig1": {
        "lam": 0.1,
        "bounds": ["main", "elementary", "cr19a", "lapidoth-under", "aminian", "ww-nosup", "bv"],
        "peak": 1.0,
    },
    "fig2": {"lam": 0.1, "bounds": ["main", "elementary", "cr19a"], "peak": None},
}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="dtpcap",
        description="Capacity bounds for the discrete-time Poisson channel with dark current",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bound = sub.add_parser("bound", help="evaluate one bound at a parameter point")
    p_bound.add_argument("--lambda", dest="lam", type=float, required=True, help="dark current")
    p_bound.add_argument("--mu", type=float, required=True, help="mean-power constraint")
    p_bound.add_argument("--peak", type=float, default=math.inf, help="peak-power constraint")
    p_bound.add_argument("--which", choices=_WHICH, default="main")
    p_bound.add_argument("--eta", type=float, help="free parameter for --which lapidoth")
    p_bound.add_argument("--p", type=float, help="free parameter for --which lapidoth")
    p_bound.add_argument("--bits", action="store_true", help="display in bits instead of nats")

    p_sweep = sub.add_parser("sweep", help="write a CSV of bounds over a mu range")
    p_sweep.add_argument("--preset", choices=sorted(_PRESETS), help="figure preset (fills defaults)")
    p_sweep.add_argument("--lambda", dest="lam", type=float, help="dark current")
    p_sweep.add_argument("--mu-min", type=float, help="lower end of the mu range")
    p_sweep.add_argument("--mu-max", type=float, help="upper end of the mu range")
    p_sweep.add_argument("--points", type=int, help="number of sweep points")
    p_sweep.add_argument("--log", action="store_true", help="log-spaced mu grid")
    p_sweep.add_argument("--bounds", help="comma-separated bound names")
    p_sweep.add_argument("--peak", type=float, help="peak power for the aminian column")
    p_sweep.add_argument("--out", required=True, help="output CSV path")

    p_verify = sub.add_parser("verify", help="run verification suites")
    p_verify.add_argument("--suite", required=True, help="suite name or 'all'")
    p_verify.add_argument("--tol-scale", type=float, default=1.0)

    p_cap = sub.add_parser("capacity", help="numeric capacity lower bound (Blahut-Arimoto)")
    p_cap.add_argument("--lambda", dest="lam", type=float, required=True)
    p_cap.add_argument("--mu", type=float, required=True)
    p_cap.add_argument("--peak", type=float, required=True)
    p_cap.add_argument("--grid", type=int, default=128)
    p_cap.add_argument("--tol", type=float, default=1e-9)
    p_cap.add_argument("--max-iter", type=int, default=100_000)

    return parser


def _eval_bound(which, lam, mu, peak, eta=None, p=None):
    if which == "main":
        return bnd.bound_main(lam, mu)
    if which == "elementary":
        return bnd.bound_main_elementary(lam, mu)
    if which == "cr19a":
        return bnd.bound_cr19a(mu)
    if which == "bv":
        return bnd.bound_brady_verdu(lam, mu)
    if which == "lapidoth":
        return bnd.bound_lapidoth(lam, mu, bnd.LapidothParams(eta=eta, p=p))
    if which == "lapidoth-under":
        return bnd.bound_lapidoth_under(lam, mu)
    if which == "ww":
        return bnd.bound_wang_wornell(lam, mu, include_sup=True)
    if which == "ww-nosup":
        return bnd.bound_wang_wornell(lam, mu, include_sup=False)
    if which == "aminian":
        return bnd.bound_aminian(lam, mu, peak)
    if which == "best":
        return bnd.best_bound(ChannelParams(lam=lam, mu=mu, peak=peak))
    raise ValueError(f"unknown bound {which!r}")


def _cmd_bound(parser, args):
    if args.which == "aminian" and not math.isfinite(args.peak):
        parser.error("--which aminian requires a finite --peak")
    if args.which == "lapidoth" and (args.eta is None or args.p is None):
        parser.error("--which lapidoth requires --eta and --p")
    try:
        res = _eval_bound(args.which, args.lam, args.mu, args.peak, args.eta, args.p)
    except ValueError as exc:
        parser.error(str(exc))
    if args.bits:
        shown, unit = res.value / _LN2, "bits"
    else:
        shown, unit = res.value, "nats"
    line = f"{res.name} value={shown:.17g} {unit} valid={res.valid}"
    if res.notes:
        line += f" notes={res.notes}"
    print(line)
    return 0


def _sweep_cell(name, lam, mu, peak):
    try:
        if name == "aminian":
            # a mean budget past the peak is equivalent to mu = peak
            res = bnd.bound_aminian(lam, min(mu, peak), peak)
        else:
            res = _eval_bound(name, lam, mu, peak)
    except ValueError:
        return ""
    return "" if math.isnan(res.value) else repr(res.value)


def _cmd_sweep(parser, args):
    preset = _PRESETS.get(args.preset, {})
    lam = args.lam if args.lam is not None else preset.get("lam")
    if lam is None:
        parser.error("--lambda is required without a preset")
    names = args.bounds.split(",") if args.bounds else list(preset.get("bounds", []))
    if not names:
        parser.error("--bounds is required without a preset")
    for name in names:
        if name not in _WHICH or name in ("best", "lapidoth"):
            parser.error(f"unknown or unsupported sweep bound {name!r}")
    mu_min = args.mu_min if args.mu_min is not None else 1e-3
    mu_max = args.mu_max if args.mu_max is not None else 1e3
    points = args.points if args.points is not None else 200
    log_spaced = args.log or args.preset is not None
    peak = args.peak if args.peak is not None else preset.get("peak")
    if "aminian" in names and peak is None:
        parser.error("a sweep including aminian requires --peak")
    if points < 2 or mu_min <= 0 or mu_max <= mu_min:
        parser.error("need points >= 2 and 0 < mu-min < mu-max")

    if log_spaced:
        ratio = mu_max / mu_min
        mus = [mu_min * ratio ** (i / (points - 1)) for i in range(points)]
    else:
        step = (mu_max - mu_min) / (points - 1)
        mus = [mu_min + i * step for i in range(points)]

    lines = ["mu," + ",".join(names)]
    for mu in mus:
        cells = [_sweep_cell(name, lam, mu, peak) for name in names]
        lines.append(repr(mu) + "," + ",".join(cells))
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write("\n".join(lines) + "\n")
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return 3
    return 0


def _cmd_verify(parser, args):
    if args.suite != "all" and args.suite not in SUITE_NAMES:
        parser.error(f"unknown suite {args.suite!r}; known: all, {', '.join(SUITE_NAMES)}")
    names = SUITE_NAMES if args.suite == "all" else (args.suite,)
    failed = False
    for name in names:
        report = run_suite(name, tol_scale=args.tol_scale)
        status = "pass" if report.passed else "FAIL"
        print(
            f"{report.suite}: {status} checks_run={report.checks_run} "
            f"failures={len(report.failures)} elapsed={report.elapsed:.2f}s"
        )
        for point, relation, observed in report.failures:
            pretty = " ".join(f"{k}={v!r}" for k, v in point)
            print(f"  at {pretty}: expected {relation}, observed {observed}")
        failed = failed or not report.passed
    return 1 if failed else 0


def _cmd_capacity(parser, args):
    if args.mu > args.peak:
        parser.error(f"--mu {args.mu} exceeds --peak {args.peak}")
    if not math.isfinite(args.peak):
        parser.error("--peak must be finite for the discretized solver")
    est = ba_capacity_constrained(
        args.lam, args.mu, args.peak, n_inputs=args.grid, tol=args.tol, max_iter=args.max_iter
    )
    print(f"value={est.value:.17g} nats")
    print(f"gap={est.gap:.17g}")
    print(f"iterations={est.iterations}")
    print(f"multiplier={est.multiplier:.17g}")
    print(f"achieved_mean={est.achieved_mean:.17g}")
    if not est.converged:
        print("warning: solver did not meet its tolerance; the value is still a lower bound")
    return 0


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "bound":
        return _cmd_bound(parser, args)
    if args.command == "sweep":
        return _cmd_sweep(parser, args)
    if args.command == "verify":
        return _cmd_verify(parser, args)
    if args.command == "capacity":
        return _cmd_capacity(parser, args)
    parser.error(f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
