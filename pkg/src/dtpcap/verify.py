"""Named verification suites binding each inequality to a pass/fail check.

Every suite runs a fixed, published grid (no randomness): two runs give
identical reports.  Failures carry the full input point and both sides
of the violated relation so a tolerance dispute can be settled from the
report alone.  Tolerances scale uniformly with ``tol_scale``.
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import bounds as bnd
from .distributions import ChannelParams, delta_lambda, digamma_normalizer, modified_digamma
from .divergence import (
    kl_brute_force,
    kl_gap_digamma,
    kl_gap_modified,
    kl_poisson_digamma_exact,
    kl_poisson_modified_exact,
)
from .numeric_capacity import ba_capacity_constrained
from .special import (
    EULER_GAMMA,
    digamma_int,
    e1_continued_fraction,
    e1_power_series,
    scaled_e1,
)

__all__ = ["SuiteReport", "SUITE_NAMES", "run_suite"]


@dataclass
class SuiteReport:
    """Outcome of one verification suite; empty failures means it passed."""

    suite: str
    checks_run: int
    failures: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self):
        return not self.failures


class _Collector:
    def __init__(self, suite):
        self.report = SuiteReport(suite=suite, checks_run=0)

    def check(self, point, relation, ok, observed):
        self.report.checks_run += 1
        if not ok:
            self.report.failures.append((point, relation, observed))

    def done(self, started):
        self.report.elapsed = time.perf_counter() - started
        self.report.failures.sort(key=lambda f: str(f[0]))
        return self.report


def _log_grid(lo, hi, n):
    return [float(z) for z in np.geomspace(lo, hi, n)]


def _suite_identity(ts):
    """Zero dark current: the headline bound reduces algebraically to the two-term form."""
    started = time.perf_counter()
    col = _Collector("identity")
    for mu in _log_grid(1e-3, 1e3, 50):
        a = bnd.bound_main(0.0, mu).value
        b = bnd.bound_cr19a(mu).value
        dev = abs(a - b) / max(1.0, abs(b))
        col.check((("mu", mu),), "relative deviation <= 1e-10", dev <= 1e-10 * ts, (a, b, dev))
    return col.done(started)


_KL_Z = (0.05, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0)
_KL_Q = (0.1, 0.5, 0.9, 0.99)
_KL_LAM = (0.0, 0.1, 1.0)


def _suite_kl_oracle(ts):
    """Closed-form divergence against direct series summation on the 84-point grid."""
    started = time.perf_counter()
    col = _Collector("kl_oracle")
    for lam in _KL_LAM:
        delta = delta_lambda(lam)
        for q in _KL_Q:
            dist = modified_digamma(q, delta)
            for z in _KL_Z:
                exact = kl_poisson_modified_exact(z, q, delta)
                brute = kl_brute_force(z, dist.pmf)
                col.check(
                    (("z", z), ("q", q), ("lam", lam)),
                    "|exact - brute_force| <= 1e-7",
                    abs(exact - brute) <= 1e-7 * ts,
                    (exact, brute),
                )
    return col.done(started)


_GAP_LAMS = (0.0, 0.01, 0.1, 1.0, 5.0)


def _suite_gap(ts):
    """Nonnegativity, domination, and pinch point of the modified KL gap."""
    started = time.perf_counter()
    col = _Collector("gap")
    grid = _log_grid(1e-6, 100.0, 500)
    for lam in _GAP_LAMS:
        pinch = kl_gap_modified(lam, lam)
        col.check((("lam", lam),), "|gap(lam)| <= 1e-10", abs(pinch) <= 1e-10 * ts, (pinch,))
        for z in grid:
            g_mod = kl_gap_modified(z, lam)
            g_dig = kl_gap_digamma(z)
            if z >= lam:
                col.check(
                    (("z", z), ("lam", lam)),
                    "gap >= -1e-12 for z >= lam",
                    g_mod >= -1e-12 * ts,
                    (g_mod,),
                )
            col.check(
                (("z", z), ("lam", lam)),
                "modified gap <= digamma gap + 1e-12",
                g_mod <= g_dig + 1e-12 * ts,
                (g_mod, g_dig),
            )
            if lam > 0:
                col.check(
                    (("z", z), ("lam", lam)),
                    "domination strict by 1e-15 relative",
                    g_dig - g_mod > 1e-15 * g_dig,
                    (g_mod, g_dig),
                )
            if z >= 10.0:
                col.check(
                    (("z", z), ("lam", lam)),
                    "gap <= exp(-z/2) for z >= 10",
                    g_mod <= math.exp(-z / 2.0),
                    (g_mod, math.exp(-z / 2.0)),
                )
    return col.done(started)


_Y0_Q = (0.1, 0.3, 0.5, 0.7, 0.9, 0.99)


def _suite_y0(ts):
    """Normalizer bracket 1 <= 1/y0 <= 1 + (1/sqrt(2e))(1/sqrt(1-q) - 1), plus mass checks."""
    started = time.perf_counter()
    col = _Collector("y0")
    inv_sqrt_2e = 1.0 / math.sqrt(2.0 * math.e)
    deltas = [("one", 1.0), ("d(0.1)", delta_lambda(0.1)), ("d(1)", delta_lambda(1.0))]
    for q in _Y0_Q:
        dist = digamma_normalizer(q)
        inv_y0 = 1.0 / dist.y0
        upper = 1.0 + inv_sqrt_2e * (1.0 / math.sqrt(1.0 - q) - 1.0)
        col.check((("q", q),), "1 <= 1/y0", inv_y0 >= 1.0, (inv_y0,))
        col.check(
            (("q", q),),
            "1/y0 <= closed-form cap + 1e-10",
            inv_y0 <= upper + 1e-10 * ts,
            (inv_y0, upper),
        )
        for tag, delta in deltas:
            mod = modified_digamma(q, delta)
            y_cut = dist.truncation + 200
            mass = mod.alpha * delta + math.fsum(mod.pmf(y) for y in range(1, y_cut))
            col.check(
                (("q", q), ("delta", tag)),
                "total mass within 1e-11 of 1",
                abs(mass - 1.0) <= 1e-11 * ts,
                (mass,),
            )
        ident = modified_digamma(q, 1.0)
        col.check(
            (("q", q),),
            "alpha == y0 at delta = 1 (1e-14 relative)",
            abs(ident.alpha - dist.y0) <= 1e-14 * ts * dist.y0,
            (ident.alpha, dist.y0),
        )
    return col.done(started)


_DUALITY_LAMS = (0.1, 1.0)
_DUALITY_MUS = (0.1, 1.0, 10.0)


def _suite_duality(ts):
    """Divergence curve below its affine majorant for z >= lam, numeric normalizer."""
    started = time.perf_counter()
    col = _Collector("duality")
    for lam in _DUALITY_LAMS:
        delta = delta_lambda(lam)
        for mu in _DUALITY_MUS:
            q = bnd.q_star(lam, mu)
            line = bnd.duality_line(q, lam)
            for z in _log_grid(lam, 100.0, 500):
                kl = kl_poisson_modified_exact(z, q, delta)
                col.check(
                    (("z", z), ("q", q), ("lam", lam)),
                    "KL <= a z + b + 1e-10",
                    kl <= line.at(z) + 1e-10 * ts,
                    (kl, line.at(z)),
                )
            main = bnd.bound_main(lam, mu).value
            at_mean = line.at(mu + lam)
            col.check(
                (("lam", lam), ("mu", mu)),
                "headline bound >= numeric duality line - 1e-10",
                main >= at_mean - 1e-10 * ts,
                (main, at_mean),
            )
    return col.done(started)


def _suite_monotone_f(ts):
    """Monotone f(z) = z e^z E1(z) and the scaled-E1 inequalities behind it."""
    started = time.perf_counter()
    col = _Collector("monotone_f")
    grid = _log_grid(1e-6, 100.0, 500)
    prev = None
    for z in grid:
        s = scaled_e1(z)
        f = z * s
        col.check((("z", z),), "(1+z) e^z E1(z) >= 1 - 1e-12", (1.0 + z) * s >= 1.0 - 1e-12 * ts, ((1.0 + z) * s,))
        col.check(
            (("z", z),),
            "e^z E1(z) > ln(1 + 2/z)/2",
            s > 0.5 * math.log1p(2.0 / z),
            (s, 0.5 * math.log1p(2.0 / z)),
        )
        if prev is not None:
            col.check(
                (("z", z),),
                "f non-decreasing (1e-12 slack)",
                f >= prev - 1e-12 * ts,
                (prev, f),
            )
        prev = f
    for z in _log_grid(0.5, 2.0, 50):
        a = e1_power_series(z)
        b = e1_continued_fraction(z)
        col.check(
            (("z", z),),
            "series and continued fraction agree to 1e-12 relative",
            abs(a - b) <= 1e-12 * ts * abs(b),
            (a, b),
        )
    y = 1
    while y <= 1_000_000:
        lhs = digamma_int(y + 1) - digamma_int(y)
        col.check(
            (("y", y),),
            "psi(y+1) - psi(y) == 1/y within 1e-14",
            abs(lhs - 1.0 / y) <= 1e-14 * ts,
            (lhs, 1.0 / y),
        )
        y *= 2
    lams = [100.0 * k / 200 for k in range(201)]
    prev_delta = None
    for lam in lams:
        d = delta_lambda(lam)
        if prev_delta is not None:
            col.check(
                (("lam", lam),),
                "delta_lambda non-increasing (1e-12 slack)",
                d <= prev_delta + 1e-12 * ts,
                (prev_delta, d),
            )
        prev_delta = d
    return col.done(started)


_SANDWICH_POINTS = ((0.1, 1.0, 10.0), (1.0, 2.0, 20.0), (0.5, 0.5, 5.0), (0.1, 5.0, 50.0))


def _suite_sandwich(ts):
    """Numeric lower bound below every certified analytic upper bound."""
    started = time.perf_counter()
    col = _Collector("sandwich")
    for lam, mu, peak in _SANDWICH_POINTS:
        est = ba_capacity_constrained(lam, mu, peak, n_inputs=128)
        best = bnd.best_bound(ChannelParams(lam=lam, mu=mu, peak=peak))
        col.check(
            (("lam", lam), ("mu", mu), ("peak", peak)),
            "numeric value <= best certified bound + 1e-6",
            est.value <= best.value + 1e-6 * ts,
            (est.value, best.value),
        )
        am = bnd.bound_aminian(lam, mu, peak)
        col.check(
            (("lam", lam), ("mu", mu), ("peak", peak)),
            "numeric value <= covariance bound + 1e-6",
            est.value <= am.value + 1e-6 * ts,
            (est.value, am.value),
        )
        col.check(
            (("lam", lam), ("mu", mu), ("peak", peak)),
            "certificate gap nonnegative",
            est.gap >= 0.0,
            (est.gap,),
        )
    return col.done(started)


def _suite_ordering(ts):
    """Relaxation order, improvement claim, envelope agreement, and slope sanity."""
    started = time.perf_counter()
    col = _Collector("ordering")
    mus = _log_grid(1e-3, 1e3, 50)
    for lam in (0.0, 0.01, 0.1, 0.5, 1.0, 5.0):
        prev_main = None
        for mu in mus:
            main = bnd.bound_main(lam, mu).value
            elem = bnd.bound_main_elementary(lam, mu).value
            col.check(
                (("lam", lam), ("mu", mu)),
                "elementary >= main - 1e-12",
                elem >= main - 1e-12 * ts,
                (elem, main),
            )
            if prev_main is not None:
                col.check(
                    (("lam", lam), ("mu", mu)),
                    "main non-decreasing in mu (1e-12 slack)",
                    main >= prev_main - 1e-12 * ts,
                    (prev_main, main),
                )
            prev_main = main
    for mu in _log_grid(0.1, 1e3, 100):
        main = bnd.bound_main(0.1, mu).value
        other = bnd.bound_cr19a(mu).value
        col.check(
            (("mu", mu),),
            "main at lam=0.1 strictly below the zero-dark-current bound",
            main < other,
            (main, other),
        )
    for mu in _log_grid(0.1, 10.0, 50):
        main = bnd.bound_main(0.01, mu).value
        elem = bnd.bound_main_elementary(0.01, mu).value
        col.check(
            (("mu", mu),),
            "elementary within 0.02 nats of main at lam=0.01",
            elem - main <= 0.02 * ts,
            (elem, main),
        )
    for lam in _log_grid(1e-3, 10.0, 100):
        d = delta_lambda(lam)
        d_elem = bnd.delta_lambda_elementary(lam)
        col.check(
            (("lam", lam),),
            "delta <= elementary envelope + 1e-12",
            d <= d_elem + 1e-12 * ts,
            (d, d_elem),
        )
    # the second envelope expression is the sharper one at small lam
    lam = 0.1
    first = math.exp(-0.5 * lam * math.log1p(2.0 / lam))
    second = math.exp(lam * math.exp(lam) * math.log1p(-math.exp(-lam * math.exp(EULER_GAMMA))))
    col.check((("lam", lam),), "small-lam branch wins the envelope min", second < first, (first, second))
    ratio = bnd.bound_main(0.1, 1e6).value / math.log(1e6)
    col.check(
        (("lam", 0.1), ("mu", 1e6)),
        "bound/ln(mu) within [0.5, 0.75]",
        0.5 <= ratio <= 0.75,
        (ratio,),
    )
    return col.done(started)


_SUITES = {
    "identity": _suite_identity,
    "kl_oracle": _suite_kl_oracle,
    "gap": _suite_gap,
    "y0": _suite_y0,
    "duality": _suite_duality,
    "monotone_f": _suite_monotone_f,
    "sandwich": _suite_sandwich,
    "ordering": _suite_ordering,
}

SUITE_NAMES = tuple(_SUITES)


def run_suite(name, tol_scale=1.0):
    """Run one named suite and return its report.

    Raises ValueError for an unknown suite name; ``tol_scale`` multiplies
    every tolerance uniformly (values below 1 tighten the checks).
    """
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; known: {', '.join(SUITE_NAMES)}")
    if not tol_scale > 0:
        raise ValueError(f"tol_scale must be positive, got {tol_scale!r}")
    return _SUITES[name](tol_scale)
