"""Analytic upper bounds on the capacity of the Poisson channel with dark current.

The headline bound combines the modified digamma output distribution with
an affine majorant of the divergence D(Poi_z || Y): whenever
D(Poi_z || Y) <= a z + b for all z >= lam, the constrained capacity obeys
C(lam, mu) <= a (mu + lam) + b.  The remaining entries implement earlier
published bounds used for comparison sweeps.  All values are in nats.
"""

import math
from dataclasses import dataclass

from .distributions import ChannelParams, delta_lambda, modified_digamma
from .special import EULER_GAMMA

__all__ = [
    "DualityLine",
    "BoundResult",
    "LapidothParams",
    "q_star",
    "bound_main",
    "bound_main_elementary",
    "delta_lambda_elementary",
    "bound_cr19a",
    "bound_brady_verdu",
    "bound_lapidoth",
    "bound_lapidoth_opt",
    "bound_lapidoth_under",
    "bound_wang_wornell",
    "bound_aminian",
    "duality_line",
    "best_bound",
]

# e^(1+gamma) and 1/sqrt(2e); both appear throughout the closed forms.
_EXP_1PG = math.exp(1.0 + EULER_GAMMA)
_INV_SQRT_2E = 1.0 / math.sqrt(2.0 * math.e)

_BV_NOTE = "asymptotic only: certified above an unspecified mean-power threshold, additive margin dropped"
_LAPIDOTH_NOTE = "free parameters only screened by eta - sqrt(eta) > lam; the source threshold constant is unspecified"


@dataclass(frozen=True)
class DualityLine:
    """Affine majorant a*z + b of the divergence curve, slope in nats per unit intensity."""

    slope_a: float
    intercept_b: float

    def __post_init__(self):
        if not (self.slope_a >= 0 and math.isfinite(self.slope_a) and math.isfinite(self.intercept_b)):
            raise ValueError(f"need finite slope_a >= 0 and finite intercept_b, got {self!r}")

    def at(self, z):
        return self.slope_a * z + self.intercept_b


@dataclass(frozen=True)
class BoundResult:
    """A named bound value in nats.

    ``valid`` is False when the bound's certification conditions are not
    met at these parameters; the value may still be finite (and worth
    plotting) in that case.  A NaN value marks points where the defining
    expression itself is undefined.
    """

    name: str
    value: float
    valid: bool = True
    notes: str = ""

    def defined(self):
        return not math.isnan(self.value)


@dataclass(frozen=True)
class LapidothParams:
    """Free parameters of the small-mean-power comparison bound."""

    eta: float
    p: float


def _check_nonneg(x, name):
    if not (x >= 0 and math.isfinite(x)):
        raise ValueError(f"{name} must be a finite nonnegative real, got {x!r}")


def _safe_exp(x):
    # saturate instead of raising: a bound that large is simply +inf
    return math.inf if x > 709.0 else math.exp(x)


def _q_denominator(s):
    # 1 + e^(1+g) s + (2 - e^(1+g)) s^2/(1+s); exceeds 1 for every s > 0
    return 1.0 + _EXP_1PG * s + (2.0 - _EXP_1PG) * s * s / (1.0 + s)


def q_star(lam, mu):
    """Geometric parameter choice driving the headline bound; 0 iff mu+lam = 0."""
    _check_nonneg(lam, "lam")
    _check_nonneg(mu, "mu")
    s = lam + mu
    if s == 0.0:
        return 0.0
    return 1.0 - 1.0 / _q_denominator(s)


def _main_value(lam, mu, delta):
    s = lam + mu
    if s == 0.0:
        # zero-power limit: the first log term is ln 1 and s ln q -> 0
        return 0.0
    d = _q_denominator(s)
    first = math.log(delta + _INV_SQRT_2E * (math.sqrt(d) - 1.0))
    second = -s * math.log1p(-1.0 / d)
    return first + second


def bound_main(lam, mu):
    """Headline capacity upper bound from the modified digamma distribution.

    ln(delta_lam + (1/sqrt(2e)) (1/sqrt(1-q*) - 1)) - (mu+lam) ln q*
    with q* = q_star(lam, mu); the value 0 at mu = lam = 0 is the limit.
    """
    _check_nonneg(lam, "lam")
    _check_nonneg(mu, "mu")
    return BoundResult(name="main", value=_main_value(lam, mu, delta_lambda(lam)))


def delta_lambda_elementary(lam):
    """Closed-form upper bound min((1+2/lam)^(-lam/2), (1-e^(-lam e^g))^(lam e^lam)).

    Equals 1 at lam = 0 and never falls below delta_lambda(lam); the
    second expression is the sharper one for small lam (below ~1/2).
    """
    _check_nonneg(lam, "lam")
    if lam == 0.0:
        return 1.0
    first = math.exp(-0.5 * lam * math.log1p(2.0 / lam))
    t = math.log1p(-math.exp(-lam * math.exp(EULER_GAMMA)))
    # t underflows to 0 long before exp(lam) can overflow
    second = 1.0 if t == 0.0 else math.exp(lam * math.exp(lam) * t)
    return min(first, second)


def bound_main_elementary(lam, mu):
    """Headline bound with the zero-mass value replaced by its elementary envelope."""
    _check_nonneg(lam, "lam")
    _check_nonneg(mu, "mu")
    return BoundResult(name="elementary", value=_main_value(lam, mu, delta_lambda_elementary(lam)))


def bound_cr19a(mu):
    """Two-term dark-current-free capacity bound; coded verbatim from its display.

    mu ln((1+(1+e^(1+g))mu+2mu^2)/(e^(1+g)mu+2mu^2))
      + ln(1 + (1/sqrt(2e)) (sqrt((1+(1+e^(1+g))mu+2mu^2)/(1+mu)) - 1))

    The expression has mu in denominators, so mu = 0 is reported as the
    (zero) limit with valid=False.
    """
    _check_nonneg(mu, "mu")
    if mu == 0.0:
        return BoundResult(name="cr19a", value=0.0, valid=False, notes="limit value at zero mean power")
    n = 1.0 + (1.0 + _EXP_1PG) * mu + 2.0 * mu * mu
    t1 = mu * math.log(n / (_EXP_1PG * mu + 2.0 * mu * mu))
    t2 = math.log1p(_INV_SQRT_2E * (math.sqrt(n / (1.0 + mu)) - 1.0))
    return BoundResult(name="cr19a", value=t1 + t2)


def bound_brady_verdu(lam, mu):
    """Large-power asymptotic bound evaluated with its additive margin set to zero.

    ln(1+s) + s ln(1+1/s) - ln(2 pi s)/2 + ln(3/2) at s = mu + lam.  The
    certification threshold on the mean power is an unspecified constant,
    so the result always carries valid=False; the value itself is defined
    for every s > 0.
    """
    _check_nonneg(lam, "lam")
    _check_nonneg(mu, "mu")
    s = lam + mu
    if s == 0.0:
        return BoundResult(name="bv", value=math.nan, valid=False, notes="undefined at zero mean: log of zero")
    value = math.log1p(s) + s * math.log1p(1.0 / s) - 0.5 * math.log(2.0 * math.pi * s) + math.log(1.5)
    return BoundResult(name="bv", value=value, valid=False, notes=_BV_NOTE)


def bound_lapidoth(lam, mu, params):
    """Three-part explicit bound with free parameters eta and p.

    Requires lam > 0, p in (0, 1), and eta - sqrt(eta) > lam; the three
    summands are coded term by term from their published display.
    """
    if not lam > 0:
        raise ValueError(f"this bound needs lam > 0, got {lam!r}")
    _check_nonneg(mu, "mu")
    eta, p = params.eta, params.p
    if not (0.0 < p < 1.0):
        raise ValueError(f"parameter p must lie in (0, 1), got {p!r}")
    if not eta > 0:
        raise ValueError(f"parameter eta must be positive, got {eta!r}")
    slack = eta - math.sqrt(eta) - lam
    if not slack > 0:
        raise ValueError(
            f"infeasible parameters: need eta - sqrt(eta) - lam > 0, got {eta} - {math.sqrt(eta)} - {lam} = {slack}"
        )
    ln_lam = math.log(lam)
    ln_eta = math.log(eta)
    f1 = (
        eta * ln_eta
        + 1.0 / (12.0 * eta)
        + 0.5 * math.log(2.0 * math.pi * eta)
        + lam
        - eta * ln_lam
        - math.log1p(-p)
    ) * _safe_exp(eta + eta * ln_lam - eta * ln_eta + mu / slack)
    f2 = max(
        0.0,
        (1.0 + math.log(1.0 / p) + ln_lam)
        * (
            mu
            + lam * mu / slack
            + lam * _safe_exp(eta - 1.0 - lam + (eta - 1.0) * ln_lam - (eta - 1.0) * math.log(eta - 1.0))
        ),
    )
    f3 = mu * (1.0 + lam / (eta - lam)) * max(0.0, math.log(1.0 / lam)) + mu * eta * math.log(eta / lam) / (
        eta - lam
    )
    return BoundResult(
        name="lapidoth",
        value=f1 + f2 + f3,
        notes=f"eta={eta:.12g} p={p:.12g}; {_LAPIDOTH_NOTE}",
    )


def _eta_floor(lam):
    # boundary of eta - sqrt(eta) = lam
    t = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * lam))
    return t * t


def _golden_min(fun, lo, hi, tol):
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = fun(c), fun(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = fun(d)
    return (a + b) / 2.0


def bound_lapidoth_opt(lam, mu):
    """Free parameters of bound_lapidoth minimized by grid search plus refinement."""
    if not lam > 0:
        raise ValueError(f"this bound needs lam > 0, got {lam!r}")
    _check_nonneg(mu, "mu")
    floor = _eta_floor(lam)
    eta_lo = floor * (1.0 + 1e-6)
    eta_hi = max(1000.0, 10.0 * floor)
    n_eta = 60
    etas = [eta_lo * (eta_hi / eta_lo) ** (i / (n_eta - 1)) for i in range(n_eta)]
    ps = [0.05 * k for k in range(1, 20)]

    def value(eta, p):
        return bound_lapidoth(lam, mu, LapidothParams(eta=eta, p=p)).value

    best = math.inf
    best_eta, best_p = etas[0], ps[0]
    for eta in etas:
        for p in ps:
            v = value(eta, p)
            if v < best:
                best, best_eta, best_p = v, eta, p

    # coordinate descent: alternate 1-D line searches until stationary
    for _ in range(100):
        new_eta = _golden_min(lambda e: value(e, best_p), eta_lo, eta_hi, 1e-9 * eta_hi)
        new_p = _golden_min(lambda p: value(new_eta, p), 1e-6, 1.0 - 1e-6, 1e-12)
        v = value(new_eta, new_p)
        if v < best - 1e-14:
            best, best_eta, best_p = v, new_eta, new_p
        else:
            break
    return BoundResult(
        name="lapidoth-opt",
        value=best,
        notes=f"eta={best_eta:.12g} p={best_p:.12g}; {_LAPIDOTH_NOTE}",
    )


def bound_lapidoth_under(lam, mu):
    """Conservative underestimate mu (1 + max(0, 1+ln lam) + max(0, ln(1/lam))).

    A floor under bound_lapidoth for every feasible parameter choice,
    used as its stand-in on comparison plots; not itself a capacity bound.
    """
    if not lam > 0:
        raise ValueError(f"this bound needs lam > 0, got {lam!r}")
    _check_nonneg(mu, "mu")
    value = mu * (1.0 + max(0.0, 1.0 + math.log(lam)) + max(0.0, math.log(1.0 / lam)))
    return BoundResult(name="lapidoth-under", value=value, notes="underestimate of the full expression")


def _ww_sup(lam, mu):
    # maximize phi(x) = ((1-e^-x)/x) ln((x+lam)/((mu+lam) ln(1/mu))) over x >= 0
    denom = (mu + lam) * math.log(1.0 / mu)

    def phi(x):
        return (-math.expm1(-x) / x) * math.log((x + lam) / denom)

    x_lo = 1e-9
    # grow the bracket until phi has decreased over three straight doublings
    x_hi = 1.0
    drops = 0
    prev = phi(x_hi)
    while drops < 3:
        x_hi *= 2.0
        cur = phi(x_hi)
        drops = drops + 1 if cur < prev else 0
        prev = cur
        if x_hi > 1e12:
            break
    x_best = _golden_min(lambda x: -phi(x), x_lo, x_hi, 1e-10)
    candidates = [phi(x_best), phi(x_lo), phi(x_hi)]
    if lam > 0:
        candidates.append(math.log(lam / denom))  # x -> 0 limit
    return max(candidates)


def bound_wang_wornell(lam, mu, include_sup=True):
    """Small-power bound; defined only for mu in (0, 1/e) with mu + lam < 1.

    With include_sup the always-positive mu e^(-lam) sup_x phi(x) term is
    added (the certified form); without it the remaining sum matches how
    the bound is usually drawn on comparison plots.  Out-of-domain points
    return valid=False with a NaN value rather than raising.
    """
    _check_nonneg(lam, "lam")
    _check_nonneg(mu, "mu")
    name = "ww" if include_sup else "ww-nosup"
    problems = []
    if not 0.0 < mu < 1.0 / math.e:
        problems.append("mu outside (0, 1/e)")
    if not mu + lam < 1.0:
        problems.append("mu + lam not below 1")
    if problems:
        return BoundResult(name=name, value=math.nan, valid=False, notes="; ".join(problems))
    big_l = math.log(1.0 / mu)  # > 1 inside the domain
    value = (
        mu * math.log(big_l)
        + mu
        - math.log1p(-(mu + lam))
        - lam
        + 0.5 * lam * lam * math.log(big_l)
        - (mu + lam) * math.log1p(-1.0 / big_l)
    )
    if include_sup:
        value += mu * math.exp(-lam) * _ww_sup(lam, mu)
    return BoundResult(name=name, value=value)


def bound_aminian(lam, mu, peak):
    """Covariance bound for a finite peak: needs lam > 0, else it is vacuous.

    (mu/A)(A-mu) ln(A/lam+1) for mu < A/2 and (A/4) ln(A/lam+1) otherwise.
    """
    _check_nonneg(mu, "mu")
    if lam == 0.0 or not math.isfinite(peak):
        return BoundResult(
            name="aminian",
            value=math.nan,
            valid=False,
            notes="vacuous: grows without bound as the peak constraint is lifted or lam -> 0",
        )
    _check_nonneg(lam, "lam")
    if not peak > 0:
        raise ValueError(f"peak must be positive, got {peak!r}")
    if mu > peak:
        raise ValueError(f"mean power {mu} exceeds peak power {peak}")
    ln_term = math.log(peak / lam + 1.0)
    if mu < peak / 2.0:
        value = (mu / peak) * (peak - mu) * ln_term
    else:
        value = (peak / 4.0) * ln_term
    return BoundResult(name="aminian", value=value)


def duality_line(q, lam):
    """Affine divergence majorant (a, b) = (-ln q, -ln alpha) at delta = delta_lambda(lam).

    Uses the numerically computed normalizer; the headline bound replaces
    -ln alpha by its closed-form upper estimate, so it sits at or above
    this line evaluated at z = mu + lam.
    """
    dist = modified_digamma(q, delta_lambda(lam))
    return DualityLine(slope_a=-math.log(q), intercept_b=-math.log(dist.alpha))


def best_bound(params: ChannelParams):
    """Minimum over all certified bounds that apply at these parameters.

    Candidates outside their certification domain (and the asymptotic
    large-power bound, whose threshold constant is unknown) are listed in
    the notes but never win.
    """
    lam, mu, peak = params.lam, params.mu, params.peak
    candidates = [bound_main(lam, mu), bound_main_elementary(lam, mu), bound_cr19a(mu)]
    if lam > 0:
        candidates.append(bound_lapidoth_opt(lam, mu))
    candidates.append(bound_wang_wornell(lam, mu, include_sup=True))
    if lam > 0 and math.isfinite(peak):
        candidates.append(bound_aminian(lam, mu, peak))
    candidates.append(bound_brady_verdu(lam, mu))

    winner = None
    for cand in candidates:
        if cand.valid and cand.defined() and (winner is None or cand.value < winner.value):
            winner = cand
    summary = " ".join(
        f"{c.name}={c.value:.12g}{'' if c.valid else '*'}" for c in candidates
    )
    return BoundResult(
        name="best",
        value=winner.value,
        valid=True,
        notes=f"winner={winner.name}; candidates: {summary} (* = not certified here)",
    )
