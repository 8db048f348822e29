"""Poisson, digamma, and modified-digamma output distributions.

The digamma family puts weight q^y e^(g(y)-y)/y! on each count y, with
g(y) = y*psi(y); the modified family replaces the weight at y = 0 by a
value delta in (0, 1] and renormalizes.  Normalizers are computed by
direct summation with a certified geometric tail bound.  Constructed
distributions are immutable and safely shareable.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

from .special import EULER_GAMMA, digamma_int, g_exponent, log_factorial, scaled_e1

__all__ = [
    "ChannelParams",
    "DigammaDistribution",
    "ModifiedDigammaDistribution",
    "poisson_pmf",
    "poisson_truncation",
    "digamma_weight",
    "digamma_normalizer",
    "delta_lambda",
    "modified_digamma",
]

# Stop summing once the certified tail is this small relative to the sum.
_NORMALIZER_REL_TAIL = 1e-13
# Terms needed grow like 40/(1-q); the cap only limits verification scope
# for q astronomically close to 1.
_NORMALIZER_TERM_CAP = 10_000_000


@dataclass(frozen=True)
class ChannelParams:
    """A channel instance: dark current, mean-power budget, optional peak power."""

    lam: float
    mu: float
    peak: float = math.inf

    def __post_init__(self):
        if not (self.lam >= 0 and math.isfinite(self.lam)):
            raise ValueError(f"dark current must be a finite nonnegative real, got {self.lam!r}")
        if not (self.mu >= 0 and math.isfinite(self.mu)):
            raise ValueError(f"mean power must be a finite nonnegative real, got {self.mu!r}")
        if not self.peak > 0:
            raise ValueError(f"peak power must be positive (may be inf), got {self.peak!r}")
        if math.isfinite(self.peak) and self.mu > self.peak:
            raise ValueError(f"mean power {self.mu} exceeds peak power {self.peak}")


@dataclass(frozen=True)
class DigammaDistribution:
    """Digamma distribution with parameter q and normalizing factor y0.

    ``truncation`` is the number of explicitly summed weights and
    ``tail_bound`` a certified upper bound on the omitted weight mass
    (at most 1e-13 of the computed 1/y0).
    """

    q: float
    y0: float
    truncation: int
    tail_bound: float

    def pmf(self, y):
        return self.y0 * digamma_weight(self.q, y)

    def log_pmf(self, y):
        return math.log(self.y0) + _log_weight(self.q, y)


@dataclass(frozen=True)
class ModifiedDigammaDistribution:
    """Digamma distribution with its y=0 weight replaced by delta, renormalized.

    The new normalizer alpha satisfies 1/alpha = 1/y0 + delta - 1 (the
    unnormalized weight at zero is exactly 1).
    """

    base: DigammaDistribution
    delta: float
    alpha: float

    def pmf(self, y):
        if y == 0:
            return self.alpha * self.delta
        return self.alpha * digamma_weight(self.base.q, y)

    def log_pmf(self, y):
        if y == 0:
            return math.log(self.alpha) + math.log(self.delta)
        return math.log(self.alpha) + _log_weight(self.base.q, y)


def poisson_pmf(mean, y):
    """P[Poisson(mean) = y], evaluated in the log domain."""
    if not (mean >= 0 and math.isfinite(mean)):
        raise ValueError(f"Poisson mean must be a finite nonnegative real, got {mean!r}")
    if not isinstance(y, int) or y < 0:
        raise ValueError(f"count must be an integer y >= 0, got {y!r}")
    if mean == 0.0:
        return 1.0 if y == 0 else 0.0
    return math.exp(-mean + y * math.log(mean) - log_factorial(y))


def poisson_truncation(mean, eps):
    """Smallest y_max whose Poisson tail P[Y > y_max] is provably below eps.

    Uses the Chernoff bound P[Y >= y] <= exp(-mean + y - y ln(y/mean))
    valid for y > mean, so the returned cutoff is conservative.
    """
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must lie in (0, 1), got {eps!r}")
    if not (mean >= 0 and math.isfinite(mean)):
        raise ValueError(f"Poisson mean must be a finite nonnegative real, got {mean!r}")
    if mean == 0.0:
        return 0

    def log_tail(y):
        # Chernoff exponent for P[Y >= y], y > mean.
        return -mean + y - y * math.log(y / mean)

    target = math.log(eps)
    lo = int(math.floor(mean)) + 1
    hi = lo + 1
    while log_tail(hi + 1) >= target:
        hi *= 2
    # smallest y in (lo, hi] with log_tail(y+1) < target; exponent is
    # decreasing in y beyond the mean, so bisection applies
    while lo < hi:
        mid = (lo + hi) // 2
        if log_tail(mid + 1) < target:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _check_q(q):
    if not (0.0 < q < 1.0):
        raise ValueError(f"q must lie in the open interval (0, 1), got {q!r}")


def _log_weight(q, y):
    # y ln q + g(y) - y - ln y!; zero at y = 0 by construction.
    if y == 0:
        return 0.0
    return y * math.log(q) + g_exponent(y) - y - log_factorial(y)


def digamma_weight(q, y):
    """Unnormalized digamma weight q^y e^(g(y)-y)/y!; equals 1 at y = 0."""
    _check_q(q)
    if not isinstance(y, int) or y < 0:
        raise ValueError(f"count must be an integer y >= 0, got {y!r}")
    return math.exp(_log_weight(q, y))


@lru_cache(maxsize=256)
def digamma_normalizer(q):
    """Sum the digamma weights and return the distribution with its normalizer.

    The term ratio weight(y+1)/weight(y) equals q e^(psi(y+1))/(y+1),
    which increases toward q from below, so the remaining tail after any
    term is below term * q/(1-q).  Summation stops once that certified
    bound drops under 1e-13 of the partial sum.

    Raises RuntimeError if q is so close to 1 that the term cap (1e7)
    is hit before the tail certificate is met.
    """
    _check_q(q)
    total = 1.0  # y = 0 weight
    term = 1.0
    geometric = q / (1.0 - q)
    y = 0
    while True:
        y += 1
        if y == 1:
            # step 0 -> 1 sits outside the psi-recurrence pattern
            ratio = q * math.exp(-EULER_GAMMA - 1.0)
        else:
            ratio = q * math.exp(digamma_int(y)) / y
        term *= ratio
        total += term
        tail_bound = term * geometric
        if tail_bound < _NORMALIZER_REL_TAIL * total:
            break
        if y >= _NORMALIZER_TERM_CAP:
            raise RuntimeError(
                f"digamma normalizer needs more than {_NORMALIZER_TERM_CAP} terms at q={q!r}"
            )
    return DigammaDistribution(q=q, y0=1.0 / total, truncation=y + 1, tail_bound=tail_bound)


def delta_lambda(lam):
    """Zero-mass replacement exp(-lam e^lam E1(lam)); exactly 1 at lam = 0."""
    if not (lam >= 0 and math.isfinite(lam)):
        raise ValueError(f"dark current must be a finite nonnegative real, got {lam!r}")
    if lam == 0.0:
        return 1.0
    return math.exp(-lam * scaled_e1(lam))


def modified_digamma(q, delta):
    """Construct the modified digamma distribution for (q, delta)."""
    _check_q(q)
    if not (0.0 < delta <= 1.0):
        raise ValueError(f"delta must lie in (0, 1], got {delta!r}")
    base = digamma_normalizer(q)
    inv_alpha = 1.0 / base.y0 + delta - 1.0
    return ModifiedDigammaDistribution(base=base, delta=delta, alpha=1.0 / inv_alpha)
