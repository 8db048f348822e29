"""Independent reference computations used by the test modules.

Everything here deliberately avoids the code paths under test: the
exponential integral comes from adaptive quadrature of its defining
integral, divergences from direct series summation, and the two-input
capacity from an exhaustive scan over the prior.
"""

import math

import numpy as np
from scipy import integrate


def e1_quadrature(z):
    """E1(z) by adaptive quadrature of the defining integral on [1, inf)."""
    val, _ = integrate.quad(
        lambda t: math.exp(-z * t) / t, 1.0, math.inf, epsabs=1e-300, epsrel=1e-13, limit=500
    )
    return val


def kl_poisson_poisson(z, w):
    """Closed form D(Poi_z || Poi_w) = z ln(z/w) + w - z."""
    return z * math.log(z / w) + w - z


def poisson_tail(mean, y_max):
    """Tail mass P[Y > y_max] by forward summation (no 1 - cumsum cancellation)."""
    y = y_max + 1
    pmf = math.exp(-mean + y * math.log(mean) - math.lgamma(y + 1.0))
    terms = []
    while pmf > 0.0 and (not terms or pmf > 1e-18 * terms[0]):
        terms.append(pmf)
        y += 1
        pmf *= mean / y
    return math.fsum(terms)


def poisson_min_cutoff(mean, eps):
    """Smallest y_max with exact Poisson tail below eps, by forward summation."""
    y = 0
    while poisson_tail(mean, y) >= eps:
        y += 1
    return y


def two_input_capacity_scan(row0, row1, step=1e-6):
    """Exhaustive scan of I(p) for a binary-input channel, step 1e-6 in p."""
    rows = np.vstack([row0, row1])
    with np.errstate(divide="ignore", invalid="ignore"):
        row_ent = np.where(rows > 0, rows * np.log(rows), 0.0).sum(axis=1)
    best = 0.0
    chunk = 100_000
    n_total = int(round(1.0 / step)) + 1
    for start in range(0, n_total, chunk):
        ps = np.arange(start, min(start + chunk, n_total)) * step
        priors = np.column_stack([ps, 1.0 - ps])
        outs = priors @ rows
        log_outs = np.log(np.maximum(outs, 1e-300))
        d = row_ent[None, :] - log_outs @ rows.T
        vals = (priors * d).sum(axis=1)
        best = max(best, float(vals.max()))
    return best
