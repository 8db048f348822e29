"""Capacity bounds for the discrete-time Poisson channel with dark current.

A channel with dark current lam maps an input intensity x to a photon
count distributed Poisson(lam + x).  This package evaluates analytic
upper bounds on the capacity under mean- and peak-power constraints
(all in nats per channel use), computes matching Blahut-Arimoto lower
bounds on a discretized channel, and ships runnable verification suites
for every inequality the bounds rest on.
"""

from .bounds import (
    BoundResult,
    DualityLine,
    LapidothParams,
    best_bound,
    bound_aminian,
    bound_brady_verdu,
    bound_cr19a,
    bound_lapidoth,
    bound_lapidoth_opt,
    bound_lapidoth_under,
    bound_main,
    bound_main_elementary,
    bound_wang_wornell,
    delta_lambda_elementary,
    duality_line,
    q_star,
)
from .distributions import (
    ChannelParams,
    DigammaDistribution,
    ModifiedDigammaDistribution,
    delta_lambda,
    digamma_normalizer,
    digamma_weight,
    modified_digamma,
    poisson_pmf,
    poisson_truncation,
)
from .divergence import (
    KlGapCurve,
    kl_brute_force,
    kl_gap_curve,
    kl_gap_digamma,
    kl_gap_modified,
    kl_poisson_digamma_exact,
    kl_poisson_modified_exact,
)
from .numeric_capacity import (
    CapacityEstimate,
    DiscreteChannel,
    ba_capacity,
    ba_capacity_constrained,
    discretize_channel,
)
from .special import (
    EULER_GAMMA,
    digamma_int,
    euler_gamma,
    exp_integral_e1,
    g_exponent,
    log_factorial,
    scaled_e1,
)
from .verify import SUITE_NAMES, SuiteReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "BoundResult",
    "CapacityEstimate",
    "ChannelParams",
    "DigammaDistribution",
    "DiscreteChannel",
    "DualityLine",
    "EULER_GAMMA",
    "KlGapCurve",
    "LapidothParams",
    "ModifiedDigammaDistribution",
    "SUITE_NAMES",
    "SuiteReport",
    "ba_capacity",
    "ba_capacity_constrained",
    "best_bound",
    "bound_aminian",
    "bound_brady_verdu",
    "bound_cr19a",
    "bound_lapidoth",
    "bound_lapidoth_opt",
    "bound_lapidoth_under",
    "bound_main",
    "bound_main_elementary",
    "bound_wang_wornell",
    "delta_lambda",
    "delta_lambda_elementary",
    "digamma_int",
    "digamma_normalizer",
    "digamma_weight",
    "discretize_channel",
    "duality_line",
    "euler_gamma",
    "exp_integral_e1",
    "g_exponent",
    "kl_brute_force",
    "kl_gap_curve",
    "kl_gap_digamma",
    "kl_gap_modified",
    "kl_poisson_digamma_exact",
    "kl_poisson_modified_exact",
    "log_factorial",
    "modified_digamma",
    "poisson_pmf",
    "poisson_truncation",
    "q_star",
    "run_suite",
    "scaled_e1",
]
