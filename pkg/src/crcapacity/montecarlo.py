"""Monte Carlo estimators for the ratio laws and both capacity functionals.

These act as the independent cross-check of every closed form in the
library and as the only route for scenarios without one (Rician
interference with several primaries).  All estimators consume an explicit
seed and are bit-reproducible for a fixed (seed, samples) pair; the
generator is numpy's PCG64 behind ``default_rng``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .capacity import CapacityQuery, Constraint, effective_alpha, solve_gamma0
from .distributions import RatioScenario, sample_power_gain

_CHUNK = 1_000_000
_MIN_SAMPLES = 1_000


@dataclass(frozen=True)
class McEstimate:
    value: float
    std_error: float
    samples: int
    seed: int


def sample_ratio(scenario: RatioScenario, rng: np.random.Generator, size: int):
    """Draw ``size`` realizations of g1 / max_i g0i for the scenario."""
    if scenario.is_awgn:
        return np.ones(size)
    g1 = sample_power_gain(scenario.desired, rng, size)
    n = scenario.n_primaries
    if n == 1:
        g0 = sample_power_gain(scenario.interference, rng, size)
    else:
        g0 = sample_power_gain(scenario.interference, rng, (n, size)).max(axis=0)
    return g1 / g0


def _check_samples(samples: int) -> int:
    if int(samples) != samples or samples < _MIN_SAMPLES:
        raise ValueError(f"samples must be an integer >= {_MIN_SAMPLES}, got {samples!r}")
    return int(samples)


def _chunks(total: int):
    done = 0
    while done < total:
        step = min(_CHUNK, total - done)
        done += step
        yield step


def mc_ratio_cdf(scenario: RatioScenario, x: float, samples: int, seed: int) -> McEstimate:
    """Empirical P(ratio < x) with its binomial standard error."""
    if not (math.isfinite(x) and x >= 0.0):
        raise ValueError(f"x must be finite and >= 0, got {x!r}")
    samples = _check_samples(samples)
    rng = np.random.default_rng(seed)
    hits = 0
    for step in _chunks(samples):
        hits += int(np.count_nonzero(sample_ratio(scenario, rng, step) < x))
    p = hits / samples
    return McEstimate(
        value=p,
        std_error=math.sqrt(p * (1.0 - p) / samples),
        samples=samples,
        seed=seed,
    )


def mc_capacity(query: CapacityQuery, samples: int, seed: int) -> McEstimate:
    """Monte Carlo capacity estimate for either constraint.

    Peak: mean of log2(1 + alpha_eff * ratio).  Average: the threshold
    power policy is applied sample by sample, i.e. the achieved rate is
    log2(max(1, gamma0 * ratio)) with gamma0 from :func:`solve_gamma0`.
    """
    samples = _check_samples(samples)
    a_eff = effective_alpha(query)
    if query.scenario.is_awgn:
        # the ratio is identically 1, so the estimator is exact with zero
        # sampling variance for either constraint
        return McEstimate(math.log2(1.0 + a_eff), 0.0, samples, seed)
    if query.constraint is Constraint.AVERAGE_RECEIVED_POWER:
        gamma0 = solve_gamma0(query.scenario, a_eff)

        def rates(z):
            return np.log2(np.maximum(1.0, gamma0 * z))
    else:

        def rates(z):
            return np.log2(1.0 + a_eff * z)

    rng = np.random.default_rng(seed)
    total = 0.0
    total_sq = 0.0
    for step in _chunks(samples):
        r = rates(sample_ratio(query.scenario, rng, step))
        total += float(r.sum())
        total_sq += float((r * r).sum())
    mean = total / samples
    var = max(total_sq - samples * mean * mean, 0.0) / (samples - 1)
    return McEstimate(
        value=mean,
        std_error=math.sqrt(var / samples),
        samples=samples,
        seed=seed,
    )
