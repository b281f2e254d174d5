"""Ergodic capacity of the secondary link under average and peak
received-power (interference) constraints.

Everything is normalized to unit bandwidth and unit noise power, so the
only free parameters are the interference-to-noise ratio alpha = Q/(N0 B),
the fading scenario, and the relative link power c = E{g1}/E{g0}.
Capacities are in bits/s/Hz.
"""

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .distributions import (
    NoClosedFormError,
    RatioScenario,
    has_closed_form,
    ratio_law,
)
from .numerics import (
    DEFAULT_QUADRATURE,
    QuadratureSpec,
    find_root_increasing,
    integrate_finite,
    integrate_semi_infinite,
)


class Constraint(enum.Enum):
    AVERAGE_RECEIVED_POWER = "avg"
    PEAK_RECEIVED_POWER = "peak"


@dataclass(frozen=True)
class CapacityQuery:
    constraint: Constraint
    alpha: float
    scenario: RatioScenario
    c: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > 0.0):
            raise ValueError(f"alpha must be finite and > 0, got {self.alpha!r}")
        if not (math.isfinite(self.c) and self.c > 0.0):
            raise ValueError(f"c must be finite and > 0, got {self.c!r}")
        if (self.constraint is Constraint.AVERAGE_RECEIVED_POWER
                and self.scenario.n_primaries > 1):
            raise ValueError(
                "the average received-power constraint is only supported for a "
                "single primary receiver"
            )


@dataclass(frozen=True)
class CapacityResult:
    capacity: float
    gamma0: Optional[float] = None
    quadrature_error: float = 0.0
    method: str = "closed-form-integrand"
    std_error: Optional[float] = None


def effective_alpha(query: CapacityQuery) -> float:
    """Constraint level after folding in the relative link power: c * alpha.

    Unequal link powers rescale the interference budget seen by the
    equal-power ratio laws, so every computation downstream runs on the
    equal-power laws at this substituted level.
    """
    return query.c * query.alpha


def awgn_capacity(alpha: float) -> float:
    """Reference capacity log2(1 + alpha) when both gains are fixed at 1."""
    return math.log2(1.0 + alpha)


def solve_gamma0(
    scenario: RatioScenario,
    alpha_eff: float,
    tol: float = 1e-9,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Power-allocation threshold gamma0 of the average-constraint problem.

    gamma0 solves  int_0^gamma0 F(x) dx = alpha_eff  where F is the CDF of
    the inverse ratio g0/g1, obtained here by evaluating the ratio law of
    the swapped scenario (desired and interference exchanged).  The left
    side is nondecreasing and unbounded in gamma0, so the bracketed
    bisection always converges.
    """
    if not (math.isfinite(alpha_eff) and alpha_eff > 0.0):
        raise ValueError(f"alpha_eff must be finite and > 0, got {alpha_eff!r}")
    if scenario.is_awgn:
        # the inverse ratio is a point mass at 1: int_0^g F = (g - 1)^+
        return 1.0 + alpha_eff
    if scenario.n_primaries != 1:
        raise ValueError("gamma0 is only defined for a single primary receiver")
    inverse_cdf = ratio_law(scenario.swapped()).cdf

    def integrated_cdf(g: float) -> float:
        if g <= 0.0:
            return 0.0
        return integrate_finite(inverse_cdf, 0.0, g, spec)[0]

    return find_root_increasing(integrated_cdf, alpha_eff, tol)


def capacity_average(
    query: CapacityQuery,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> CapacityResult:
    """Capacity under the average received-power constraint.

    With the threshold gamma0 from :func:`solve_gamma0`, the optimally
    power-controlled rate averages to

        C = int_{1/gamma0}^inf log2(gamma0 x) p(x) dx

    over the ratio density p of g1/g0.  The integral is split at
    max(1/gamma0, 1) * 1e3; the far tail is folded through the rational
    transform of the semi-infinite integrator rather than bounded away,
    which keeps the accuracy uniform across alpha from -20 dB to +20 dB.
    """
    if query.constraint is not Constraint.AVERAGE_RECEIVED_POWER:
        raise ValueError("query.constraint must be AVERAGE_RECEIVED_POWER")
    a_eff = effective_alpha(query)
    if query.scenario.is_awgn:
        return CapacityResult(awgn_capacity(a_eff), gamma0=1.0 + a_eff)
    gamma0 = solve_gamma0(query.scenario, a_eff, spec=spec)
    pdf = ratio_law(query.scenario).pdf

    def integrand(x: float) -> float:
        return math.log2(gamma0 * x) * pdf(x)

    lower = 1.0 / gamma0
    split = max(lower, 1.0) * 1e3
    head, err_head = integrate_finite(integrand, lower, split, spec)
    tail, err_tail = integrate_semi_infinite(lambda u: integrand(split + u), spec)
    return CapacityResult(
        capacity=head + tail,
        gamma0=gamma0,
        quadrature_error=err_head + err_tail,
    )


def capacity_peak(
    query: CapacityQuery,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> CapacityResult:
    """Capacity under the peak received-power constraint.

    C = int_0^inf log2(1 + alpha_eff x) p(x) dx over the scenario's ratio
    density (single interferer or the max-of-n-Rayleigh law).  Scenarios
    without a closed-form law raise NoClosedFormError; use
    :func:`capacity_peak_mc` for those.
    """
    if query.constraint is not Constraint.PEAK_RECEIVED_POWER:
        raise ValueError("query.constraint must be PEAK_RECEIVED_POWER")
    a_eff = effective_alpha(query)
    if query.scenario.is_awgn:
        return CapacityResult(awgn_capacity(a_eff))
    pdf = ratio_law(query.scenario).pdf
    value, err = integrate_semi_infinite(
        lambda x: math.log2(1.0 + a_eff * x) * pdf(x), spec
    )
    return CapacityResult(capacity=value, quadrature_error=err)


def capacity_peak_mc(query: CapacityQuery, samples: int, seed: int) -> CapacityResult:
    """Monte Carlo estimate of the peak-constraint capacity.

    Works for every scenario, including Rician interference with several
    primaries where no closed-form ratio law exists.  Deterministic in
    (seed, samples).
    """
    from . import montecarlo  # runtime import; montecarlo depends on this module

    if query.constraint is not Constraint.PEAK_RECEIVED_POWER:
        raise ValueError("query.constraint must be PEAK_RECEIVED_POWER")
    est = montecarlo.mc_capacity(query, samples, seed)
    return CapacityResult(
        capacity=est.value,
        method="monte-carlo",
        std_error=est.std_error,
    )


def compute_capacity(
    query: CapacityQuery,
    mc_samples: int = 1_000_000,
    seed: int = 0,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> CapacityResult:
    """Dispatch a query to the closed-form integrals, falling back to Monte
    Carlo for peak-constraint scenarios without a closed form."""
    if query.constraint is Constraint.AVERAGE_RECEIVED_POWER:
        return capacity_average(query, spec)
    if query.scenario.is_awgn or has_closed_form(query.scenario):
        return capacity_peak(query, spec)
    return capacity_peak_mc(query, mc_samples, seed)
