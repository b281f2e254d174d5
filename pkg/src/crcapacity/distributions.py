"""Fading models, their power-gain samplers, and the closed-form laws of
the ratio between the desired-link gain and the interference-link gain.

Conventions used throughout:
  * every channel gain is a POWER gain g = x^2 normalized to E{g} = 1,
  * the Rician K-factor is linear (dominant-component power over scattered
    power); K = 0 is Rayleigh,
  * "ray_rice" names the law of g1/g0 with a Rayleigh numerator amplitude
    and a Rician denominator amplitude, "rice_ray" the opposite order, and
    "rice_maxray" the law of g1 over the maximum of n i.i.d. Rayleigh
    interference gains.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

RAYLEIGH = "rayleigh"
RICIAN = "rician"

# CDF values beyond this point differ from 1 by less than ~1e-8 for every
# supported law; returning 1.0 avoids computing 1 minus a subcancelling tail.
_CDF_SATURATION = 1e8

# Alternating binomial sums over n terms lose roughly C(n-1, n/2) * eps of
# absolute accuracy; n = 64 is the documented hard cap, and n <= ~20 keeps
# the loss below 1e-10.
_MAX_PRIMARIES_CLOSED_FORM = 64


class NoClosedFormError(ValueError):
    """No closed-form ratio law exists for this scenario; use the Monte
    Carlo estimators in :mod:`crcapacity.montecarlo` instead."""


@dataclass(frozen=True)
class FadingModel:
    """Amplitude law of one link: Rayleigh, or Rician with linear K-factor."""

    kind: str
    k_factor: float = 0.0

    def __post_init__(self):
        if self.kind not in (RAYLEIGH, RICIAN):
            raise ValueError(f"kind must be {RAYLEIGH!r} or {RICIAN!r}, got {self.kind!r}")
        if not (math.isfinite(self.k_factor) and self.k_factor >= 0.0):
            raise ValueError(f"k_factor must be finite and >= 0, got {self.k_factor!r}")
        if self.kind == RAYLEIGH and self.k_factor != 0.0:
            raise ValueError("a Rayleigh model has no K-factor")

    @classmethod
    def rayleigh(cls) -> "FadingModel":
        return cls(RAYLEIGH)

    @classmethod
    def rician(cls, k_factor: float) -> "FadingModel":
        return cls(RICIAN, float(k_factor))

    @property
    def is_rayleigh_like(self) -> bool:
        """True when the model is Rayleigh in distribution (K = 0 included)."""
        return self.kind == RAYLEIGH or self.k_factor == 0.0


@dataclass(frozen=True)
class RatioScenario:
    """Fading assignment for the gain ratio g1 / max_i g0i.

    ``desired`` is the law of the secondary-link amplitude sqrt(g1),
    ``interference`` the common law of each sqrt(g0i), and ``n_primaries``
    the number of independent interference gains the maximum runs over.
    ``desired = interference = None`` denotes the no-fading reference where
    both gains are identically 1.
    """

    desired: Optional[FadingModel]
    interference: Optional[FadingModel]
    n_primaries: int = 1

    def __post_init__(self):
        if (self.desired is None) != (self.interference is None):
            raise ValueError("desired and interference must both be set or both be None")
        if self.n_primaries < 1:
            raise ValueError(f"n_primaries must be >= 1, got {self.n_primaries!r}")

    @property
    def is_awgn(self) -> bool:
        return self.desired is None

    def swapped(self) -> "RatioScenario":
        """Scenario with the desired and interference laws exchanged."""
        return RatioScenario(self.interference, self.desired, self.n_primaries)


AWGN_REFERENCE = RatioScenario(None, None, 1)


# ---------------------------------------------------------------------------
# samplers
# ---------------------------------------------------------------------------

def sample_power_gain(model: FadingModel, rng: np.random.Generator, size=None):
    """Draw unit-mean power gains g = x^2 under the model's amplitude law.

    Rayleigh power gains are exactly Exp(1).  Rician gains are built from
    two orthogonal Gaussian components with a deterministic offset on one
    of them (a noncentral-chi-square construction), scaled so E{g} = 1.
    """
    if model.kind == RAYLEIGH:
        return rng.exponential(1.0, size=size)
    k = model.k_factor
    sigma = math.sqrt(1.0 / (2.0 * (1.0 + k)))
    offset = math.sqrt(k / (1.0 + k))
    in_phase = offset + sigma * rng.standard_normal(size)
    quadrature = sigma * rng.standard_normal(size)
    return in_phase * in_phase + quadrature * quadrature


# ---------------------------------------------------------------------------
# closed-form ratio laws
# ---------------------------------------------------------------------------

def _domain(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.size and (not np.all(np.isfinite(arr)) or np.any(arr < 0.0)):
        raise ValueError(f"{name} must be finite and >= 0")
    return arr


def _check_k(k_factor: float) -> float:
    k = float(k_factor)
    if not (math.isfinite(k) and k >= 0.0):
        raise ValueError(f"K must be finite and >= 0, got {k_factor!r}")
    return k


def _check_n(n: int) -> int:
    if int(n) != n or n < 1:
        raise ValueError(f"n must be an integer >= 1, got {n!r}")
    if n > _MAX_PRIMARIES_CLOSED_FORM:
        raise ValueError(
            f"closed-form law limited to n <= {_MAX_PRIMARIES_CLOSED_FORM} "
            "(alternating binomial sum)"
        )
    return int(n)


def _scalar_like(arr: np.ndarray, x):
    return float(arr) if np.ndim(x) == 0 else arr


def ratio_cdf_ray_rice(x, k_factor: float):
    """CDF of g1/g0 for a Rayleigh desired link over a Rician interference
    link: F(x) = 1 - (K+1)/(x+K+1) * exp(-K x / (x+K+1))."""
    k = _check_k(k_factor)
    xv = _domain(x, "x")
    s = xv + (k + 1.0)
    out = 1.0 - (k + 1.0) / s * np.exp(-k * xv / s)
    out = np.where(xv > _CDF_SATURATION, 1.0, out)
    return _scalar_like(np.clip(out, 0.0, 1.0), x)


def ratio_pdf_ray_rice(x, k_factor: float):
    """Density of g1/g0, Rayleigh desired over Rician interference:
    p(x) = (K+1) (x + (K+1)^2) / (x+K+1)^3 * exp(-K x / (x+K+1))."""
    k = _check_k(k_factor)
    xv = _domain(x, "x")
    s = xv + (k + 1.0)
    out = (k + 1.0) * (xv + (k + 1.0) ** 2) / s**3 * np.exp(-k * xv / s)
    return _scalar_like(out, x)


def ratio_cdf_rice_ray(y, k_factor: float):
    """CDF of g1/g0 for a Rician desired link over a Rayleigh interference
    link: F(y) = (1+K) y / D * exp(-K / D) with D = 1 + (1+K) y."""
    k = _check_k(k_factor)
    yv = _domain(y, "y")
    d = 1.0 + (1.0 + k) * yv
    out = (1.0 + k) * yv / d * np.exp(-k / d)
    out = np.where(yv > _CDF_SATURATION, 1.0, out)
    return _scalar_like(np.clip(out, 0.0, 1.0), y)


def ratio_pdf_rice_ray(y, k_factor: float):
    """Density of g1/g0, Rician desired over Rayleigh interference:
    p(y) = (1+K) (1 + (1+K)^2 y) / D^3 * exp(-K / D), D = 1 + (1+K) y.

    This is the derivative of :func:`ratio_cdf_rice_ray`; the two
    exponentials appearing in the unsimplified two-term derivative are
    identical (their exponents both reduce to -K/D), which collapses the
    expression to the manifestly non-negative single term above.
    """
    k = _check_k(k_factor)
    yv = _domain(y, "y")
    d = 1.0 + (1.0 + k) * yv
    out = (1.0 + k) * (1.0 + (1.0 + k) ** 2 * yv) * np.exp(-k / d) / d**3
    return _scalar_like(out, y)


def maxray_power_pdf(g, n: int):
    """Density of the maximum of n i.i.d. unit-mean Rayleigh power gains.

    Each gain is Exp(1), so the maximum has density
    n (1 - e^-g)^(n-1) e^-g; the equivalent alternating binomial expansion
    n sum_k (-1)^k C(n-1,k) e^-((1+k) g) is avoided because the product
    form has no cancellation.
    """
    n = _check_n(n)
    gv = _domain(g, "g")
    out = n * (-np.expm1(-gv)) ** (n - 1) * np.exp(-gv)
    return _scalar_like(out, g)


def ratio_cdf_rice_maxray(u, k_factor: float, n: int):
    """CDF of g1 / max_i g0i for a Rician desired link over n i.i.d.
    Rayleigh interference links:

        F(u) = n sum_k (-1)^k/(1+k) C(n-1,k) (1+K) u / Dk * exp(-(1+k) K / Dk)

    with Dk = (1+k) + (1+K) u.  (The constant part of each summand cancels
    through the identity sum_k (-1)^k C(n-1,k)/(1+k) = 1/n, which makes
    F(0) = 0 exact.)
    """
    k_fac = _check_k(k_factor)
    n = _check_n(n)
    uv = _domain(u, "u")
    beta = 1.0 + k_fac
    total = np.zeros_like(uv)
    for k in range(n):
        dk = (1.0 + k) + beta * uv
        q = beta * uv / dk * np.exp(-((1.0 + k) * k_fac) / dk)
        total += (-1.0) ** k * math.comb(n - 1, k) / (1.0 + k) * q
    out = n * total
    out = np.where(uv > _CDF_SATURATION, 1.0, out)
    return _scalar_like(np.clip(out, 0.0, 1.0), u)


def ratio_pdf_rice_maxray(u, k_factor: float, n: int):
    """Density of g1 / max_i g0i for a Rician desired link over n i.i.d.
    Rayleigh interference links:

        p(u) = n sum_k (-1)^k C(n-1,k) / Dk^2 * exp(-(1+k) K / Dk)
               * (1 + K + K (K+1)^2 u / Dk),  Dk = (1+k) + (1+K) u.
    """
    k_fac = _check_k(k_factor)
    n = _check_n(n)
    uv = _domain(u, "u")
    beta = 1.0 + k_fac
    total = np.zeros_like(uv)
    for k in range(n):
        dk = (1.0 + k) + beta * uv
        term = np.exp(-((1.0 + k) * k_fac) / dk) / dk**2 * (beta + k_fac * beta**2 * uv / dk)
        total += (-1.0) ** k * math.comb(n - 1, k) * term
    return _scalar_like(n * total, u)


# ---------------------------------------------------------------------------
# scenario dispatch
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RatioLaw:
    """Evaluable CDF/PDF pair of the gain ratio for one scenario."""

    cdf: Callable
    pdf: Callable
    description: str


def has_closed_form(scenario: RatioScenario) -> bool:
    """True when the scenario's ratio law is available in closed form.

    Every single-primary Rayleigh/Rician combination qualifies except a
    genuinely Rician pair; with several primaries only Rayleigh
    interference does.  The no-fading reference has a degenerate ratio
    (a point mass) and no density, so it reports False.
    """
    if scenario.is_awgn:
        return False
    if scenario.interference.is_rayleigh_like:
        return scenario.n_primaries <= _MAX_PRIMARIES_CLOSED_FORM
    return scenario.n_primaries == 1 and scenario.desired.is_rayleigh_like


def ratio_law(scenario: RatioScenario) -> RatioLaw:
    """Return the closed-form ratio law selected by the scenario."""
    if not has_closed_form(scenario):
        raise NoClosedFormError(
            f"no closed-form ratio law for {scenario!r}; use the Monte Carlo "
            "estimators (crcapacity.montecarlo) for this case"
        )
    des, intf, n = scenario.desired, scenario.interference, scenario.n_primaries
    if intf.is_rayleigh_like:
        k = 0.0 if des.is_rayleigh_like else des.k_factor
        if n == 1:
            label = "rayleigh/rayleigh" if k == 0.0 else f"rician(K={k:g})/rayleigh"
            return RatioLaw(
                cdf=lambda x: ratio_cdf_rice_ray(x, k),
                pdf=lambda x: ratio_pdf_rice_ray(x, k),
                description=label,
            )
        desc = "rayleigh" if k == 0.0 else f"rician(K={k:g})"
        return RatioLaw(
            cdf=lambda x: ratio_cdf_rice_maxray(x, k, n),
            pdf=lambda x: ratio_pdf_rice_maxray(x, k, n),
            description=f"{desc}/max-of-{n}-rayleigh",
        )
    k = intf.k_factor
    return RatioLaw(
        cdf=lambda x: ratio_cdf_ray_rice(x, k),
        pdf=lambda x: ratio_pdf_ray_rice(x, k),
        description=f"rayleigh/rician(K={k:g})",
    )
