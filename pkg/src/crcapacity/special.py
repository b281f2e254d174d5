"""Scalar special functions: the modified Bessel function I0 and the
first-order Marcum Q-function.

Both are evaluated from all-positive-term series, so there is no
subtractive cancellation anywhere in this module.
"""

import math

import numpy as np
from scipy.special import gammaincc, gammaln

# Below this point the power series is cheap and exact; above it the
# asymptotic expansion reaches machine precision before its terms start
# growing again (its optimal truncation error is ~e^(-2x)).
_I0_SERIES_CUTOFF = 50.0


def _check_nonneg(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value) or value < 0.0:
        raise ValueError(f"{name} must be a finite non-negative real, got {value!r}")
    return value


def _i0_series(x: float) -> float:
    # sum_k (x^2/4)^k / (k!)^2, all terms positive; converges for any x,
    # needs ~x terms past the peak near k = x/2.
    q = 0.25 * x * x
    term = 1.0
    total = 1.0
    k = 0
    while term > 1e-17 * total:
        k += 1
        term *= q / (k * k)
        total += term
    return total


def _i0e_asymptotic(x: float) -> float:
    # e^(-x) I0(x) ~ (2 pi x)^(-1/2) * sum_k t_k with
    # t_0 = 1, t_{k+1} = t_k (2k+1)^2 / (8 (k+1) x); truncate at the
    # smallest term (the series is asymptotic, not convergent).
    term = 1.0
    total = 1.0
    k = 0
    while True:
        nxt = term * (2 * k + 1) ** 2 / (8.0 * (k + 1) * x)
        if nxt >= term or nxt < 1e-17 * total:
            break
        total += nxt
        term = nxt
        k += 1
    return total / math.sqrt(2.0 * math.pi * x)


def bessel_i0(x: float) -> float:
    """Modified Bessel function of the first kind, order zero.

    Accurate to ~1e-13 relative for x <= 700; raises OverflowError once
    e^x itself overflows (x > ~709), use bessel_i0e there instead.
    """
    x = _check_nonneg(x, "x")
    if x < _I0_SERIES_CUTOFF:
        return _i0_series(x)
    return _i0e_asymptotic(x) * math.exp(x)


def bessel_i0e(x: float) -> float:
    """Exponentially scaled companion e^(-x) I0(x); never overflows."""
    x = _check_nonneg(x, "x")
    if x < _I0_SERIES_CUTOFF:
        return _i0_series(x) * math.exp(-x)
    return _i0e_asymptotic(x)


def _poisson_window(lam: float) -> tuple[np.ndarray, np.ndarray]:
    # Indices carrying all but ~e^(-800) of the Poisson(lam) mass, with
    # weights built from log pmfs so lam up to ~1e6 cannot underflow the
    # j = 0 anchor term.
    half = 40.0 * math.sqrt(lam) + 40.0
    j_lo = max(0, int(math.floor(lam - half)))
    j_hi = int(math.ceil(lam + half))
    j = np.arange(j_lo, j_hi + 1, dtype=float)
    log_pmf = j * math.log(lam) - lam - gammaln(j + 1.0)
    return j, np.exp(log_pmf)


def marcum_q1(a: float, b: float) -> float:
    """First-order Marcum Q-function Q1(a, b).

    Q1(a, b) = int_b^inf x e^(-(x^2 + a^2)/2) I0(a x) dx, the survival
    function of a noncentral chi variable with two degrees of freedom.
    Equivalently Q1(a, b) = P(Nb <= Na) for independent Poisson counts
    with rates a^2/2 and b^2/2; the sum is taken over the side with the
    smaller rate, so whichever of Q1 or 1 - Q1 is smaller is accumulated
    from positive terms. Absolute error is ~1e-12 for a, b <= 50.
    """
    a = _check_nonneg(a, "a")
    b = _check_nonneg(b, "b")
    lam_a = 0.5 * a * a
    lam_b = 0.5 * b * b
    if lam_b == 0.0:
        return 1.0
    if lam_a == 0.0:
        return math.exp(-lam_b)
    if lam_a <= lam_b:
        j, w = _poisson_window(lam_a)
        # P(Nb <= j) for each j in the window of Na
        q = float(np.sum(w * gammaincc(j + 1.0, lam_b)))
        return min(q, 1.0)
    # a > b: accumulate the complement P(Na < Nb) instead
    j, w = _poisson_window(lam_b)
    below = np.where(j >= 1.0, gammaincc(np.maximum(j, 1.0), lam_a), 0.0)
    v = float(np.sum(w * below))
    return max(1.0 - v, 0.0)
