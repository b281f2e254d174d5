"""Quadrature over [0, inf) and bracketed root finding for a monotone map."""

import math
from dataclasses import dataclass
from typing import Callable

from scipy import integrate


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    max_subdivisions: int = 200

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {v!r}")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


DEFAULT_QUADRATURE = QuadratureSpec()


class NonConvergenceError(RuntimeError):
    """Quadrature or iteration did not reach the requested tolerance.

    Carries the best estimate produced so far and its error estimate.
    """

    def __init__(self, message: str, estimate: float, error_estimate: float):
        super().__init__(f"{message} (best estimate {estimate!r}, error {error_estimate:.3e})")
        self.estimate = estimate
        self.error_estimate = error_estimate


class BracketFailureError(RuntimeError):
    """The root finder could not bracket the target value."""


def integrate_semi_infinite(
    f: Callable[[float], float],
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> tuple[float, float]:
    """Integrate f over [0, inf). Returns (value, error_estimate).

    The half line is mapped onto (0, 1) through x = t/(1 - t) and the
    transformed integrand handed to adaptive Gauss-Kronrod panels; the
    interior quadrature nodes never touch t = 1, so f is only evaluated
    at finite arguments.
    """

    def transformed(t: float) -> float:
        u = 1.0 - t
        return f(t / u) / (u * u)

    return _quad(transformed, 0.0, 1.0, spec)


def integrate_finite(
    f: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_QUADRATURE,
) -> tuple[float, float]:
    """Adaptive panel quadrature of f on [a, b]. Returns (value, error_estimate)."""
    if not (a <= b):
        raise ValueError(f"need a <= b, got a={a!r} b={b!r}")
    return _quad(f, a, b, spec)


def _quad(f, a, b, spec):
    out = integrate.quad(
        f, a, b,
        epsabs=spec.abs_tol,
        epsrel=spec.rel_tol,
        limit=spec.max_subdivisions,
        full_output=1,
    )
    if len(out) > 3:  # quadpack appended a warning message
        raise NonConvergenceError(str(out[3]).replace("\n", " "), out[0], out[1])
    value, err = out[0], out[1]
    return value, err


def find_root_increasing(
    h: Callable[[float], float],
    target: float,
    tol: float = 1e-9,
) -> float:
    """Solve h(g) = target for a continuous nondecreasing h with h(0) <= target.

    The bracket is expanded geometrically from [0, 1] (capped at 2^100),
    then bisected until |h(g) - target| <= tol.
    """
    if not (tol > 0.0 and math.isfinite(tol)):
        raise ValueError("tol must be positive and finite")
    lo = 0.0
    v_lo = h(lo)
    if v_lo > target:
        raise BracketFailureError(
            f"h(0) = {v_lo!r} already exceeds the target {target!r}"
        )
    if abs(v_lo - target) <= tol:
        return lo

    hi = 1.0
    v_hi = h(hi)
    while v_hi < target:
        lo = hi
        hi *= 2.0
        if hi > 2.0**100:
            raise BracketFailureError(
                f"no bracket below 2^100: h appears bounded by {v_hi!r} < {target!r}"
            )
        v_hi = h(hi)

    best, best_resid = hi, abs(v_hi - target)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        v = h(mid)
        resid = abs(v - target)
        if resid < best_resid:
            best, best_resid = mid, resid
        if resid <= tol:
            return mid
        if v < target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * max(1.0, hi):
            break
    if best_resid <= tol:
        return best
    raise NonConvergenceError("bisection stalled before reaching tol", best, best_resid)
