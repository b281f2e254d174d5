"""Self-validation: closed forms against their Monte Carlo and quadrature
cross-checks, plus the structural identities every law must satisfy.

The report text is a pure function of (samples, seed) so repeated runs are
byte-identical.
"""

import math

import numpy as np

from . import distributions as dist
from .capacity import (
    CapacityQuery,
    Constraint,
    capacity_average,
    capacity_peak,
    effective_alpha,
)
from .montecarlo import mc_capacity
from .numerics import integrate_finite, integrate_semi_infinite
from .special import bessel_i0e, marcum_q1

_RAY = dist.FadingModel.rayleigh()
_K_GRID = (0.0, 1.0, 3.981, 31.62)

# every scenario family with a closed-form ratio law
_CLOSED_FORM_SCENARIOS = (
    ("rayleigh/rayleigh", dist.RatioScenario(_RAY, _RAY)),
    ("rayleigh/rician(0dB)", dist.RatioScenario(_RAY, dist.FadingModel.rician(1.0))),
    ("rayleigh/rician(6dB)", dist.RatioScenario(_RAY, dist.FadingModel.rician(3.981))),
    ("rician(0dB)/rayleigh", dist.RatioScenario(dist.FadingModel.rician(1.0), _RAY)),
    ("rician(6dB)/rayleigh", dist.RatioScenario(dist.FadingModel.rician(3.981), _RAY)),
    ("rician(6dB)/max2ray", dist.RatioScenario(dist.FadingModel.rician(3.981), _RAY, 2)),
    ("rician(6dB)/max3ray", dist.RatioScenario(dist.FadingModel.rician(3.981), _RAY, 3)),
    ("rayleigh/max2ray", dist.RatioScenario(_RAY, _RAY, 2)),
)


def _check_marcum_identity(rng):
    worst = 0.0
    for _ in range(1000):
        a = rng.uniform(0.0, 20.0)
        b = rng.uniform(0.0, 20.0)
        lhs = marcum_q1(a, b) + marcum_q1(b, a)
        rhs = 1.0 + math.exp(-0.5 * (a - b) ** 2) * bessel_i0e(a * b)
        worst = max(worst, abs(lhs - rhs))
    return worst <= 1e-9, f"max residual {worst:.2e}"


def _check_normalization(_rng):
    worst = 0.0
    for k in _K_GRID:
        for pdf in (lambda x, k=k: dist.ratio_pdf_ray_rice(x, k),
                    lambda x, k=k: dist.ratio_pdf_rice_ray(x, k)):
            v, _ = integrate_semi_infinite(pdf)
            worst = max(worst, abs(v - 1.0))
        for n in (1, 2, 3):
            v, _ = integrate_semi_infinite(lambda x, k=k, n=n: dist.ratio_pdf_rice_maxray(x, k, n))
            worst = max(worst, abs(v - 1.0))
    return worst <= 1e-8, f"max |integral - 1| {worst:.2e}"


def _check_degeneracies(_rng):
    grid = np.logspace(-6.0, 6.0, 1000)
    worst = 0.0
    base = 1.0 / (grid + 1.0) ** 2
    worst = max(worst, float(np.max(np.abs(dist.ratio_pdf_ray_rice(grid, 0.0) - base))))
    worst = max(worst, float(np.max(np.abs(dist.ratio_pdf_rice_ray(grid, 0.0) - base))))
    for k in _K_GRID:
        worst = max(worst, float(np.max(np.abs(
            dist.ratio_pdf_rice_maxray(grid, k, 1) - dist.ratio_pdf_rice_ray(grid, k)))))
        worst = max(worst, float(np.max(np.abs(
            dist.ratio_cdf_ray_rice(grid, k) - (1.0 - dist.ratio_cdf_rice_ray(1.0 / grid, k))))))
    return worst <= 1e-12, f"max pointwise gap {worst:.2e}"


def _check_cdf_shape(_rng):
    grid = np.logspace(-3.0, 6.0, 1000)
    ok = True
    detail = []
    for name, scen in _CLOSED_FORM_SCENARIOS:
        law = dist.ratio_law(scen)
        c = law.cdf(grid)
        if law.cdf(0.0) != 0.0 or np.any(np.diff(c) < -1e-14) or c[-1] <= 1.0 - 1e-3:
            ok = False
            detail.append(name)
        if np.any(law.pdf(grid) < 0.0):
            ok = False
            detail.append(name + " (pdf<0)")
    return ok, ("violations: " + ", ".join(detail)) if detail else "all laws monotone, normalized tails"


def _check_cdf_pdf_consistency(_rng):
    grid = np.logspace(-2.0, 2.0, 200)
    # relative step: large enough that the difference of two CDF values
    # near 1 clears double rounding, small enough to keep the truncation
    # term h^2 p'''/6 below 1e-6 of p
    h = 5e-5 * np.maximum(grid, 1e-2)
    worst = 0.0
    for _, scen in _CLOSED_FORM_SCENARIOS:
        law = dist.ratio_law(scen)
        deriv = (law.cdf(grid + h) - law.cdf(grid - h)) / (2.0 * h)
        p = law.pdf(grid)
        worst = max(worst, float(np.max(np.abs(deriv - p) / np.maximum(p, 1e-12))))
    return worst <= 1e-6, f"max relative derivative gap {worst:.2e}"


def _check_sampler_ks(rng, samples):
    from scipy.stats import kstest

    n = min(samples, 1_000_000)
    crit = 1.63 / math.sqrt(n)
    worst = 0.0
    for _, scen in _CLOSED_FORM_SCENARIOS[:5]:
        from .montecarlo import sample_ratio

        z = sample_ratio(scen, rng, n)
        stat = kstest(z, dist.ratio_law(scen).cdf).statistic
        worst = max(worst, float(stat))
    return worst < crit, f"max KS {worst:.2e} (crit {crit:.2e})"


def _check_mc_cdf_agreement(_rng, samples, seed):
    grid = np.logspace(-2.0, 2.0, 20)
    worst_hits = 20
    worst_name = "-"
    for name, scen in _CLOSED_FORM_SCENARIOS:
        law = dist.ratio_law(scen)
        rng = np.random.default_rng(seed)
        from .montecarlo import sample_ratio

        z = np.sort(sample_ratio(scen, rng, samples))
        emp = np.searchsorted(z, grid, side="left") / samples
        # binomial standard error at the closed-form p: stays meaningful at
        # grid points whose empirical count is zero
        p = law.cdf(grid)
        se = np.sqrt(np.maximum(p * (1.0 - p), 1e-300) / samples)
        hits = int(np.count_nonzero(np.abs(emp - p) <= 3.0 * se))
        if hits < worst_hits:
            worst_hits, worst_name = hits, name
    return worst_hits >= 18, f"worst {worst_hits}/20 ({worst_name})"


def _check_peak_capacity(_rng, samples, seed):
    worst = 0.0
    for _, scen in (_CLOSED_FORM_SCENARIOS[0], _CLOSED_FORM_SCENARIOS[2],
                    _CLOSED_FORM_SCENARIOS[4], _CLOSED_FORM_SCENARIOS[5]):
        q = CapacityQuery(Constraint.PEAK_RECEIVED_POWER, 1.0, scen)
        closed = capacity_peak(q).capacity
        est = mc_capacity(q, samples, seed)
        worst = max(worst, abs(closed - est.value) / est.std_error)
    return worst <= 3.0, f"max deviation {worst:.2f} sigma"


def _check_average_capacity(_rng, samples, seed):
    worst_sigma = 0.0
    worst_resid = 0.0
    for _, scen in (_CLOSED_FORM_SCENARIOS[0], _CLOSED_FORM_SCENARIOS[2],
                    _CLOSED_FORM_SCENARIOS[4]):
        q = CapacityQuery(Constraint.AVERAGE_RECEIVED_POWER, 1.0, scen)
        res = capacity_average(q)
        est = mc_capacity(q, samples, seed)
        worst_sigma = max(worst_sigma, abs(res.capacity - est.value) / est.std_error)
        inv_pdf = dist.ratio_law(scen.swapped()).pdf
        received, _ = integrate_finite(
            lambda x: (res.gamma0 - x) * inv_pdf(x), 0.0, res.gamma0
        )
        worst_resid = max(worst_resid, abs(received - effective_alpha(q)))
    ok = worst_sigma <= 3.0 and worst_resid <= 1e-6
    return ok, f"max {worst_sigma:.2f} sigma, constraint residual {worst_resid:.2e}"


_CHECKS = (
    ("marcum identity, 1000 random pairs", _check_marcum_identity, False),
    ("pdf normalization, all laws x K grid", _check_normalization, False),
    ("degeneracy collapses and reciprocal duality", _check_degeneracies, False),
    ("cdf monotonicity, limits, pdf sign", _check_cdf_shape, False),
    ("cdf/pdf derivative consistency", _check_cdf_pdf_consistency, False),
    ("sampler vs closed-form cdf (KS)", _check_sampler_ks, "rng_samples"),
    ("empirical cdf vs closed form, 20 points", _check_mc_cdf_agreement, "samples_seed"),
    ("peak capacity vs monte carlo", _check_peak_capacity, "samples_seed"),
    ("average capacity vs power-policy monte carlo", _check_average_capacity, "samples_seed"),
)


def run_validation(samples: int = 1_000_000, seed: int = 42) -> tuple[str, bool]:
    """Run every cross-check; returns (report_text, all_passed)."""
    lines = [f"crcapacity validation  samples={samples}  seed={seed}", "-" * 72]
    all_ok = True
    for name, fn, mode in _CHECKS:
        if mode == "rng_samples":
            ok, detail = fn(np.random.default_rng(seed), samples)
        elif mode == "samples_seed":
            ok, detail = fn(None, samples, seed)
        else:
            ok, detail = fn(np.random.default_rng(seed))
        all_ok = all_ok and ok
        lines.append(f"{'PASS' if ok else 'FAIL'}  {name:<46} {detail}")
    lines.append("-" * 72)
    lines.append("result: ALL CHECKS PASSED" if all_ok else "result: FAILURES DETECTED")
    return "\n".join(lines) + "\n", all_ok
