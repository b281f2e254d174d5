"""Acceptance suite: every release criterion at its stated tolerance.

Each test prints one [PASS]/[FAIL] line (run with ``pytest -s`` to see them
on success).  Criterion 7b is known to fail: computed exactly, the
average-constraint capacity with a Rician interferer drops below the
no-fading reference above roughly +9 dB, which an independent Monte Carlo
power-policy simulation confirms; the check is kept as stated rather than
weakened.  All other criteria pass.
"""

import math
import time

import numpy as np
import pytest

from crcapacity import (
    AWGN_REFERENCE,
    CapacityQuery,
    Constraint,
    FadingModel,
    RatioScenario,
    awgn_capacity,
    bessel_i0e,
    capacity_average,
    capacity_peak,
    capacity_peak_mc,
    integrate_finite,
    integrate_semi_infinite,
    marcum_q1,
    mc_capacity,
    ratio_law,
    ratio_pdf_ray_rice,
    ratio_pdf_rice_maxray,
    ratio_pdf_rice_ray,
    run_validation,
    sample_ratio,
)
from crcapacity.cli import main
from crcapacity.presets import FIGURE_PRESETS

RAY = FadingModel.rayleigh()
AVG = Constraint.AVERAGE_RECEIVED_POWER
PEAK = Constraint.PEAK_RECEIVED_POWER
K_SET = (0.0, 1.0, 3.981, 31.62)

CLOSED_FORM_SCENARIOS = (
    RatioScenario(RAY, RAY),
    RatioScenario(RAY, FadingModel.rician(1.0)),
    RatioScenario(RAY, FadingModel.rician(3.981)),
    RatioScenario(FadingModel.rician(1.0), RAY),
    RatioScenario(FadingModel.rician(3.981), RAY),
    RatioScenario(FadingModel.rician(3.981), RAY, 2),
    RatioScenario(FadingModel.rician(3.981), RAY, 3),
    RatioScenario(RAY, RAY, 2),
)


def _report(name: str, ok: bool, detail: str = ""):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}"
    if detail:
        line += f": {detail}"
    print(line)
    assert ok, line


def _curve_capacity(curve, alpha_db, mc_samples=1_000_000, seed=0):
    scenario = RatioScenario(curve.desired, curve.interference, curve.n_primaries)
    alpha = 10.0 ** (alpha_db / 10.0)
    c = 10.0 ** (curve.c_db / 10.0)
    query = CapacityQuery(curve.constraint, alpha, scenario, c)
    if curve.constraint is AVG:
        return capacity_average(query).capacity
    try:
        return capacity_peak(query).capacity
    except Exception:
        return capacity_peak_mc(query, mc_samples, seed).capacity


def test_criterion_1_marcum_identity():
    start = time.perf_counter()
    rng = np.random.default_rng(2718)
    worst = 0.0
    for _ in range(1000):
        a, b = rng.uniform(0.0, 20.0, size=2)
        lhs = marcum_q1(a, b) + marcum_q1(b, a)
        rhs = 1.0 + math.exp(-0.5 * (a - b) ** 2) * bessel_i0e(a * b)
        worst = max(worst, abs(lhs - rhs))
    elapsed = time.perf_counter() - start
    _report(
        "criterion 1: Marcum identity on 1000 pairs",
        worst <= 1e-9 and elapsed < 1.0,
        f"max residual {worst:.2e}, {elapsed:.2f}s",
    )


def test_criterion_2_pdf_normalization():
    start = time.perf_counter()
    worst = 0.0
    for k in K_SET:
        for pdf in (
            lambda x, k=k: ratio_pdf_ray_rice(x, k),
            lambda x, k=k: ratio_pdf_rice_ray(x, k),
        ):
            total, _ = integrate_semi_infinite(pdf)
            worst = max(worst, abs(total - 1.0))
        for n in (1, 2, 3):
            total, _ = integrate_semi_infinite(lambda x, k=k, n=n: ratio_pdf_rice_maxray(x, k, n))
            worst = max(worst, abs(total - 1.0))
    total, _ = integrate_semi_infinite(lambda x: 1.0 / (1.0 + x) ** 2)
    worst = max(worst, abs(total - 1.0))
    elapsed = time.perf_counter() - start
    _report(
        "criterion 2: pdf normalization (all laws, K in {0, 0dB, 6dB, 15dB})",
        worst <= 1e-8 and elapsed < 5.0,
        f"max |integral-1| {worst:.2e}, {elapsed:.2f}s",
    )


def test_criterion_3_degeneracy_collapses():
    from crcapacity import ratio_cdf_ray_rice, ratio_cdf_rice_maxray, ratio_cdf_rice_ray

    grid = np.logspace(-6.0, 6.0, 1000)
    worst = 0.0
    base = 1.0 / (grid + 1.0) ** 2
    worst = max(worst, float(np.max(np.abs(ratio_pdf_ray_rice(grid, 0.0) - base))))
    worst = max(worst, float(np.max(np.abs(ratio_pdf_rice_ray(grid, 0.0) - base))))
    for k in K_SET:
        worst = max(worst, float(np.max(np.abs(
            ratio_pdf_rice_maxray(grid, k, 1) - ratio_pdf_rice_ray(grid, k)))))
        worst = max(worst, float(np.max(np.abs(
            ratio_cdf_rice_maxray(grid, k, 1) - ratio_cdf_rice_ray(grid, k)))))
        worst = max(worst, float(np.max(np.abs(
            ratio_cdf_ray_rice(grid, k) - (1.0 - ratio_cdf_rice_ray(1.0 / grid, k))))))
    _report(
        "criterion 3: degeneracy collapses and reciprocal duality at 1e-12",
        worst <= 1e-12,
        f"max pointwise gap {worst:.2e}",
    )


def test_criterion_4_monte_carlo_agreement():
    start = time.perf_counter()
    grid = np.logspace(-2.0, 2.0, 20)
    n = 1_000_000
    worst_hits, worst_name = 20, "-"
    for scenario in CLOSED_FORM_SCENARIOS:
        law = ratio_law(scenario)
        rng = np.random.default_rng(31)
        z = np.sort(sample_ratio(scenario, rng, n))
        emp = np.searchsorted(z, grid, side="left") / n
        p = law.cdf(grid)
        se = np.sqrt(np.maximum(p * (1.0 - p), 1e-300) / n)
        hits = int(np.count_nonzero(np.abs(emp - p) <= 3.0 * se))
        if hits < worst_hits:
            worst_hits, worst_name = hits, law.description
    elapsed = time.perf_counter() - start
    _report(
        "criterion 4: empirical cdf within 3 sigma at >= 18/20 points, all scenarios",
        worst_hits >= 18 and elapsed < 60.0,
        f"worst {worst_hits}/20 ({worst_name}), {elapsed:.1f}s",
    )


def test_criterion_5_analytic_anchors():
    peak = capacity_peak(CapacityQuery(PEAK, 1.0, RatioScenario(RAY, RAY)))
    anchor_ok = abs(peak.capacity - 1.4426950408889634) <= 1e-6
    awgn_ok = True
    for alpha in (0.1, 1.0, 10.0):
        awgn_ok &= capacity_peak(
            CapacityQuery(PEAK, alpha, AWGN_REFERENCE)).capacity == math.log2(1 + alpha)
        awgn_ok &= capacity_average(
            CapacityQuery(AVG, alpha, AWGN_REFERENCE)).capacity == math.log2(1 + alpha)
    _report(
        "criterion 5: peak Rayleigh/Rayleigh anchor 1/ln2 and exact AWGN baseline",
        anchor_ok and awgn_ok,
        f"C(0dB) = {peak.capacity:.9f}",
    )


def test_criterion_6_average_constraint_self_consistency():
    scenarios = (
        RatioScenario(RAY, RAY),
        RatioScenario(RAY, FadingModel.rician(1.0)),
        RatioScenario(RAY, FadingModel.rician(3.981)),
        RatioScenario(FadingModel.rician(3.981), RAY),
    )
    worst_resid, worst_sigma = 0.0, 0.0
    for scenario in scenarios:
        for alpha_db in (-10.0, 0.0, 10.0):
            alpha = 10.0 ** (alpha_db / 10.0)
            query = CapacityQuery(AVG, alpha, scenario)
            result = capacity_average(query)
            inverse_pdf = ratio_law(scenario.swapped()).pdf
            received, _ = integrate_finite(
                lambda x: (result.gamma0 - x) * inverse_pdf(x), 0.0, result.gamma0
            )
            worst_resid = max(worst_resid, abs(received - alpha))
            est = mc_capacity(query, 1_000_000, seed=61)
            worst_sigma = max(worst_sigma, abs(result.capacity - est.value) / est.std_error)
    _report(
        "criterion 6: gamma0 reproduces the constraint and matches the power-policy MC (12 combos)",
        worst_resid <= 1e-6 and worst_sigma <= 3.0,
        f"max residual {worst_resid:.2e}, max {worst_sigma:.2f} sigma",
    )


def test_criterion_7a_monotone_in_alpha_every_preset():
    alphas_db = np.linspace(-20.0, 20.0, 9)
    bad = []
    for preset in FIGURE_PRESETS.values():
        for curve in preset.curves:
            caps = [_curve_capacity(curve, a, mc_samples=200_000, seed=1)
                    for a in alphas_db]
            if not all(b > a for a, b in zip(caps, caps[1:])):
                bad.append(f"{preset.name}/{curve.label}")
    _report(
        "criterion 7a: capacity strictly increasing in alpha for every preset",
        not bad,
        "all presets" if not bad else "violations: " + ", ".join(bad),
    )


def test_criterion_7b_average_constraint_fading_gain():
    # as stated: C >= log2(1 + alpha) at every grid point of the
    # average-constraint presets.  Fails for Rayleigh/Rician above ~+9 dB;
    # see the README and the acceptance notes for the analysis.
    alphas_db = np.linspace(-20.0, 20.0, 41)
    violations = []
    for name in ("fig2", "fig3"):
        for curve in FIGURE_PRESETS[name].curves:
            for alpha_db in alphas_db:
                cap = _curve_capacity(curve, alpha_db)
                ref = awgn_capacity(10.0 ** (alpha_db / 10.0))
                if cap < ref:
                    violations.append(
                        f"{name}/{curve.label} at {alpha_db:+.0f} dB "
                        f"(C={cap:.4f} < AWGN={ref:.4f})"
                    )
    _report(
        "criterion 7b: average-constraint capacity >= AWGN at all grid points",
        not violations,
        "holds everywhere" if not violations else
        f"{len(violations)} grid points below AWGN, first: {violations[0]}",
    )


def test_criterion_7c_peak_ray_rice_crosses_awgn():
    alphas_db = np.linspace(-20.0, 20.0, 41)
    ok = True
    detail = []
    for curve in FIGURE_PRESETS["fig4"].curves:
        diffs = [
            _curve_capacity(curve, a) - awgn_capacity(10.0 ** (a / 10.0))
            for a in alphas_db
        ]
        above = any(d > 0 for d in diffs)
        below = any(d < 0 for d in diffs)
        ok &= above and below
        detail.append(f"{curve.label}: above={above} below={below}")
    _report(
        "criterion 7c: peak Rayleigh/Rician crosses the AWGN curve",
        ok,
        "; ".join(detail),
    )


def test_criterion_7d_low_alpha_k_ordering():
    alpha = 10.0 ** (-10.0 / 10.0)
    caps = [
        capacity_peak(CapacityQuery(PEAK, alpha, RatioScenario(RAY, FadingModel.rician(k)))).capacity
        for k in (1.0, 3.981, 31.62)
    ]
    _report(
        "criterion 7d: peak Rayleigh/Rician capacity at -10 dB decreases in K",
        caps[0] > caps[1] > caps[2],
        f"K=0dB {caps[0]:.4f} > K=6dB {caps[1]:.4f} > K=15dB {caps[2]:.4f}",
    )


def test_criterion_7e_multi_primary_nonincreasing():
    ok = True
    detail = []
    for alpha_db in (-10.0, 0.0, 10.0):
        alpha = 10.0 ** (alpha_db / 10.0)
        closed = [
            capacity_peak(CapacityQuery(
                PEAK, alpha, RatioScenario(FadingModel.rician(3.981), RAY, n))).capacity
            for n in (1, 2, 3)
        ]
        ok &= closed[0] >= closed[1] >= closed[2]
        mc = [
            capacity_peak_mc(CapacityQuery(
                PEAK, alpha, RatioScenario(RAY, FadingModel.rician(3.981), n)),
                1_000_000, seed=2).capacity
            for n in (1, 2, 3)
        ]
        ok &= mc[0] >= mc[1] >= mc[2]
        detail.append(f"{alpha_db:+.0f}dB ok")
    _report(
        "criterion 7e: peak capacity nonincreasing in n for both fading orders",
        ok,
        ", ".join(detail),
    )


def test_criterion_7f_power_ratio_identity_exact():
    ok = True
    scenario = RatioScenario(RAY, FadingModel.rician(3.981))
    for constraint, compute in ((AVG, capacity_average), (PEAK, capacity_peak)):
        for alpha, c in ((0.1, 10.0), (1.0, 0.1), (3.0, 2.0)):
            a = compute(CapacityQuery(constraint, alpha, scenario, c)).capacity
            b = compute(CapacityQuery(constraint, c * alpha, scenario, 1.0)).capacity
            ok &= a == b
    _report("criterion 7f: capacity(alpha, c) equals capacity(c*alpha, 1) exactly", ok)


def test_criterion_8_validation_determinism(capsys):
    report_a, ok_a = run_validation(samples=100_000, seed=42)
    report_b, ok_b = run_validation(samples=100_000, seed=42)
    code_a = main(["validate", "--mc-samples", "100000", "--seed", "42"])
    out_a = capsys.readouterr().out
    code_b = main(["validate", "--mc-samples", "100000", "--seed", "42"])
    out_b = capsys.readouterr().out
    _report(
        "criterion 8: validate --seed 42 is byte-identical across runs",
        ok_a and ok_b and report_a == report_b and out_a == out_b
        and code_a == 0 and code_b == 0,
    )


@pytest.mark.parametrize("name", sorted(FIGURE_PRESETS))
def test_criterion_9_figures_end_to_end(name, tmp_path, capsys):
    start = time.perf_counter()
    code = main(["figure", name, "--output", str(tmp_path)])
    elapsed = time.perf_counter() - start
    capsys.readouterr()
    ok = code == 0 and elapsed < 120.0
    n_rows = []
    for curve in FIGURE_PRESETS[name].curves:
        path = tmp_path / f"{name}_{curve.label}.csv"
        if not path.exists():
            ok = False
            continue
        lines = [l for l in path.read_text().splitlines() if l and not l.startswith("#")]
        header = lines[0].split(",")
        rows = [line.split(",") for line in lines[1:]]
        ok &= header[0] == "alpha_db" and header[-1] == "awgn_bits_per_hz"
        ok &= len(rows) == 41
        ok &= all(math.isfinite(float(cell)) for row in rows for cell in row)
        n_rows.append(len(rows))
    ok &= (tmp_path / f"{name}.png").exists()
    _report(
        f"criterion 9: figure {name} end-to-end",
        ok,
        f"{len(n_rows)} curves x 41 rows in {elapsed:.1f}s",
    )
