"""Ergodic capacity of a spectrum-sharing (secondary) link under average
and peak interference-power constraints, for asymmetric Rayleigh/Rician
fading, with closed-form gain-ratio laws cross-validated by Monte Carlo.
"""

from .capacity import (
    CapacityQuery,
    CapacityResult,
    Constraint,
    awgn_capacity,
    capacity_average,
    capacity_peak,
    capacity_peak_mc,
    compute_capacity,
    effective_alpha,
    solve_gamma0,
)
from .distributions import (
    AWGN_REFERENCE,
    FadingModel,
    NoClosedFormError,
    RatioLaw,
    RatioScenario,
    has_closed_form,
    maxray_power_pdf,
    ratio_cdf_ray_rice,
    ratio_cdf_rice_maxray,
    ratio_cdf_rice_ray,
    ratio_law,
    ratio_pdf_ray_rice,
    ratio_pdf_rice_maxray,
    ratio_pdf_rice_ray,
    sample_power_gain,
)
from .montecarlo import McEstimate, mc_capacity, mc_ratio_cdf, sample_ratio
from .numerics import (
    BracketFailureError,
    NonConvergenceError,
    QuadratureSpec,
    find_root_increasing,
    integrate_finite,
    integrate_semi_infinite,
)
from .special import bessel_i0, bessel_i0e, marcum_q1
from .validation import run_validation

__version__ = "0.1.0"

__all__ = [
    "AWGN_REFERENCE",
    "BracketFailureError",
    "CapacityQuery",
    "CapacityResult",
    "Constraint",
    "FadingModel",
    "McEstimate",
    "NoClosedFormError",
    "NonConvergenceError",
    "QuadratureSpec",
    "RatioLaw",
    "RatioScenario",
    "awgn_capacity",
    "bessel_i0",
    "bessel_i0e",
    "capacity_average",
    "capacity_peak",
    "capacity_peak_mc",
    "compute_capacity",
    "effective_alpha",
    "find_root_increasing",
    "has_closed_form",
    "integrate_finite",
    "integrate_semi_infinite",
    "marcum_q1",
    "maxray_power_pdf",
    "mc_capacity",
    "mc_ratio_cdf",
    "ratio_cdf_ray_rice",
    "ratio_cdf_rice_maxray",
    "ratio_cdf_rice_ray",
    "ratio_law",
    "ratio_pdf_ray_rice",
    "ratio_pdf_rice_maxray",
    "ratio_pdf_rice_ray",
    "run_validation",
    "sample_power_gain",
    "sample_ratio",
    "solve_gamma0",
]
