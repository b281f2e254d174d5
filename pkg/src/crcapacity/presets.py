"""Named sweep presets reproducing the reference capacity figures.

Each preset is a bundle of curves sharing one alpha grid (-20..20 dB,
41 points).  K-factor sweeps use 0, 6 and 15 dB; the combined-comparison
preset (fig6) covers the full cartesian product of both constraints, both
fading orders and c = +/-10 dB at K = 6 dB.
"""

from dataclasses import dataclass

from .capacity import Constraint
from .distributions import FadingModel

DEFAULT_ALPHA_RANGE = (-20.0, 20.0, 41)

_RAY = FadingModel.rayleigh()


def _rice(k_db: float) -> FadingModel:
    return FadingModel.rician(10.0 ** (k_db / 10.0))


@dataclass(frozen=True)
class CurveSpec:
    label: str
    constraint: Constraint
    desired: FadingModel
    interference: FadingModel
    c_db: float = 0.0
    n_primaries: int = 1


@dataclass(frozen=True)
class FigurePreset:
    name: str
    title: str
    curves: tuple[CurveSpec, ...]


def _k_sweep(constraint: Constraint, rician_side: str) -> tuple[CurveSpec, ...]:
    curves = []
    for k_db in (0.0, 6.0, 15.0):
        if rician_side == "interference":
            des, intf = _RAY, _rice(k_db)
        else:
            des, intf = _rice(k_db), _RAY
        curves.append(CurveSpec(f"k{k_db:g}db", constraint, des, intf))
    return tuple(curves)


def _n_sweep(desired: FadingModel, interference: FadingModel) -> tuple[CurveSpec, ...]:
    return tuple(
        CurveSpec(f"n{n}", Constraint.PEAK_RECEIVED_POWER, desired, interference,
                  n_primaries=n)
        for n in (1, 2, 3)
    )


def _power_ratio_grid() -> tuple[CurveSpec, ...]:
    curves = []
    for constraint, tag in ((Constraint.AVERAGE_RECEIVED_POWER, "avg"),
                            (Constraint.PEAK_RECEIVED_POWER, "peak")):
        for desired, interference, order in ((_rice(6.0), _RAY, "rice_ray"),
                                             (_RAY, _rice(6.0), "ray_rice")):
            for c_db in (10.0, -10.0):
                sign = "p" if c_db > 0 else "m"
                curves.append(CurveSpec(
                    f"{tag}_{order}_c{sign}10db", constraint, desired,
                    interference, c_db=c_db,
                ))
    return tuple(curves)


FIGURE_PRESETS = {
    "fig2": FigurePreset(
        "fig2",
        "Average received-power constraint, Rayleigh/Rician, c = 0 dB",
        _k_sweep(Constraint.AVERAGE_RECEIVED_POWER, "interference"),
    ),
    "fig3": FigurePreset(
        "fig3",
        "Average received-power constraint, Rician/Rayleigh, c = 0 dB",
        _k_sweep(Constraint.AVERAGE_RECEIVED_POWER, "desired"),
    ),
    "fig4": FigurePreset(
        "fig4",
        "Peak received-power constraint, Rayleigh/Rician, c = 0 dB",
        _k_sweep(Constraint.PEAK_RECEIVED_POWER, "interference"),
    ),
    "fig5": FigurePreset(
        "fig5",
        "Peak received-power constraint, Rician/Rayleigh, c = 0 dB",
        _k_sweep(Constraint.PEAK_RECEIVED_POWER, "desired"),
    ),
    "fig6": FigurePreset(
        "fig6",
        "Both constraints, both fading orders, c = +/-10 dB, K = 6 dB",
        _power_ratio_grid(),
    ),
    "fig7": FigurePreset(
        "fig7",
        "Peak constraint, Rician/Rayleigh, n primary receivers, K = 6 dB",
        _n_sweep(_rice(6.0), _RAY),
    ),
    "fig8": FigurePreset(
        "fig8",
        "Peak constraint, Rayleigh/Rician, n primary receivers, K = 6 dB",
        _n_sweep(_RAY, _rice(6.0)),
    ),
}
