"""Command-line front end: evaluate ratio laws, sweep capacities over the
interference budget, reproduce the named reference figures, and run the
self-validation suite.

All dB handling lives here; the library itself works in linear units.
CSV goes to stdout or --output with 17 significant digits; the figure
command also renders a PNG next to its CSV files.
"""

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .capacity import (
    CapacityQuery,
    Constraint,
    awgn_capacity,
    capacity_average,
    capacity_peak,
    capacity_peak_mc,
)
from .distributions import (
    FadingModel,
    NoClosedFormError,
    RatioScenario,
    has_closed_form,
    ratio_law,
)
from .presets import DEFAULT_ALPHA_RANGE, FIGURE_PRESETS
from .validation import run_validation


class UsageError(Exception):
    """Bad flags or config; maps to exit code 2."""


def db_to_linear(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value: float) -> float:
    return 10.0 * math.log10(value)


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _parse_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"range must look like start:stop:points, got {text!r}")
    try:
        start, stop, points = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}: {exc}") from exc
    return start, stop, points


@dataclass(frozen=True)
class SweepConfig:
    """One capacity sweep: alpha grid plus scenario and estimator knobs."""

    alpha_start_db: float
    alpha_stop_db: float
    alpha_points: int
    constraint: Constraint
    desired: FadingModel
    interference: FadingModel
    c_db: float = 0.0
    n_primaries: int = 1
    mc_samples: int = 1_000_000
    seed: int = 0
    output: Optional[str] = None

    def __post_init__(self):
        for name in ("alpha_start_db", "alpha_stop_db", "c_db"):
            if not math.isfinite(getattr(self, name)):
                raise UsageError(f"{name} must be finite")
        if self.alpha_points < 1:
            raise UsageError("alpha grid needs at least one point")
        if self.alpha_points >= 2 and not (self.alpha_start_db <= self.alpha_stop_db):
            raise UsageError("alpha range start must not exceed stop")
        if self.seed < 0:
            raise UsageError("seed must be a non-negative integer")

    @property
    def alphas_db(self) -> np.ndarray:
        if self.alpha_points == 1:
            return np.array([self.alpha_start_db])
        return np.linspace(self.alpha_start_db, self.alpha_stop_db, self.alpha_points)

    @property
    def scenario(self) -> RatioScenario:
        return RatioScenario(self.desired, self.interference, self.n_primaries)


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def _add_scenario_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--desired", choices=("rayleigh", "rician"), default=None,
                        help="fading of the secondary link (default rayleigh)")
    parser.add_argument("--desired-k-db", type=float, default=None,
                        help="Rician K of the secondary link in dB (default 0 dB)")
    parser.add_argument("--interference", choices=("rayleigh", "rician"), default=None,
                        help="fading of each interference link (default rayleigh)")
    parser.add_argument("--interference-k-db", type=float, default=None,
                        help="Rician K of the interference links in dB (default 0 dB)")
    parser.add_argument("--n-primaries", type=int, default=None,
                        help="number of primary receivers (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crcapacity",
        description="spectrum-sharing link capacity under interference-power "
                    "constraints in asymmetric Rayleigh/Rician fading",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a closed-form ratio CDF or PDF")
    p_eval.add_argument("--kind", choices=("cdf", "pdf"), required=True)
    _add_scenario_args(p_eval)
    p_eval.add_argument("--x", default=None,
                        help="comma-separated evaluation points")
    p_eval.add_argument("--x-range", default=None,
                        help="linear grid start:stop:points")
    p_eval.add_argument("--output", default=None)

    p_cap = sub.add_parser("capacity", help="capacity at one alpha or over a sweep")
    p_cap.add_argument("--constraint", choices=("avg", "peak"), default=None)
    _add_scenario_args(p_cap)
    p_cap.add_argument("--alpha-db", type=float, default=None)
    p_cap.add_argument("--alpha-db-range", default=None,
                       help="alpha grid in dB, start:stop:points")
    p_cap.add_argument("--c-db", type=float, default=None,
                       help="relative link power E{g1}/E{g0} in dB (default 0)")
    p_cap.add_argument("--mc-samples", type=int, default=None)
    p_cap.add_argument("--seed", type=int, default=None)
    p_cap.add_argument("--output", default=None)
    p_cap.add_argument("--config", default=None,
                       help="key = value file supplying defaults for any flag above")

    p_fig = sub.add_parser("figure", help="reproduce a reference figure as CSV + PNG")
    p_fig.add_argument("name", choices=sorted(FIGURE_PRESETS))
    p_fig.add_argument("--alpha-db-range", default=None,
                       help="override the preset alpha grid")
    p_fig.add_argument("--mc-samples", type=int, default=None)
    p_fig.add_argument("--seed", type=int, default=None)
    p_fig.add_argument("--output", default=None, help="output directory (default .)")

    p_val = sub.add_parser("validate", help="run the Monte Carlo agreement suite")
    p_val.add_argument("--mc-samples", type=int, default=1_000_000)
    p_val.add_argument("--seed", type=int, default=42)

    return parser


_CONFIG_KEYS = {
    "constraint": ("constraint", str),
    "desired": ("desired", str),
    "desired-k-db": ("desired_k_db", float),
    "interference": ("interference", str),
    "interference-k-db": ("interference_k_db", float),
    "alpha-db": ("alpha_db", float),
    "alpha-db-range": ("alpha_db_range", str),
    "c-db": ("c_db", float),
    "n-primaries": ("n_primaries", int),
    "mc-samples": ("mc_samples", int),
    "seed": ("seed", int),
    "output": ("output", str),
}


def load_config_file(path: str) -> dict[str, str]:
    """Parse a plain 'key = value' config file; '#' starts a comment."""
    values: dict[str, str] = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path!r}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lower().replace("_", "-")
        if key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


def _apply_config(args: argparse.Namespace, cfg: dict[str, str]) -> None:
    # flags always win; config only fills attributes still at None
    for key, value in cfg.items():
        attr, cast = _CONFIG_KEYS[key]
        if getattr(args, attr, None) is None:
            try:
                setattr(args, attr, cast(value))
            except ValueError as exc:
                raise UsageError(f"config key {key!r}: {exc}") from exc


def _model_from_args(kind: Optional[str], k_db: Optional[float], side: str) -> FadingModel:
    kind = kind or "rayleigh"
    if kind == "rayleigh":
        if k_db is not None:
            raise UsageError(f"--{side}-k-db is only meaningful with --{side} rician")
        return FadingModel.rayleigh()
    return FadingModel.rician(db_to_linear(k_db if k_db is not None else 0.0))


def _scenario_from_args(args: argparse.Namespace) -> RatioScenario:
    desired = _model_from_args(args.desired, args.desired_k_db, "desired")
    interference = _model_from_args(args.interference, args.interference_k_db,
                                    "interference")
    n = args.n_primaries if args.n_primaries is not None else 1
    try:
        return RatioScenario(desired, interference, n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _write_lines(lines: list[str], output: Optional[str]) -> None:
    text = "\n".join(lines) + "\n"
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _run_eval(args: argparse.Namespace) -> int:
    scenario = _scenario_from_args(args)
    try:
        law = ratio_law(scenario)
    except NoClosedFormError as exc:
        raise UsageError(str(exc)) from exc
    if (args.x is None) == (args.x_range is None):
        raise UsageError("provide exactly one of --x or --x-range")
    if args.x is not None:
        try:
            xs = [float(part) for part in args.x.split(",")]
        except ValueError as exc:
            raise UsageError(f"bad --x list: {exc}") from exc
    else:
        start, stop, points = _parse_range(args.x_range)
        if points < 2 or not start <= stop:
            raise UsageError("--x-range needs start <= stop and points >= 2")
        xs = list(np.linspace(start, stop, points))
    fn = law.cdf if args.kind == "cdf" else law.pdf
    lines = ["x,value"]
    for x in xs:
        if x < 0.0:
            raise UsageError(f"evaluation points must be >= 0, got {x!r}")
        lines.append(f"{_fmt(x)},{_fmt(fn(x))}")
    _write_lines(lines, args.output)
    return 0


def _sweep_rows(config: SweepConfig) -> tuple[list[str], list[float]]:
    """Evaluate one sweep; returns (csv lines incl. comments, capacities)."""
    scenario = config.scenario
    average = config.constraint is Constraint.AVERAGE_RECEIVED_POWER
    closed = has_closed_form(scenario)
    use_mc = not average and not closed
    lines: list[str] = []
    if average and not closed:
        raise UsageError(
            "the average constraint needs a closed-form ratio law "
            f"(scenario {ratio_description(scenario)} has none)"
        )
    if use_mc:
        lines.append(
            "# warning: no closed-form ratio law for this scenario; monte carlo "
            f"fallback (samples={config.mc_samples}, seed={config.seed})"
        )
    header = ["alpha_db", "capacity_bits_per_hz"]
    if average:
        header.append("gamma0")
    if use_mc:
        header.append("std_error")
    header.append("awgn_bits_per_hz")
    lines.append(",".join(header))

    capacities = []
    c_lin = db_to_linear(config.c_db)
    for alpha_db in config.alphas_db:
        alpha = db_to_linear(float(alpha_db))
        try:
            query = CapacityQuery(config.constraint, alpha, scenario, c_lin)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if average:
            result = capacity_average(query)
        elif use_mc:
            result = capacity_peak_mc(query, config.mc_samples, config.seed)
        else:
            result = capacity_peak(query)
        row = [_fmt(alpha_db), _fmt(result.capacity)]
        if average:
            row.append(_fmt(result.gamma0))
        if use_mc:
            row.append(_fmt(result.std_error))
        row.append(_fmt(awgn_capacity(alpha)))
        lines.append(",".join(row))
        capacities.append(result.capacity)
    return lines, capacities


def ratio_description(scenario: RatioScenario) -> str:
    if scenario.is_awgn:
        return "no-fading reference"
    def side(model):
        return "rayleigh" if model.is_rayleigh_like else f"rician(K={model.k_factor:g})"
    tail = f" over max of {scenario.n_primaries}" if scenario.n_primaries > 1 else ""
    return f"{side(scenario.desired)}/{side(scenario.interference)}{tail}"


def _run_capacity(args: argparse.Namespace) -> int:
    if args.config is not None:
        _apply_config(args, load_config_file(args.config))
    if args.constraint is None:
        raise UsageError("--constraint is required (avg or peak)")
    if (args.alpha_db is None) == (args.alpha_db_range is None):
        raise UsageError("provide exactly one of --alpha-db or --alpha-db-range")
    if args.alpha_db is not None:
        start = stop = float(args.alpha_db)
        points = 1
    else:
        start, stop, points = _parse_range(args.alpha_db_range)
        if points < 2:
            raise UsageError("--alpha-db-range needs points >= 2")
    scenario = _scenario_from_args(args)
    config = SweepConfig(
        alpha_start_db=start,
        alpha_stop_db=stop,
        alpha_points=points,
        constraint=Constraint(args.constraint),
        desired=scenario.desired,
        interference=scenario.interference,
        c_db=args.c_db if args.c_db is not None else 0.0,
        n_primaries=scenario.n_primaries,
        mc_samples=args.mc_samples if args.mc_samples is not None else 1_000_000,
        seed=args.seed if args.seed is not None else 0,
        output=args.output,
    )
    lines, _ = _sweep_rows(config)
    _write_lines(lines, config.output)
    return 0


def _run_figure(args: argparse.Namespace) -> int:
    from .plotting import save_capacity_figure

    preset = FIGURE_PRESETS[args.name]
    if args.alpha_db_range is not None:
        start, stop, points = _parse_range(args.alpha_db_range)
        if points < 2:
            raise UsageError("--alpha-db-range needs points >= 2")
    else:
        start, stop, points = DEFAULT_ALPHA_RANGE
    out_dir = Path(args.output) if args.output is not None else Path(".")
    out_dir.mkdir(parents=True, exist_ok=True)

    alphas_db = np.linspace(start, stop, points)
    plotted = []
    for curve in preset.curves:
        config = SweepConfig(
            alpha_start_db=start,
            alpha_stop_db=stop,
            alpha_points=points,
            constraint=curve.constraint,
            desired=curve.desired,
            interference=curve.interference,
            c_db=curve.c_db,
            n_primaries=curve.n_primaries,
            mc_samples=args.mc_samples if args.mc_samples is not None else 1_000_000,
            seed=args.seed if args.seed is not None else 0,
        )
        lines, capacities = _sweep_rows(config)
        csv_path = out_dir / f"{preset.name}_{curve.label}.csv"
        comments = [f"# preset: {preset.name}", f"# curve: {curve.label}"]
        csv_path.write_text("\n".join(comments + lines) + "\n")
        print(csv_path)
        plotted.append((curve.label, capacities))

    png_path = out_dir / f"{preset.name}.png"
    save_capacity_figure(png_path, alphas_db, plotted, preset.title)
    print(png_path)
    return 0


def _run_validate(args: argparse.Namespace) -> int:
    report, ok = run_validation(samples=args.mc_samples, seed=args.seed)
    sys.stdout.write(report)
    return 0 if ok else 1


def _merge_range_values(argv: list[str]) -> list[str]:
    # 'start:stop:points' values with a negative start look like option
    # strings to argparse; fold them into the '--flag=value' form.
    merged = []
    skip = False
    for i, token in enumerate(argv):
        if skip:
            skip = False
            continue
        if (token in ("--alpha-db-range", "--x-range")
                and i + 1 < len(argv) and argv[i + 1].startswith("-")):
            merged.append(f"{token}={argv[i + 1]}")
            skip = True
        else:
            merged.append(token)
    return merged


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_merge_range_values(list(argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {
        "eval": _run_eval,
        "capacity": _run_capacity,
        "figure": _run_figure,
        "validate": _run_validate,
    }
    try:
        return handlers[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
