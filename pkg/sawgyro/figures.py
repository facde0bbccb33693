"""Dimensionless curve families for range, SNR and sensitivity.

Every figure is a set of curves, one CSV file each. Rates are normalized to
gamma_x = gamma_y = 1 and a single drive photon, so squared angular
velocities read in units of gamma_x * gamma_y, and sensitivities are
sqrt(N_in) times the squared-angular-velocity resolution.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO
import numpy as np
import pandas as pd
from sawgyro import metrics
from sawgyro.config import Figures
from sawgyro.params import GyroParams, SqueezedVacuum, ValidatedConfig, Vacuum, validate

logger = logging.getLogger(__name__)

type Curves = dict[str, pd.DataFrame]
type FigureBuilder = Callable[[FigureContext], Curves]

FIGURES: dict[str, FigureBuilder] = {}
# short figure ids, each naming one entry of FIGURES
ALIASES: dict[str, str] = {}
FLOAT_FORMAT = "%.17g"


@dataclass(frozen=True, slots=True)
class FigureContext:
    options: Figures
    cfg: ValidatedConfig

    @classmethod
    def normalized(cls, options: Figures | None = None) -> FigureContext:
        return cls(options=options or Figures(), cfg=validate(GyroParams.default()))

    def r_axis(self, stop: float | None = None) -> np.ndarray:
        return np.linspace(0, stop or self.options.squeeze_r, self.options.points)

    def rotation_axis(self, stop: float) -> np.ndarray:
        return np.linspace(0, stop, self.options.points)


def figure(name: str, *, alias: str) -> Callable[[FigureBuilder], FigureBuilder]:
    def decorator(builder: FigureBuilder) -> FigureBuilder:
        FIGURES[name] = builder
        ALIASES[alias] = name
        return builder

    return decorator


@figure("range-vs-squeezing", alias="fig2")
def range_vs_squeezing(ctx: FigureContext) -> Curves:
    """Upper bound of the readable squared angular velocity against r."""
    r = ctx.r_axis()
    curves: Curves = {}
    for co in ctx.options.cooperativities:
        squeezed = [metrics.omega_range(co, SqueezedVacuum(r=value)) for value in r]
        vacuum = np.full_like(r, metrics.omega_range(co, Vacuum()))
        curves[f"squeezed_co={co:g}"] = pd.DataFrame({"r": r, "omega_sq_ub": squeezed})
        curves[f"vacuum_co={co:g}"] = pd.DataFrame({"r": r, "omega_sq_ub": vacuum})
    return curves


@figure("snr-vs-rotation", alias="fig3a")
def snr_vs_rotation(ctx: FigureContext) -> Curves:
    """SNR per photon up to the vacuum range bound, where it reaches one."""
    return _snr_vs_rotation(ctx, Vacuum())


@figure("snr-vs-rotation-squeezed", alias="fig3b")
def snr_vs_rotation_squeezed(ctx: FigureContext) -> Curves:
    return _snr_vs_rotation(ctx, SqueezedVacuum(r=ctx.options.squeeze_r))


@figure("snr-vs-squeezing", alias="fig3c")
def snr_vs_squeezing(ctx: FigureContext) -> Curves:
    """SNR per photon against r at omega_rot^2 = gamma_x * gamma_y."""
    r = ctx.r_axis()
    omega_rot_sq = ctx.cfg.params.gamma_x * ctx.cfg.params.gamma_y
    curves: Curves = {}
    for co in ctx.options.snr_vs_r_cooperativities:
        snr = [
            metrics.snr_per_photon_resonance(
                ctx.cfg, co, omega_rot_sq, SqueezedVacuum(r=value)
            )
            for value in r
        ]
        curves[f"co={co:g}"] = pd.DataFrame({"r": r, "snr_per_photon": snr})
    return curves


@figure("sensitivity-vs-rotation", alias="fig4a")
def sensitivity_vs_rotation(ctx: FigureContext) -> Curves:
    curves: Curves = {}
    squeezed = SqueezedVacuum(r=ctx.options.squeeze_r)
    inputs = (("vacuum", Vacuum()), ("squeezed", squeezed))
    for co in ctx.options.cooperativities:
        for label, input in inputs:
            omega_rot_sq = ctx.rotation_axis(metrics.omega_range(co, input))
            sensitivity = [
                _scaled_sensitivity(ctx.cfg, co, value, input) for value in omega_rot_sq
            ]
            curves[f"{label}_co={co:g}"] = pd.DataFrame(
                {"omega_rot_sq": omega_rot_sq, "sensitivity": sensitivity}
            )
    return curves


@figure("sensitivity-vs-squeezing", alias="fig4b")
def sensitivity_vs_squeezing(ctx: FigureContext) -> Curves:
    """Squeezed sensitivity at zero rotation against r, with the vacuum limit line.

    The asymptote column is the r -> infinity value at the same cooperativity.
    """
    r = ctx.r_axis(ctx.options.r_extended)
    cfg = ctx.cfg
    vacuum_limit = metrics.sensitivity_limit(cfg, 0.0, Vacuum()).limit
    sql = vacuum_limit * math.sqrt(cfg.params.n_in)
    product = cfg.params.gamma_x * cfg.params.gamma_y
    detuned = product / 4
    curves: Curves = {}
    for co in ctx.options.cooperativities:
        sensitivity = [
            _scaled_sensitivity(cfg, co, 0.0, SqueezedVacuum(r=value)) for value in r
        ]
        asymptote = math.sqrt(2 * detuned * co * product) * detuned / (4 * co * product)
        curves[f"co={co:g}"] = pd.DataFrame(
            {
                "r": r,
                "sensitivity": sensitivity,
                "sql": np.full_like(r, sql),
                "asymptote": np.full_like(r, asymptote),
            }
        )
    return curves


@figure("sensitivity-ratio", alias="fig4c")
def sensitivity_ratio(ctx: FigureContext) -> Curves:
    """Squeezed over vacuum sensitivity at zero rotation, with its upper bound."""
    r = ctx.r_axis(ctx.options.r_extended)
    curves: Curves = {}
    for co in ctx.options.cooperativities:
        ratios = [metrics.sensitivity_ratio(co, 0.0, ctx.cfg, value) for value in r]
        curves[f"co={co:g}"] = pd.DataFrame(
            {
                "r": r,
                "ratio": [ratio.ratio for ratio in ratios],
                "bound": [ratio.bound for ratio in ratios],
            }
        )
    return curves


def build(name: str, options: Figures | None = None) -> Curves:
    """Build a figure by name or by its short id."""
    name = ALIASES.get(name, name)
    if name not in FIGURES:
        known = ", ".join([*ALIASES, *FIGURES])
        raise KeyError(f"unknown figure '{name}', expected one of {known}")
    logger.debug(f"Building figure '{name}'")
    return FIGURES[name](FigureContext.normalized(options))


def write_csv(frame: pd.DataFrame, fp: TextIO, metadata: Mapping[str, object]) -> None:
    """Write `#` metadata lines, a header row and full-precision LF-terminated rows."""
    for key, value in metadata.items():
        fp.write(f"# {key}: {value}\n")
    frame.to_csv(fp, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def write_figure(
    name: str, curves: Curves, out_dir: Path, metadata: Mapping[str, object]
) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for label, frame in curves.items():
        path = out_dir / f"{name}__{label}.csv"
        with path.open("w", newline="") as fp:
            write_csv(frame, fp, {"figure": name, "curve": label, **metadata})
        paths.append(path)
        logger.debug(f"Wrote {len(frame)} rows to {path}")
    return paths


def _snr_vs_rotation(ctx: FigureContext, input: Vacuum | SqueezedVacuum) -> Curves:
    curves: Curves = {}
    product = ctx.cfg.params.gamma_x * ctx.cfg.params.gamma_y
    for co in ctx.options.cooperativities:
        omega_rot_sq = ctx.rotation_axis(metrics.omega_range(co, input))
        snr = [
            metrics.snr_per_photon_resonance(ctx.cfg, co, value * product, input)
            for value in omega_rot_sq
        ]
        curves[f"co={co:g}"] = pd.DataFrame(
            {"omega_rot_sq": omega_rot_sq, "snr_per_photon": snr}
        )
    return curves


def _scaled_sensitivity(
    cfg: ValidatedConfig, co: float, omega_rot_sq: float, input: Vacuum | SqueezedVacuum
) -> float:
    product = cfg.params.gamma_x * cfg.params.gamma_y
    value = metrics.sensitivity_resonance(cfg, co, omega_rot_sq * product, input)
    return value * math.sqrt(cfg.params.n_in)
