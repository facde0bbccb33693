"""Checks on the closed-form resonance expressions and the figure curves."""

from __future__ import annotations

import logging
import math
from typing import ClassVar
import numpy as np
from scipy.optimize import brentq
from sawgyro import figures, metrics, spectra
from sawgyro.check import (
    BOTH,
    CheckOutcome,
    Context,
    Level,
    register,
    relative_error,
)
from sawgyro.params import SqueezedVacuum, Vacuum, squeeze_db, squeeze_r

logger = logging.getLogger(__name__)


@register
class RangeBoundaryIdentity:
    description = "SNR per photon is exactly one on the readable-range bound"
    anchor = "metrics.omega_range, metrics.snr_per_photon_resonance"
    levels: ClassVar[frozenset[Level]] = BOTH

    def run(self, *, context: Context) -> CheckOutcome:
        rng = context.rng()
        cfg = context.cfg
        product = cfg.params.gamma_x * cfg.params.gamma_y
        errors = []
        for _ in range(max(context.samples, 100)):
            r = rng.uniform(0, 1.73)
            input = SqueezedVacuum(r=r) if rng.random() < 0.5 else Vacuum()
            co = metrics.co_min(input) * rng.uniform(1, 20)
            bound = metrics.omega_range(co, input) * product
            snr = metrics.snr_per_photon_resonance(cfg, co, bound, input)
            errors.append(abs(snr - 1))
        return CheckOutcome.within(errors, 1e-8, "|SNR - 1| on the bound")


@register
class CooperativityFloors:
    description = "Minimum cooperativity is 1/12 for vacuum and falls with squeezing"
    anchor = "metrics.co_min"
    levels: ClassVar[frozenset[Level]] = BOTH

    def run(self, *, context: Context) -> CheckOutcome:  # noqa: ARG002
        vacuum = metrics.co_min(Vacuum())
        unsqueezed = metrics.co_min(SqueezedVacuum(r=0.0))
        squeezed = metrics.co_min(SqueezedVacuum(r=1.73))
        floors = [metrics.co_min(SqueezedVacuum(r=r)) for r in np.linspace(0, 3, 31)]
        falling = bool(np.all(np.diff(floors) < 0))
        return CheckOutcome.all_of(
            CheckOutcome(passed=vacuum == 1 / 12, detail=f"vacuum floor {vacuum!r}"),
            CheckOutcome.within(
                [relative_error(unsqueezed, 1 / 12)], 1e-12, "r=0 floor"
            ),
            CheckOutcome.within(
                [relative_error(squeezed, 0.03484)], 1e-3, "r=1.73 floor"
            ),
            CheckOutcome(passed=falling, detail="floor decreasing in r"),
        )


@register
class StandardQuantumLimit:
    description = "SQL gap at the best cooperativity and the squeeze that closes it"
    anchor = "spectra.sql_report"
    levels: ClassVar[frozenset[Level]] = BOTH

    def run(self, *, context: Context) -> CheckOutcome:
        cfg = context.cfg
        p = cfg.params
        quarter = p.gamma_x * p.gamma_y / 4
        at_rest = spectra.sql_report(cfg, 0.0, Vacuum())
        rotating = spectra.sql_report(cfg, quarter, Vacuum())
        stated = 0.25 * p.gamma_y / (quarter + quarter)

        def gap(r: float) -> float:
            return spectra.sql_report(cfg, quarter, SqueezedVacuum(r=r)).gap

        crossing = brentq(gap, 0.0, 2.0, xtol=1e-12)
        reported = spectra.sql_report(cfg, quarter, SqueezedVacuum(r=1)).crossing_r
        return CheckOutcome.all_of(
            CheckOutcome(
                passed=at_rest.gap == 0 and at_rest.reaches_sql,
                detail=f"vacuum gap at rest {at_rest.gap:.3g}",
            ),
            CheckOutcome.within(
                [relative_error(rotating.gap, stated)], 1e-10, "rotating gap"
            ),
            CheckOutcome.within(
                [abs(crossing - math.log(2))], 1e-6, "squeezed crossing"
            ),
            CheckOutcome.within([abs(crossing - reported)], 1e-9, "reported crossing"),
        )


@register
class SensitivityLimits:
    description = "Resonance sensitivity meets its lower limit at the equality point"
    anchor = "metrics.sensitivity_limit"
    levels: ClassVar[frozenset[Level]] = BOTH

    def run(self, *, context: Context) -> CheckOutcome:
        rng = context.rng()
        cfg = context.cfg
        errors = []
        for _ in range(max(context.samples, 100)):
            omega_rot_sq = rng.uniform(0, 10)
            for input in (Vacuum(), SqueezedVacuum(r=rng.uniform(0, 3))):
                limit = metrics.sensitivity_limit(cfg, omega_rot_sq, input)
                value = metrics.sensitivity_resonance(
                    cfg, limit.co_at_equality, omega_rot_sq, input
                )
                errors.append(relative_error(value, limit.limit))

        vacuum = metrics.sensitivity_resonance(cfg, 0.25, 0.0, Vacuum())
        squeezed = metrics.sensitivity_resonance(
            cfg, 0.25, 0.0, SqueezedVacuum(r=math.log(2))
        )
        return CheckOutcome.all_of(
            CheckOutcome.within(errors, 1e-10, "limit attainment"),
            CheckOutcome.within(
                [relative_error(vacuum, 0.125)], 1e-12, "vacuum at rest"
            ),
            CheckOutcome.within(
                [relative_error(squeezed, 0.098821)], 1e-4, "squeezed at rest"
            ),
        )


@register
class SqueezingRatioCap:
    description = "Squeezing improves sensitivity by at most sqrt(2)/2"
    anchor = "metrics.sensitivity_ratio, metrics.optimal_ratio"
    levels: ClassVar[frozenset[Level]] = BOTH

    def run(self, *, context: Context) -> CheckOutcome:
        rng = context.rng()
        cfg = context.cfg
        errors = []
        for r in rng.uniform(0.05, 5, size=20):
            best = metrics.optimal_ratio(float(r), cfg)
            errors.append(abs(best.ratio - math.sqrt((1 + math.exp(-2 * r)) / 2)))
        excess = []
        for _ in range(context.samples):
            co = rng.uniform(1e-3, 1e3)
            omega_rot_sq, r = rng.uniform(0, 1e2), rng.uniform(0, 6)
            ratio = metrics.sensitivity_ratio(co, omega_rot_sq, cfg, r)
            excess.append(max(ratio.ratio - ratio.bound, 0.0))
        far = metrics.optimal_ratio(20.0, cfg).ratio
        return CheckOutcome.all_of(
            CheckOutcome.within(errors, 1e-8, "golden-section maximum"),
            CheckOutcome.within(excess, 1e-12, "ratio above bound"),
            CheckOutcome.within([abs(far - math.sqrt(2) / 2)], 1e-6, "r=20 limit"),
        )


@register
class FigureMonotonicity:
    description = "Figure curves rise and fall the way range, SNR and sensitivity must"
    anchor = "figures.FIGURES"
    levels: ClassVar[frozenset[Level]] = BOTH

    def run(self, *, context: Context) -> CheckOutcome:
        options = context.config.options.figures
        failures = []

        def expect(label: str, values: np.ndarray, sign: int) -> None:
            steps = np.diff(values)
            if not np.all(np.isfinite(values)) or not np.all(sign * steps > 0):
                failures.append(label)

        ranges = figures.build("range-vs-squeezing", options)
        for label, frame in ranges.items():
            if label.startswith("squeezed"):
                expect(label, frame["omega_sq_ub"].to_numpy(), +1)
        vacuum_by_co = [
            frame["omega_sq_ub"].iloc[0]
            for label, frame in ranges.items()
            if label.startswith("vacuum")
        ]
        expect("range across cooperativities", np.array(vacuum_by_co), +1)

        for name in ("snr-vs-rotation", "snr-vs-rotation-squeezed"):
            for label, frame in figures.build(name, options).items():
                expect(f"{name} {label}", frame["snr_per_photon"].to_numpy(), -1)
                if abs(frame["snr_per_photon"].iloc[-1] - 1) > 1e-8:
                    failures.append(f"{name} {label} does not end at SNR 1")
        for label, frame in figures.build("snr-vs-squeezing", options).items():
            expect(f"snr-vs-squeezing {label}", frame["snr_per_photon"].to_numpy(), +1)
        for label, frame in figures.build("sensitivity-vs-rotation", options).items():
            values = frame["sensitivity"].to_numpy()
            expect(f"sensitivity-vs-rotation {label}", values, +1)
        for label, frame in figures.build("sensitivity-vs-squeezing", options).items():
            name = f"sensitivity-vs-squeezing {label}"
            expect(name, frame["sensitivity"].to_numpy(), -1)
            beyond = frame[frame["r"] >= math.log(2)]
            if not np.all(beyond["sensitivity"] < beyond["sql"]):
                failures.append(f"{name} not below the vacuum limit")
            if not np.all(frame["sensitivity"] > frame["asymptote"]):
                failures.append(f"{name} crosses its asymptote")
        for label, frame in figures.build("sensitivity-ratio", options).items():
            if not np.all(frame["ratio"] <= frame["bound"] + 1e-12):
                failures.append(f"sensitivity-ratio {label} above bound")

        return CheckOutcome(
            passed=not failures,
            detail="all curves monotone" if not failures else ", ".join(failures),
        )


@register
class SqueezeDecibels:
    description = "15 dB of squeezing corresponds to r = 1.7269"
    anchor = "params.squeeze_db, params.squeeze_r"
    levels: ClassVar[frozenset[Level]] = BOTH

    def run(self, *, context: Context) -> CheckOutcome:  # noqa: ARG002
        return CheckOutcome.all_of(
            CheckOutcome.within([abs(squeeze_db(1.7269) - 15)], 0.05, "dB of r=1.7269"),
            CheckOutcome.within(
                [abs(squeeze_r(squeeze_db(1.73)) - 1.73)], 1e-12, "inverse"
            ),
        )
