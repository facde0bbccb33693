from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import StrEnum
from typing import Literal
import numpy as np
import numpy.typing as npt
from sawgyro.exceptions import SweepError

logger = logging.getLogger(__name__)

type Real = float | npt.NDArray[np.float64]
type Complex = complex | npt.NDArray[np.complex128]


@dataclass(frozen=True, slots=True)
class NoiseBudget:
    """Quadrature noise referred to X, per frequency (dimensionless * s)."""

    n_zpf: Real
    n_ba: Real  # before squeeze attenuation
    n_ang: Real
    n_im: float
    n_add: Real
    n_x_total: Real
    symmetrized: bool


@dataclass(frozen=True, slots=True)
class PhotocurrentPsd:
    raw: Complex  # real to rounding; kept complex so that can be checked
    symmetric: Real


@dataclass(frozen=True, slots=True)
class SqlReport:
    co_star: float
    gap: float
    reaches_sql: bool
    crossing_r: float  # squeeze parameter at which the gap vanishes
    sql_condition_r: float  # sufficient condition stated for rotating platforms


@dataclass(frozen=True, slots=True)
class DesignBounds:
    omega_sq_ub: float  # units of gamma_x * gamma_y
    co_min: float


@dataclass(frozen=True, slots=True)
class SensitivityLimit:
    limit: float
    co_at_equality: float


@dataclass(frozen=True, slots=True)
class SensitivityRatio:
    ratio: float
    bound: float


@dataclass(frozen=True, slots=True)
class OptimalRatio:
    co: float
    ratio: float
    bound: float


@dataclass@dataclass(frozen=True, slots=True)
class LimitSummary:
    vacuum: float
    squeezed: float
    co_at_equality: float


@dataclass(frozen=True, slots=True)
class BoundsReport:
    """Range bounds are None below the cooperativity floor."""

    omega_sq_ub_vacuum: float | None
    omega_sq_ub_squeezed: float | None
    co_min_vacuum: float
    co_min_squeezed: float
    co_star: float
    sensitivity_limits: LimitSummary


(frozen=True, slots=True)
class MetricsReport:
    signal: float
    psd: float
    snr_per_photon: float
    sensitivity: float
    limit: float
    ratio_to_vacuum: float


class SweepVariable(StrEnum):
    OMEGA = "omega"
    OMEGA_ROT_SQ = "omega_rot_sq"
    CO = "co"
    R = "r"


@dataclass(frozen=True, slots=True)
class SweepSpec:
    variable: SweepVariable
    start: float
    stop: float
    points: int
    scale: Literal["linear", "log"] = "linear"

    def __post_init__(self):
        if not self.start < self.stop:
            raise SweepError(f"sweep start {self.start} must be below stop {self.stop}")
        if self.points < 2:
            raise SweepError(f"sweep needs at least 2 points, got {self.points}")
        if self.scale == "log" and self.start <= 0:
            raise SweepError("log sweeps need a positive start")

    @classmethod
    def parse(cls, text: str) -> SweepSpec:
        """Parse `<var>:<start>:<stop>:<points>[:log]`."""
        parts = text.split(":")
        if len(parts) not in (4, 5):
            raise SweepError(
                f"expected <var>:<start>:<stop>:<points>[:log], got '{text}'"
            )
        if len(parts) == 5 and parts[4] not in ("log", "linear"):
            raise SweepError(f"unknown sweep scale '{parts[4]}'")
        try:
            variable = SweepVariable(parts[0])
            start, stop, points = float(parts[1]), float(parts[2]), int(parts[3])
        except ValueError as exc:
            raise SweepError(f"malformed sweep '{text}': {exc}") from exc
        scale: Literal["linear", "log"] = (
            "log" if len(parts) == 5 and parts[4] == "log" else "linear"
        )
        return cls(
            variable=variable, start=start, stop=stop, points=points, scale=scale
        )

    def grid(self) -> npt.NDArray[np.float64]:
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)
