"""Physical parameters of the two-cavity gyroscope and its quantum input.

All frequencies and rates are angular, in rad/s. The readout cavity is driven
on resonance with drive phase pi/2, and the squeezed input has squeeze phase
pi; none of these are parameters.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Self
import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy import constants
from sawgyro.config import Limits
from sawgyro.exceptions import (
    GyroError,
    NegativeOccupancy,
    NegativeRotation,
    NegativeSqueeze,
    NonPositiveRate,
    ParameterErrors,
    SqueezeOutOfRange,
)

logger = logging.getLogger(__name__)

_RATES = ("omega_b", "kappa", "gamma_x", "gamma_y", "g")


class GyroParams(BaseModel):
    """Deserializer for parameter files; flat keys, unknown keys rejected."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    omega_b: float  # mechanical frequency of both modes
    kappa: float  # readout cavity decay
    gamma_x: float
    gamma_y: float
    g: float  # linearized coupling, equal for both coupling channels
    n_in: float = 1.0  # drive photon number
    mass: float = 1e-15  # kg, effective mass of the oscillator
    n_th: float = 0.0

    @classmethod
    def default(cls) -> Self:
        """Normalized rates with gamma = 1; absolute values are arbitrary."""
        return cls(omega_b=1e3, kappa=1e6, gamma_x=1.0, gamma_y=1.0, g=250.0)

    @property
    def cooperativity(self) -> float:
        return cooperativity(self.g, self.kappa, self.gamma_x)


@dataclass(frozen=True, slots=True)
class Vacuum:
    @property
    def r(self) -> float:
        return 0.0

    def __str__(self) -> str:
        return "vacuum"


@dataclass(frozen=True, slots=True)
class SqueezedVacuum:
    r: float

    def __str__(self) -> str:
        return f"squeezed:r={self.r}"


type InputField = Vacuum | SqueezedVacuum


@dataclass(frozen=True, slots=True)
class AngularVelocity:
    omega_rot_sq: float

    def __post_init__(self):
        if self.omega_rot_sq < 0:
            raise NegativeRotation(self.omega_rot_sq)

    @classmethod
    def from_rate(cls, omega_rot: float) -> Self:
        return cls(omega_rot_sq=omega_rot**2)


@dataclass(frozen=True, slots=True)
class ValidatedConfig:
    params: GyroParams
    input: InputField
    adiabatic_ok: bool
    adiabatic_threshold: float


def validate(
    params: GyroParams | ValidatedConfig,
    input: InputField | None = None,
    *,
    limits: Limits | None = None,
) -> ValidatedConfig:
    """Check every parameter invariant and flag the adiabatic regime.

    All violations are collected and raised together as `ParameterErrors`.
    """
    if isinstance(params, ValidatedConfig):
        if limits is None:
            limits = Limits(adiabatic_threshold=params.adiabatic_threshold)
        input = input or params.input
        params = params.params
    limits = limits or Limits()
    input = input or Vacuum()

    errors: list[GyroError] = []
    for name in _RATES:
        value = getattr(params, name)
        if not value > 0:
            errors.append(NonPositiveRate(name=name, value=value))
    if not params.n_in > 0:
        errors.append(NonPositiveRate(name="n_in", value=params.n_in))
    if not params.mass > 0:
        errors.append(NonPositiveRate(name="mass", value=params.mass))
    if params.n_th < 0:
        errors.append(NegativeOccupancy(params.n_th))
    match input:
        case SqueezedVacuum(r=r) if r < 0:
            errors.append(NegativeSqueeze(r))
        case SqueezedVacuum(r=r) if r > limits.r_max:
            errors.append(SqueezeOutOfRange(r=r, r_max=limits.r_max))
        case _:
            pass
    if errors:
        raise ParameterErrors(errors=errors)

    ratio = params.omega_b / params.kappa
    adiabatic_ok = ratio <= limits.adiabatic_threshold
    if not adiabatic_ok:
        logger.warning(
            f"omega_b/kappa = {ratio:.3g} exceeds {limits.adiabatic_threshold:.3g}; "
            f"closed-form spectra are not trusted"
        )
    return ValidatedConfig(
        params=params,
        input=input,
        adiabatic_ok=adiabatic_ok,
        adiabatic_threshold=limits.adiabatic_threshold,
    )


def cooperativity(g: float, kappa: float, gamma_x: float) -> float:
    _require_positive(g=g, kappa=kappa, gamma_x=gamma_x)
    return 4 * g**2 / (kappa * gamma_x)


def g_from_cooperativity(co: float, kappa: float, gamma_x: float) -> float:
    _require_positive(co=co, kappa=kappa, gamma_x=gamma_x)
    return math.sqrt(co * kappa * gamma_x) / 2


def thermal_occupancy(omega_b: float, temperature: float) -> float:
    """Bose-Einstein occupancy of a mode at `omega_b` rad/s and `temperature` K."""
    _require_positive(omega_b=omega_b)
    if temperature <= 0:
        return 0.0
    return float(1 / np.expm1(constants.hbar * omega_b / (constants.k * temperature)))


def squeeze_db(r: float) -> float:
    return 10 * math.log10(math.exp(2 * r))


def squeeze_r(db: float) -> float:
    return db * math.log(10) / 20


def parse_input_field(text: str) -> InputField:
    """Parse `vacuum` or `squeezed:r=<float>`."""
    text = text.strip().lower()
    if text == "vacuum":
        return Vacuum()
    if match := re.fullmatch(r"squeezed:r=(\S+)", text):
        try:
            return SqueezedVacuum(r=float(match.group(1)))
        except ValueError:
            pass
    raise ValueError(f"expected 'vacuum' or 'squeezed:r=<float>', got '{text}'")


def load_params(path: Path) -> GyroParams:
    logger.debug(f"Loading parameters from {path}")
    return GyroParams.model_validate_json(path.read_text())


def _require_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0:
            raise NonPositiveRate(name=name, value=value)
