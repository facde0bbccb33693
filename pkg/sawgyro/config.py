from __future__ import annotations

import logging
import os
import tomllib
from dataclasses import dataclass
from pathlib import Path
from typing import Self
from pydantic import BaseModel, ConfigDict, Field

ENV_CONFIG_PATH = "SAWGYRO_CONFIG"
logger = logging.getLogger(__name__)


class Limits(BaseModel):
    """Validity thresholds applied to parameters and approximations."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    # Closed-form spectra are trusted only when omega_b / kappa is at most this.
    adiabatic_threshold: float = Field(default=1e-2, gt=0)

    # Largest squeeze parameter accepted on input.
    r_max: float = Field(default=5.0, gt=0)

    # Resonance approximations log a warning above this gamma / omega_b ratio.
    resonance_warn_ratio: float = Field(default=1e-2, gt=0)


class Figures(BaseModel):
    """Curve families emitted by `sawgyro figure`."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    cooperativities: list[float] = Field(default_factory=lambda: [0.75, 1.0, 1.25])
    snr_vs_r_cooperativities: list[float] = Field(
        default_factory=lambda: [0.25, 0.5, 1.0]
    )

    # Highest squeeze parameter reached experimentally (15 dB).
    squeeze_r: float = Field(default=1.73, gt=0)

    # Extended squeeze axis used to show the sensitivity asymptote.
    r_extended: float = Field(default=6.0, gt=0)

    points: int = Field(default=201, ge=2)


class Verify(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    seed: int = 20240607
    quick_samples: int = Field(default=20, ge=1)
    full_samples: int = Field(default=200, ge=1)


class ConfigOptions(BaseModel):
    """Model through which the configuration file (if any) is deserialized.

    This is the definitive source of information on what keys are valid in the
    configuration file, and what default values for each are used when not defined.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    limits: Limits = Field(default_factory=Limits)
    figures: Figures = Field(default_factory=Figures)
    verify: Verify = Field(default_factory=Verify)


@dataclass
class Config:
    path: Path | None
    options: ConfigOptions

    @classmethod
    def find_or_default(cls) -> Self:
        config_file = {}
        if path := _default_config_search():
            with path.open("rb") as fp:
                logger.debug(f"Using config file {path}")
                config_file = tomllib.load(fp)
        return cls(path=path, options=ConfigOptions(**config_file))

    @classmethod
    def default(cls) -> Self:
        return cls(path=None, options=ConfigOptions())


def _default_config_search() -> Path | None:
    if env := os.environ.get(ENV_CONFIG_PATH):
        path = Path(env).expanduser()
        if path.is_file():
            return path
        raise ValueError(f"{ENV_CONFIG_PATH} is not a file")

    default = Path("~/.config/sawgyro/config.toml").expanduser()
    return default if default.exists() else None
