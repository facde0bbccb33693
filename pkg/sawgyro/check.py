from __future__ import annotations

import logging
import re
from collections.abc import Iterable
from dataclasses import dataclass
from enum import StrEnum
from typing import ClassVar, Protocol, runtime_checkable
import numpy as np
from sawgyro.config import Config
from sawgyro.params import GyroParams, ValidatedConfig, validate

logger = logging.getLogger(__name__)
CHECKS: dict[str, type[Check]] = {}


def register(cls: type[Check]) -> type:
    """Register a type as a verification check."""
    global CHECKS
    name = _camel_case(cls.__name__)
    CHECKS[name] = cls
    return cls


class Level(StrEnum):
    QUICK = "quick"
    FULL = "full"


BOTH = frozenset(Level)


@dataclass(frozen=True, slots=True)
class Context:
    level: Level
    config: Config

    @property
    def cfg(self) -> ValidatedConfig:
        return validate(GyroParams.default(), limits=self.config.options.limits)

    @property
    def samples(self) -> int:
        options = self.config.options.verify
        if self.level == Level.QUICK:
            return options.quick_samples
        return options.full_samples

    @property
    def periods(self) -> int:
        return 10 if self.level == Level.QUICK else 100

    def rng(self) -> np.random.Generator:
        """A fresh generator, so draws do not depend on check scheduling."""
        return np.random.default_rng(self.config.options.verify.seed)


@dataclass(frozen=True, slots=True)
class CheckOutcome:
    passed: bool
    detail: str

    @classmethod
    def within(
        cls, errors: Iterable[float], tolerance: float, what: str
    ) -> CheckOutcome:
        worst = max(errors, default=0.0)
        return cls(
            passed=bool(worst <= tolerance),
            detail=f"{what}: worst {worst:.3g} (tolerance {tolerance:.1g})",
        )

    @classmethod
    def all_of(cls, *outcomes: CheckOutcome) -> CheckOutcome:
        return cls(
            passed=all(outcome.passed for outcome in outcomes),
            detail="; ".join(outcome.detail for outcome in outcomes),
        )


@runtime_checkable
class Check(Protocol):
    """A property verified numerically; `run` is called from a worker thread."""

    description: ClassVar[str]
    # the functions whose results the check certifies
    anchor: ClassVar[str]
    levels: ClassVar[frozenset[Level]]

    def run(self, *, context: Context) -> CheckOutcome: ...


def relative_error(value: float, expected: float) -> float:
    return abs(value - expected) / abs(expected) if expected else abs(value)


def _camel_case(s: str) -> str:
    return re.sub(
        "([a-z0-9])([A-Z])",
        r"\1_\2",
        re.sub("(.)([A-Z][a-z]+)", r"\1_\2", s),
    ).lower()
