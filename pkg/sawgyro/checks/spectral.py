"""Checks on the adiabatic noise spectra and the exact sensitivity."""

from __future__ import annotations

import logging
from typing import ClassVar
import numpy as np
from sawgyro import metrics, spectra
from sawgyro.check import BOTH, CheckOutcome, Context, Level, register
from sawgyro.params import GyroParams, SqueezedVacuum, Vacuum, validate

logger = logging.getLogger(__name__)


def _random_point(rng: np.random.Generator, *, span: float = 20.0):
    params = GyroParams(
        omega_b=rng.uniform(1e2, 1e4),
        kappa=1e7,
        gamma_x=rng.uniform(0.2, 5),
        gamma_y=rng.uniform(0.2, 5),
        g=1.0,
    )
    cfg = validate(params)
    co = rng.uniform(0.05, 5)
    omega_rot_sq = rng.uniform(0, 4) * params.gamma_x * params.gamma_y
    input = SqueezedVacuum(r=rng.uniform(0, 2)) if rng.random() < 0.5 else Vacuum()
    width = span * max(params.gamma_x, params.gamma_y)
    omega = params.omega_b + rng.uniform(-width, width)
    return omega, cfg, co, omega_rot_sq, input


@register
class SymmetrizationCancellation:
    description = "Symmetrizing the raw photocurrent PSD removes the X/input cross term"
    anchor = "spectra.photocurrent_psd"
    levels: ClassVar[frozenset[Level]] = BOTH

    def run(self, *, context: Context) -> CheckOutcome:
        rng = context.rng()
        errors = []
        for _ in range(max(context.samples, 50)):
            omega, cfg, co, omega_rot_sq, input = _random_point(rng)
            plus = spectra.photocurrent_psd(omega, cfg, co, omega_rot_sq, input)
            minus = spectra.photocurrent_psd(-omega, cfg, co, omega_rot_sq, input)
            symmetrized = ((plus.raw + minus.raw) / 2).real
            errors.append(abs(symmetrized - plus.symmetric) / plus.symmetric)
        return CheckOutcome.within(errors, 1e-10, "raw symmetrized vs symmetric")


@register
class RealityPairing:
    description = "Raw photocurrent PSD is real since chi_x(-d) = conj(chi_x(d))"
    anchor = "response.chi_x, spectra.photocurrent_psd"
    levels: ClassVar[frozenset[Level]] = BOTH

    def run(self, *, context: Context) -> CheckOutcome:
        rng = context.rng()
        errors = []
        for _ in range(max(context.samples, 20)):
            omega, cfg, co, omega_rot_sq, input = _random_point(rng)
            psd = spectra.photocurrent_psd(omega, cfg, co, omega_rot_sq, input)
            raw = complex(psd.raw)
            errors.append(abs(raw.imag) / abs(raw))
        return CheckOutcome.within(errors, 1e-12, "imaginary part of the raw PSD")


@register
class NoiseBudgetIdentity:
    description = "Budget components add up, stay non-negative, match vacuum at r = 0"
    anchor = "spectra.noise_budget"
    levels: ClassVar[frozenset[Level]] = BOTH

    def run(self, *, context: Context) -> CheckOutcome:
        rng = context.rng()
        identity, negative, reduction = [], [], []
        for _ in range(context.samples):
            omega, cfg, co, omega_rot_sq, _input = _random_point(rng)
            grid = omega + np.linspace(-50, 50, 101)
            budget = spectra.noise_budget(
                grid, cfg, co, omega_rot_sq, SqueezedVacuum(r=0.7)
            )
            parts = budget.n_zpf + budget.n_add + budget.n_ang
            identity.append(float(np.max(np.abs(budget.n_x_total - parts))))
            components = (budget.n_zpf, budget.n_ba, budget.n_ang, budget.n_add)
            negative.append(float(max(-np.min(c) for c in components)))
            vacuum = spectra.noise_budget(grid, cfg, co, omega_rot_sq, Vacuum())
            squeezed = spectra.noise_budget(
                grid, cfg, co, omega_rot_sq, SqueezedVacuum(r=0.0)
            )
            gap = np.abs(squeezed.n_x_total - vacuum.n_x_total) / vacuum.n_x_total
            reduction.append(float(np.max(gap)))
        return CheckOutcome.all_of(
            CheckOutcome.within(identity, 0.0, "decomposition identity"),
            CheckOutcome.within(negative, 0.0, "negative components"),
            CheckOutcome.within(reduction, 1e-12, "r=0 against vacuum"),
        )


@register
class AngularNoiseThreshold:
    description = "Angular noise is below zero-point iff Omega^2 <= gamma_x gamma_y / 4"
    anchor = "spectra.noise_budget"
    levels: ClassVar[frozenset[Level]] = BOTH

    def run(self, *, context: Context) -> CheckOutcome:
        rng = context.rng()
        wrong = 0
        for _ in range(context.samples):
            gamma_x, gamma_y = rng.uniform(0.2, 5, size=2)
            params = GyroParams(
                omega_b=1e5, kappa=1e8, gamma_x=gamma_x, gamma_y=gamma_y, g=1.0
            )
            cfg = validate(params)
            threshold = gamma_x * gamma_y / 4
            for omega_rot_sq in (threshold * 0.9, threshold * 1.1):
                budget = spectra.resonance_budget(cfg, 1.0, omega_rot_sq, Vacuum())
                if (budget.n_ang <= budget.n_zpf) != (omega_rot_sq <= threshold):
                    wrong += 1
        detail = f"{wrong} points on the wrong side"
        return CheckOutcome(passed=wrong == 0, detail=detail)


@register
class SensitivityDerivative:
    description = "Analytic Omega^2-derivative of the signal matches finite differences"
    anchor = "metrics.signal_amplitude_derivative"
    levels: ClassVar[frozenset[Level]] = BOTH

    def run(self, *, context: Context) -> CheckOutcome:
        rng = context.rng()
        errors = []
        for _ in range(context.samples):
            omega, cfg, co, omega_rot_sq, input = _random_point(rng, span=0.1)
            analytic = metrics.sensitivity(omega, cfg, co, omega_rot_sq, input)
            numeric = metrics.sensitivity(
                omega, cfg, co, omega_rot_sq, input, method="finite_difference"
            )
            errors.append(abs(numeric - analytic) / analytic)
        return CheckOutcome.within(errors, 1e-4, "finite difference vs analytic")
