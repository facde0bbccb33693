"""Checks against the brute-force references: exact Langevin solve, Lyapunov
covariance and classical integration in both frames."""

from __future__ import annotations

import logging
import math
from typing import ClassVar
import numpy as np
from sawgyro import response, spectra
from sawgyro.check import (
    BOTH,
    CheckOutcome,
    Context,
    Level,
    register,
    relative_error,
)
from sawgyro.oracle import covariance, frames, langevin
from sawgyro.oracle.langevin import SqueezeModel
from sawgyro.params import GyroParams, SqueezedVacuum, Vacuum, validate

logger = logging.getLogger(__name__)

_PAIRS = [1, 0, 3, 2, 5, 4]


@register
class TransferMatrixStructure:
    description = "Exact transfer matrix pairs conjugates and decouples in the limits"
    anchor = "oracle.langevin.exact_transfer_matrix"
    levels: ClassVar[frozenset[Level]] = BOTH

    def run(self, *, context: Context) -> CheckOutcome:
        rng = context.rng()
        cfg = context.cfg
        p = cfg.params
        pairing = []
        for _ in range(context.samples):
            omega = p.omega_b + rng.uniform(-10, 10)
            co, omega_rot_sq = rng.uniform(0.05, 5), rng.uniform(0, 2)
            here = langevin.exact_transfer_matrix(omega, cfg, co, omega_rot_sq)
            there = langevin.exact_transfer_matrix(-omega, cfg, co, omega_rot_sq)
            partner = np.conj(there[np.ix_(_PAIRS, _PAIRS)])
            pairing.append(float(np.max(np.abs(here - partner)) / np.max(np.abs(here))))

        omega, omega_rot_sq = p.omega_b + 0.3, 0.5
        free = langevin.exact_transfer_matrix(omega, cfg, 1e-24, omega_rot_sq)
        delta = omega - p.omega_b
        chi_x = response.chi_x(delta, omega_rot_sq, p.gamma_x, p.gamma_y)
        chi_y = response.chi_y(delta, p.gamma_y)
        expected = (
            chi_x * math.sqrt(p.gamma_x),
            -math.sqrt(omega_rot_sq) * chi_x * chi_y * math.sqrt(p.gamma_y),
        )
        decoupled = [
            abs(free[2, 2] - expected[0]) / abs(expected[0]),
            abs(free[2, 4] - expected[1]) / abs(expected[1]),
        ]

        still = langevin.exact_transfer_matrix(omega, cfg, 1.0, 0.0)
        leakage = float(np.max(np.abs(still[4:, :4])) / np.max(np.abs(still)))
        return CheckOutcome.all_of(
            CheckOutcome.within(pairing, 1e-9, "conjugate pairing"),
            CheckOutcome.within(decoupled, 1e-9, "uncoupled mechanical response"),
            CheckOutcome.within([leakage], 1e-14, "y-mode leakage at rest"),
        )


@register
class AdiabaticElimination:
    description = "Closed-form PSD matches exact solve; error falls as (w_b/kappa)^2"
    anchor = "oracle.langevin.adiabatic_error_slope"
    levels: ClassVar[frozenset[Level]] = BOTH

    def run(self, *, context: Context) -> CheckOutcome:
        cfg = context.cfg
        p = cfg.params
        points = 21 if context.level == Level.QUICK else 101
        omega = p.omega_b + np.linspace(-5, 5, points) * max(p.gamma_x, p.gamma_y)
        errors = []
        for co in (p.cooperativity, 1.0):
            for input in (Vacuum(), SqueezedVacuum(r=1.73)):
                exact = langevin.exact_photocurrent_psd(
                    omega, cfg, co, 0.5, input, model=SqueezeModel.ATTENUATED
                )
                adiabatic = spectra.photocurrent_psd(omega, cfg, co, 0.5, input)
                gap = np.abs(exact - adiabatic.symmetric) / adiabatic.symmetric
                errors.append(float(np.max(gap)))

        slow = validate(
            GyroParams(omega_b=10.0, kappa=1e3, gamma_x=1.0, gamma_y=1.0, g=1.0)
        )
        slope = langevin.adiabatic_error_slope(slow, 1.0)
        return CheckOutcome.all_of(
            CheckOutcome.within(errors, 1e-2, "exact vs adiabatic near omega_b"),
            CheckOutcome(
                passed=1.8 <= slope <= 2.2, detail=f"log-log error slope {slope:.3f}"
            ),
        )


@register
class ExactPsdLimits:
    description = "Exact PSD reaches the shot floor off resonance, continuous in n_th"
    anchor = "oracle.langevin.exact_photocurrent_psd"
    levels: ClassVar[frozenset[Level]] = BOTH

    def run(self, *, context: Context) -> CheckOutcome:
        cfg = context.cfg
        p = cfg.params
        far = p.omega_b / 2
        r = 1.73
        vacuum = langevin.exact_photocurrent_psd(far, cfg, 1.0, 0.0, Vacuum())
        squeezed_floor = langevin.exact_photocurrent_psd(
            far, cfg, 1.0, 0.0, SqueezedVacuum(r=r)
        )
        floors = [
            relative_error(vacuum, 1.0),
            relative_error(squeezed_floor, math.exp(-2 * r)),
        ]

        near = p.omega_b + np.linspace(-3, 3, 13)
        cold = langevin.exact_photocurrent_psd(near, cfg, 1.0, 0.2, Vacuum())
        warm_cfg = validate(p.model_copy(update={"n_th": 1e-6}))
        warm = langevin.exact_photocurrent_psd(near, warm_cfg, 1.0, 0.2, Vacuum())
        continuity = float(np.max(np.abs(warm - cold) / cold))

        squeezed = SqueezedVacuum(r=1.0)
        gaussian = langevin.exact_photocurrent_psd(p.omega_b, cfg, 1.0, 0.0, squeezed)
        attenuated = langevin.exact_photocurrent_psd(
            p.omega_b, cfg, 1.0, 0.0, squeezed, model=SqueezeModel.ATTENUATED
        )
        excess = CheckOutcome(
            passed=True,
            detail=f"pure squeezed vacuum PSD at omega_b is "
            f"{gaussian / attenuated:.3g}x the attenuated model",
        )
        return CheckOutcome.all_of(
            CheckOutcome.within(floors, 1e-2, "shot floor"),
            CheckOutcome.within([continuity], 1e-4, "n_th continuity"),
            excess,
        )


@register
class WienerKhinchin:
    description = "Integrated X spectrum equals the Lyapunov stationary variance"
    anchor = "oracle.covariance.steady_state_variance"
    levels: ClassVar[frozenset[Level]] = BOTH

    def run(self, *, context: Context) -> CheckOutcome:
        cfg = context.cfg
        co = cfg.params.cooperativity
        comparisons = [
            covariance.steady_state_variance(cfg, co, 0.25, input).relative_difference
            for input in (Vacuum(), SqueezedVacuum(r=1.0))
        ]
        ground = covariance.lyapunov_variance(cfg, 1e-12, 0.25, Vacuum())
        heating = [
            covariance.lyapunov_variance(cfg, value, 0.25, Vacuum())
            for value in (0.1, 0.5, 1.0, 2.0)
        ]
        return CheckOutcome.all_of(
            CheckOutcome.within(comparisons, 1e-3, "Lyapunov vs spectral"),
            CheckOutcome.within([abs(ground - 1)], 1e-6, "ground-state variance"),
            CheckOutcome(
                passed=bool(np.all(np.diff(heating) > 0)),
                detail="variance rises with cooperativity",
            ),
        )


def _oscillator(k_y: float = 1.44) -> frames.ClassicalState:
    return frames.ClassicalState(
        x=1.0,
        y=0.0,
        p_x=0.0,
        p_y=0.3,
        frame=frames.Frame.ROTATING,
        mass=1.0,
        k_x=1.0,
        k_y=k_y,
    )


def _deviation(a: frames.Trajectory, b: frames.Trajectory) -> float:
    return float(np.max(np.linalg.norm(a.positions - b.positions, axis=1)))


@register
class RotatingFrames:
    description = "Rotating-frame Hamiltonian reproduces the rotated inertial motion"
    anchor = "oracle.frames.rotating_frame_check"
    levels: ClassVar[frozenset[Level]] = BOTH

    def run(self, *, context: Context) -> CheckOutcome:
        state = _oscillator()
        omega_rot = 0.1 * state.omega_x
        dt = 1e-3 / max(state.omega_x, state.omega_y)
        duration = context.periods * 2 * math.pi / state.omega_x
        amplitude = math.hypot(state.x, state.y)

        at_rest = frames.rotating_frame_check(state, 0.0, 2 * 2 * math.pi, dt)

        inertial = frames.to_rotating(
            frames.integrate_inertial(state, omega_rot, duration, dt), omega_rot
        )
        rotating = frames.integrate_rotating(state, omega_rot, duration, dt)
        ablated = frames.integrate_rotating(
            state, omega_rot, duration, dt, centrifugal=False
        )
        full = _deviation(inertial, rotating)
        without = _deviation(inertial, ablated)

        round_state = _oscillator(k_y=1.0)
        round_inertial = frames.integrate_inertial(round_state, omega_rot, duration, dt)
        analytic = frames.analytic_isotropic(round_state, round_inertial.times)
        analytic_gap = float(
            np.max(np.linalg.norm(round_inertial.positions - analytic[:, :2], axis=1))
        )
        round_rotating = frames.integrate_rotating(round_state, omega_rot, duration, dt)
        round_gap = _deviation(
            frames.to_rotating(round_inertial, omega_rot), round_rotating
        )

        residual = frames.canonical_momentum_residual(rotating, omega_rot, state.mass)
        logger.debug(f"Centrifugal ablation deviation {without:.3e} against {full:.3e}")
        return CheckOutcome.all_of(
            CheckOutcome.within([at_rest / amplitude], 1e-10, "frames at rest"),
            CheckOutcome.within([full / amplitude], 1e-6, "rotating vs inertial"),
            CheckOutcome.within(
                [analytic_gap / amplitude], 1e-6, "isotropic vs analytic"
            ),
            CheckOutcome.within([round_gap / amplitude], 1e-6, "isotropic frames"),
            CheckOutcome(
                passed=without > 100 * full,
                detail=f"ablation deviation {without / full:.3g}x the full model",
            ),
            CheckOutcome.within([residual], 1e-6, "canonical momentum"),
        )


@register
class EnergyConservation:
    description = "RK4 keeps the energy of the non-rotating oscillator over long runs"
    anchor = "oracle.frames.rk4_propagator"
    levels: ClassVar[frozenset[Level]] = BOTH

    def run(self, *, context: Context) -> CheckOutcome:
        state = _oscillator()
        dt = 1e-3 / max(state.omega_x, state.omega_y)
        periods = 20 if context.level == Level.QUICK else 1000
        duration = periods * 2 * math.pi / state.omega_x
        trajectory = frames.integrate_resting(state, duration, dt, stride=100)
        energy = frames.inertial_energy(trajectory, state)
        drift = float(np.max(np.abs(energy - energy[0])) / energy[0])
        return CheckOutcome.within([drift], 1e-8, "relative energy drift")
