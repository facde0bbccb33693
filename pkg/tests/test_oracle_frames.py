from __future__ import annotations

import math
import numpy as np
import pytest
from scipy import constants
from sawgyro.exceptions import NonPositiveRate, StepTooLarge
from sawgyro.oracle import frames
from sawgyro.oracle.frames import ClassicalState, Frame

DT = 1e-3 / 1.2
TWO_PERIODS = 2 * 2 * math.pi


def oscillator(k_y: float = 1.44) -> ClassicalState:
    return ClassicalState(
        x=1.0,
        y=0.0,
        p_x=0.0,
        p_y=0.3,
        frame=Frame.ROTATING,
        mass=1.0,
        k_x=1.0,
        k_y=k_y,
    )


def gap(a: frames.Trajectory, b: frames.Trajectory) -> float:
    return float(np.max(np.linalg.norm(a.positions - b.positions, axis=1)))


def test_rk4_exponential_decay():
    states = frames.rk4(lambda t, y: -y, np.array([1.0]), 0.01, 100)
    assert states.shape == (101, 1)
    assert states[-1, 0] == pytest.approx(math.exp(-1), rel=1e-8)


def test_state_changes_frame():
    state = oscillator()
    inertial = state.at(math.pi / 2, Frame.INERTIAL)
    assert inertial.frame == Frame.INERTIAL
    assert (inertial.x, inertial.y) == pytest.approx((0.0, 1.0), abs=1e-15)
    back = inertial.at(math.pi / 2, Frame.ROTATING)
    assert (back.x, back.p_y) == pytest.approx((1.0, 0.3))
    assert state.at(1.0, Frame.ROTATING) is state


def test_frames_agree_at_rest():
    deviation = frames.rotating_frame_check(oscillator(), 0.0, TWO_PERIODS, DT)
    assert deviation < 1e-10


def test_rotating_frame_matches_inertial():
    assert frames.rotating_frame_check(oscillator(), 0.1, TWO_PERIODS, DT) < 1e-6


def test_dropping_centrifugal_term_breaks_agreement():
    state, omega_rot = oscillator(), 0.1
    inertial = frames.to_rotating(
        frames.integrate_inertial(state, omega_rot, TWO_PERIODS, DT), omega_rot
    )
    full = gap(inertial, frames.integrate_rotating(state, omega_rot, TWO_PERIODS, DT))
    ablated = frames.integrate_rotating(
        state, omega_rot, TWO_PERIODS, DT, centrifugal=False
    )
    assert gap(inertial, ablated) > 100 * full


def test_isotropic_motion_matches_analytic():
    state = oscillator(k_y=1.0)
    trajectory = frames.integrate_inertial(state, 0.1, TWO_PERIODS, DT)
    analytic = frames.analytic_isotropic(state, trajectory.times)
    np.testing.assert_allclose(trajectory.states, analytic, atol=1e-9)


def test_analytic_needs_equal_springs():
    with pytest.raises(ValueError, match="equal springs"):
        frames.analytic_isotropic(oscillator(), np.linspace(0, 1, 3))


def test_resting_propagator_matches_rk4():
    state = oscillator()
    stepped = frames.integrate_inertial(state, 0.0, TWO_PERIODS, DT)
    jumped = frames.integrate_resting(state, TWO_PERIODS, DT, stride=10)
    np.testing.assert_allclose(jumped.times, stepped.times[::10])
    np.testing.assert_allclose(jumped.states, stepped.states[::10], atol=1e-12)


def test_energy_is_conserved_over_a_thousand_periods():
    state = oscillator()
    trajectory = frames.integrate_resting(state, 1000 * 2 * math.pi, DT, stride=100)
    assert trajectory.times[-1] == pytest.approx(1000 * 2 * math.pi, rel=1e-4)
    energy = frames.inertial_energy(trajectory, state)
    assert np.max(np.abs(energy - energy[0])) / energy[0] < 1e-8


def test_canonical_momentum():
    state = oscillator()
    trajectory = frames.integrate_rotating(state, 0.1, TWO_PERIODS, DT)
    assert frames.canonical_momentum_residual(trajectory, 0.1, state.mass) < 1e-6


def test_large_step_is_rejected():
    with pytest.raises(StepTooLarge):
        frames.rotating_frame_check(oscillator(), 0.1, TWO_PERIODS, 0.2)


def test_mode_coupling_coefficients():
    assert frames.mode_coupling_coefficients(1.0, 1.0) == (2.0, 0.0)
    plus, minus = frames.mode_coupling_coefficients(4.0, 1.0)
    assert (plus, minus) == pytest.approx((2.5, 1.5))


def test_zero_point_amplitude():
    assert frames.zero_point_amplitude(1.0, 1.0) == pytest.approx(
        math.sqrt(constants.hbar / 2)
    )
    with pytest.raises(NonPositiveRate):
        frames.zero_point_amplitude(0.0, 1.0)
