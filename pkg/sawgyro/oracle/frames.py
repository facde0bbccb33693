"""Classical two-dimensional oscillator on a rotating platform.

The springs are fixed to the platform. In the inertial frame the potential
is therefore time dependent; in the co-rotating frame it is static but the
Hamiltonian picks up Coriolis and centrifugal terms. Integrating both and
mapping one onto the other checks the rotating-frame Hamiltonian.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, replace
from enum import StrEnum
import numpy as np
import numpy.typing as npt
from scipy import constants
from sawgyro.exceptions import NonPositiveRate, StepTooLarge

logger = logging.getLogger(__name__)

type StateArray = npt.NDArray[np.float64]
type Derivative = Callable[[float, StateArray], StateArray]

STABILITY_LIMIT = 0.1


class Frame(StrEnum):
    INERTIAL = "inertial"
    ROTATING = "rotating"


@dataclass(frozen=True, slots=True)
class ClassicalState:
    x: float
    y: float
    p_x: float
    p_y: float
    frame: Frame
    mass: float
    k_x: float
    k_y: float
    x_e: float = 0.0
    y_e: float = 0.0

    @property
    def omega_x(self) -> float:
        return math.sqrt(self.k_x / self.mass)

    @property
    def omega_y(self) -> float:
        return math.sqrt(self.k_y / self.mass)

    def vector(self) -> StateArray:
        return np.array([self.x, self.y, self.p_x, self.p_y])

    def at(self, theta: float, frame: Frame) -> ClassicalState:
        """The same phase-space point in `frame` at platform angle `theta`."""
        if frame == self.frame:
            return self
        rotation = _rotation(theta if frame == Frame.ROTATING else -theta)
        x, y = rotation @ (self.x, self.y)
        p_x, p_y = rotation @ (self.p_x, self.p_y)
        return replace(
            self, x=float(x), y=float(y), p_x=float(p_x), p_y=float(p_y), frame=frame
        )


@dataclass(frozen=True, slots=True)
class Trajectory:
    times: npt.NDArray[np.float64]
    states: StateArray  # rows of (x, y, p_x, p_y)
    frame: Frame

    @property
    def positions(self) -> StateArray:
        return self.states[:, :2]


def rk4(
    derivative: Derivative, initial: StateArray, dt: float, steps: int
) -> StateArray:
    """Fixed-step classical Runge-Kutta; returns every state including the first."""
    states = np.empty((steps + 1, initial.size))
    states[0] = state = initial
    t = 0.0
    for step in range(steps):
        k1 = derivative(t, state)
        k2 = derivative(t + dt / 2, state + dt / 2 * k1)
        k3 = derivative(t + dt / 2, state + dt / 2 * k2)
        k4 = derivative(t + dt, state + dt * k3)
        state = state + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        t = (step + 1) * dt
        states[step + 1] = state
    return states


def integrate_inertial(
    initial: ClassicalState, omega_rot: float, duration: float, dt: float
) -> Trajectory:
    """Free particle in a potential that turns with the platform at `omega_rot`."""
    start = initial.at(0.0, Frame.INERTIAL)
    m, kx, ky, xe, ye = start.mass, start.k_x, start.k_y, start.x_e, start.y_e

    def derivative(t: float, state: StateArray) -> StateArray:
        rotation = _rotation(omega_rot * t)
        x, y = rotation @ state[:2]
        force = -rotation.T @ (kx * (x - xe), ky * (y - ye))
        return np.array([state[2] / m, state[3] / m, force[0], force[1]])

    steps = _steps(duration, dt)
    states = rk4(derivative, start.vector(), dt, steps)
    times = dt * np.arange(steps + 1)
    return Trajectory(times=times, states=states, frame=Frame.INERTIAL)


def integrate_rotating(
    initial: ClassicalState,
    omega_rot: float,
    duration: float,
    dt: float,
    *,
    centrifugal: bool = True,
) -> Trajectory:
    """Hamilton's equations in the co-rotating frame.

    With `centrifugal=False` the centrifugal energy -m omega^2 (x^2 + y^2)/2 is
    left out of the Hamiltonian, keeping only the Coriolis coupling.
    """
    start = initial.at(0.0, Frame.ROTATING)
    m, kx, ky, xe, ye = start.mass, start.k_x, start.k_y, start.x_e, start.y_e
    w = omega_rot
    spin = m * w**2 if centrifugal else 0.0

    def derivative(t: float, state: StateArray) -> StateArray:
        x, y, px, py = state
        vx = (px + m * w * y) / m
        vy = (py - m * w * x) / m
        return np.array(
            [
                vx,
                vy,
                w * (py - m * w * x) - kx * (x - xe) + spin * x,
                -w * (px + m * w * y) - ky * (y - ye) + spin * y,
            ]
        )

    steps = _steps(duration, dt)
    states = rk4(derivative, start.vector(), dt, steps)
    times = dt * np.arange(steps + 1)
    return Trajectory(times=times, states=states, frame=Frame.ROTATING)


def to_rotating(trajectory: Trajectory, omega_rot: float) -> Trajectory:
    if trajectory.frame == Frame.ROTATING:
        return trajectory
    rotations = np.stack([_rotation(omega_rot * t) for t in trajectory.times])
    positions = np.einsum("nij,nj->ni", rotations, trajectory.states[:, :2])
    momenta = np.einsum("nij,nj->ni", rotations, trajectory.states[:, 2:])
    return Trajectory(
        times=trajectory.times,
        states=np.hstack([positions, momenta]),
        frame=Frame.ROTATING,
    )


def analytic_isotropic(
    initial: ClassicalState, times: npt.NDArray[np.float64]
) -> StateArray:
    """Inertial-frame solution for k_x = k_y with the equilibrium at the origin."""
    if not math.isclose(initial.k_x, initial.k_y) or initial.x_e or initial.y_e:
        raise ValueError("analytic solution needs equal springs centered at the origin")
    start = initial.at(0.0, Frame.INERTIAL)
    w, m = start.omega_x, start.mass
    cos, sin = np.cos(w * times)[:, None], np.sin(w * times)[:, None]
    position, momentum = start.vector()[:2], start.vector()[2:]
    return np.hstack(
        [
            position * cos + momentum / (m * w) * sin,
            momentum * cos - position * m * w * sin,
        ]
    )


def rk4_propagator(generator: npt.NDArray[np.float64], dt: float) -> StateArray:
    """One RK4 step of the linear system x' = A x, as a matrix."""
    h = dt * generator
    step = np.eye(len(generator))
    term = np.eye(len(generator))
    for order in range(1, 5):
        term = term @ h / order
        step = step + term
    return step


def integrate_resting(
    initial: ClassicalState, duration: float, dt: float, *, stride: int
) -> Trajectory:
    """RK4 on the non-rotating platform, keeping every `stride`-th state.

    The motion is linear, so `stride` steps collapse into one matrix power and
    long horizons cost one product per kept state.
    """
    start = initial.at(0.0, Frame.INERTIAL)
    m = start.mass
    generator = np.array(
        [
            [0, 0, 1 / m, 0],
            [0, 0, 0, 1 / m],
            [-start.k_x, 0, 0, 0],
            [0, -start.k_y, 0, 0],
        ]
    )
    jump = np.linalg.matrix_power(rk4_propagator(generator, dt), stride)
    equilibrium = np.array([start.x_e, start.y_e, 0.0, 0.0])
    samples = _steps(duration, dt) // stride
    displacements = np.empty((samples + 1, 4))
    displacements[0] = displacement = start.vector() - equilibrium
    for sample in range(samples):
        displacement = jump @ displacement
        displacements[sample + 1] = displacement
    times = dt * stride * np.arange(samples + 1)
    return Trajectory(
        times=times, states=displacements + equilibrium, frame=Frame.INERTIAL
    )


def inertial_energy(
    trajectory: Trajectory, initial: ClassicalState
) -> npt.NDArray[np.float64]:
    """Energy along a trajectory of the non-rotating platform."""
    x, y, px, py = trajectory.states.T
    kinetic = (px**2 + py**2) / (2 * initial.mass)
    dx, dy = x - initial.x_e, y - initial.y_e
    potential = (initial.k_x * dx**2 + initial.k_y * dy**2) / 2
    return kinetic + potential


def canonical_momentum_residual(
    trajectory: Trajectory, omega_rot: float, mass: float
) -> float:
    """Largest |p - p(velocity)| along a rotating-frame trajectory, relative to |p|."""
    x, y, px, py = trajectory.states.T
    vx = np.gradient(x, trajectory.times)
    vy = np.gradient(y, trajectory.times)
    # endpoints use one-sided differences
    inner = slice(1, -1)
    residual = np.hypot(
        px - (mass * vx - mass * omega_rot * y), py - (mass * vy + mass * omega_rot * x)
    )[inner]
    return float(np.max(residual) / np.max(np.hypot(px, py)))


def rotating_frame_check(
    initial: ClassicalState,
    omega_rot: float,
    duration: float,
    dt: float,
    *,
    centrifugal: bool = True,
) -> float:
    """Largest position gap between the mapped inertial and the rotating trajectory."""
    limit = STABILITY_LIMIT
    fastest = max(initial.omega_x, initial.omega_y, abs(omega_rot))
    if dt * fastest >= limit:
        raise StepTooLarge(dt=dt, limit=limit / fastest)

    inertial = to_rotating(
        integrate_inertial(initial, omega_rot, duration, dt), omega_rot
    )
    rotating = integrate_rotating(
        initial, omega_rot, duration, dt, centrifugal=centrifugal
    )
    gaps = np.linalg.norm(inertial.positions - rotating.positions, axis=1)
    deviation = float(np.max(gaps))
    logger.debug(
        f"Frame deviation {deviation:.3e} m at omega_rot={omega_rot:.4g} "
        f"over {len(rotating.times) - 1} steps"
    )
    return deviation


def mode_coupling_coefficients(omega_x: float, omega_y: float) -> tuple[float, float]:
    """Weights of the Coriolis coupling between modes of unequal frequency."""
    ratio = math.sqrt(omega_x / omega_y)
    return ratio + 1 / ratio, ratio - 1 / ratio


def zero_point_amplitude(mass: float, omega_b: float) -> float:
    """Position scale x_zpf that normalizes the quadrature X = x / x_zpf."""
    if not mass > 0:
        raise NonPositiveRate(name="mass", value=mass)
    if not omega_b > 0:
        raise NonPositiveRate(name="omega_b", value=omega_b)
    return math.sqrt(constants.hbar / (2 * mass * omega_b))


def _rotation(theta: float) -> npt.NDArray[np.float64]:
    cos, sin = math.cos(theta), math.sin(theta)
    return np.array([[cos, sin], [-sin, cos]])


def _steps(duration: float, dt: float) -> int:
    return max(1, round(duration / dt))
