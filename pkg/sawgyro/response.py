"""Mechanical susceptibilities of the rotation-coupled x and y modes.

Frequencies follow the transform O(w) = int dt O(t) exp(+i w t), so every
susceptibility is written in terms of i*delta - gamma/2. All functions accept
scalars or numpy arrays for `delta`.
"""

from __future__ import annotations

from sawgyro.types import Complex, Real


def single_mode_chi(delta: Real, gamma: float) -> Complex:
    return 1 / (1j * delta - gamma / 2)


def chi_y(delta: Real, gamma_y: float) -> Complex:
    """The y mode responds as a bare mode; rotation enters only through x."""
    return single_mode_chi(delta, gamma_y)


def chi_x_denominator(
    delta: Real, omega_rot_sq: float, gamma_x: float, gamma_y: float
) -> Complex:
    return (1j * delta - gamma_x / 2) * (1j * delta - gamma_y / 2) + omega_rot_sq


def chi_x(delta: Real, omega_rot_sq: float, gamma_x: float, gamma_y: float) -> Complex:
    """Response of the x mode with the y mode folded in through the rotation."""
    numerator = 1j * delta - gamma_y / 2
    return numerator / chi_x_denominator(delta, omega_rot_sq, gamma_x, gamma_y)


def dchi_x_domega2(
    delta: Real, omega_rot_sq: float, gamma_x: float, gamma_y: float
) -> Complex:
    """Derivative of `chi_x` with respect to the squared angular velocity."""
    numerator = 1j * delta - gamma_y / 2
    return -numerator / chi_x_denominator(delta, omega_rot_sq, gamma_x, gamma_y) ** 2
