"""Brute-force references for the closed-form spectra and the rotating frame."""

from __future__ import annotations

from sawgyro.oracle.covariance import (
    VarianceComparison,
    lyapunov_variance,
    spectral_variance,
    steady_state_covariance,
    steady_state_variance,
)
from sawgyro.oracle.frames import (
    ClassicalState,
    Frame,
    Trajectory,
    analytic_isotropic,
    canonical_momentum_residual,
    inertial_energy,
    integrate_inertial,
    integrate_rotating,
    mode_coupling_coefficients,
    rk4,
    rotating_frame_check,
    zero_point_amplitude,
)
from sawgyro.oracle.langevin import (
    ModeVector,
    SqueezeModel,
    adiabatic_error_slope,
    exact_photocurrent_psd,
    exact_transfer_matrix,
    input_correlations,
    mode_response,
    squeezed_input_correlations,
)

__all__ = [
    "ClassicalState",
    "Frame",
    "ModeVector",
    "SqueezeModel",
    "Trajectory",
    "VarianceComparison",
    "adiabatic_error_slope",
    "analytic_isotropic",
    "canonical_momentum_residual",
    "exact_photocurrent_psd",
    "exact_transfer_matrix",
    "inertial_energy",
    "input_correlations",
    "integrate_inertial",
    "integrate_rotating",
    "lyapunov_variance",
    "mode_coupling_coefficients",
    "mode_response",
    "rk4",
    "rotating_frame_check",
    "spectral_variance",
    "squeezed_input_correlations",
    "steady_state_covariance",
    "steady_state_variance",
    "zero_point_amplitude",
]
