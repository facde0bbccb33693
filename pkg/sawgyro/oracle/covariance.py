"""Stationary variance of X from the Lyapunov equation and from the spectrum."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
import numpy as np
import numpy.typing as npt
from scipy import integrate, linalg
from sawgyro import spectra
from sawgyro.exceptions import UnstableSystem
from sawgyro.oracle.langevin import (
    SqueezeModel,
    drift_matrix,
    input_correlations,
    noise_matrix,
)
from sawgyro.params import InputField, ValidatedConfig

logger = logging.getLogger(__name__)

type RealArray = npt.NDArray[np.float64]

# position of the X = b_x + b_x+ quadrature in the quadrature basis
X_INDEX = 2

_PAIR = np.array([[1, 1], [-1j, 1j]])


@dataclass(frozen=True, slots=True)
class VarianceComparison:
    lyapunov: float
    spectral: float

    @property
    def relative_difference(self) -> float:
        return abs(self.lyapunov - self.spectral) / abs(self.lyapunov)


def quadrature_transform() -> npt.NDArray[np.complex128]:
    """Map (o, o+) pairs to (o + o+, -i (o - o+)) for all three modes."""
    return linalg.block_diag(_PAIR, _PAIR, _PAIR).astype(np.complex128)


def steady_state_covariance(
    cfg: ValidatedConfig,
    co: float,
    omega_rot_sq: float,
    input: InputField,
    *,
    model: SqueezeModel = SqueezeModel.ATTENUATED,
) -> RealArray:
    """Symmetrized stationary covariance of the six quadratures."""
    drift = drift_matrix(cfg.params, co, omega_rot_sq)
    largest = float(np.max(np.linalg.eigvals(drift).real))
    if largest >= 0:
        raise UnstableSystem(max_real_eigenvalue=largest)

    transform = quadrature_transform()
    inverse = np.linalg.inv(transform)
    a = (transform @ drift @ inverse).real
    coupling = transform @ noise_matrix(cfg.params)
    correlations = input_correlations(input, cfg.params.n_th, model)
    diffusion = coupling @ correlations @ coupling.T
    d = ((diffusion + diffusion.T) / 2).real
    return linalg.solve_continuous_lyapunov(a, -d)


def lyapunov_variance(
    cfg: ValidatedConfig,
    co: float,
    omega_rot_sq: float,
    input: InputField,
    *,
    model: SqueezeModel = SqueezeModel.ATTENUATED,
) -> float:
    covariance = steady_state_covariance(cfg, co, omega_rot_sq, input, model=model)
    return float(covariance[X_INDEX, X_INDEX])


def spectral_variance(
    cfg: ValidatedConfig,
    co: float,
    omega_rot_sq: float,
    input: InputField,
    *,
    width: float | None = None,
) -> float:
    """(1/2 pi) times the integral of the symmetric X spectrum over all frequencies.

    The integrand is even, so only omega >= 0 is integrated: below, around and
    above the resonance, the last piece out to infinity.
    """
    p = cfg.params
    wb = p.omega_b
    omega_rot = math.sqrt(omega_rot_sq)
    width = width or min(50 * max(p.gamma_x, p.gamma_y, omega_rot), wb / 2)
    low, high = wb - width, wb + width
    peaks = sorted({w for w in (wb - omega_rot, wb, wb + omega_rot) if low < w < high})

    def integrand(omega: float) -> float:
        return float(spectra.quadrature_psd(omega, cfg, co, omega_rot_sq, input))

    tolerances = {"epsabs": 1e-12, "epsrel": 1e-9}
    pieces = (
        integrate.quad(integrand, 0, low, limit=200, **tolerances),
        integrate.quad(integrand, low, high, points=peaks, limit=400, **tolerances),
        integrate.quad(integrand, high, np.inf, limit=200, **tolerances),
    )
    for value, error in pieces:
        logger.debug(f"Spectral piece {value:.6g} +/- {error:.1g}")
    return sum(value for value, _ in pieces) / math.pi


def steady_state_variance(
    cfg: ValidatedConfig,
    co: float,
    omega_rot_sq: float,
    input: InputField,
    *,
    model: SqueezeModel = SqueezeModel.ATTENUATED,
) -> VarianceComparison:
    return VarianceComparison(
        lyapunov=lyapunov_variance(cfg, co, omega_rot_sq, input, model=model),
        spectral=spectral_variance(cfg, co, omega_rot_sq, input),
    )
