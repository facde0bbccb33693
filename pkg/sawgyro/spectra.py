"""Noise budget of the measured quadrature and the homodyne photocurrent.

Everything here assumes the readout cavity has been adiabatically eliminated
and the mechanical bath is at zero occupancy. Symmetrized quantities are
always built by evaluating at +omega and -omega explicitly.
"""

from __future__ import annotations

import logging
import math
import numpy as np
from sawgyro import response
from sawgyro.config import Limits
from sawgyro.exceptions import ThermalOccupancyUnsupported
from sawgyro.params import InputField, ValidatedConfig
from sawgyro.types import NoiseBudget, PhotocurrentPsd, Real, SqlReport

logger = logging.getLogger(__name__)


def imprecision(gamma_x: float, co: float) -> float:
    """Imprecision noise 1/G^2 with measurement gain G = 2 sqrt(gamma_x C_o)."""
    return 1 / (4 * gamma_x * co)


def noise_budget(
    omega: Real,
    cfg: ValidatedConfig,
    co: float,
    omega_rot_sq: float,
    input: InputField,
    *,
    symmetrized: bool = True,
) -> NoiseBudget:
    _require_ground_state(cfg)
    zpf, ba, ang = _raw_terms(omega, cfg, co, omega_rot_sq)
    if symmetrized:
        zpf_neg, ba_neg, ang_neg = _raw_terms(-omega, cfg, co, omega_rot_sq)
        zpf = (zpf + zpf_neg) / 2
        ba = (ba + ba_neg) / 2
        ang = (ang + ang_neg) / 2

    n_im = imprecision(cfg.params.gamma_x, co)
    n_add = math.exp(-2 * input.r) * ba + n_im
    return NoiseBudget(
        n_zpf=zpf,
        n_ba=ba,
        n_ang=ang,
        n_im=n_im,
        n_add=n_add,
        n_x_total=zpf + n_add + ang,
        symmetrized=symmetrized,
    )


def quadrature_psd(
    omega: Real,
    cfg: ValidatedConfig,
    co: float,
    omega_rot_sq: float,
    input: InputField,
) -> Real:
    """Symmetric PSD of X itself, without the imprecision contribution."""
    budget = noise_budget(omega, cfg, co, omega_rot_sq, input)
    return budget.n_zpf + math.exp(-2 * input.r) * budget.n_ba + budget.n_ang


def photocurrent_psd(
    omega: Real,
    cfg: ValidatedConfig,
    co: float,
    omega_rot_sq: float,
    input: InputField,
) -> PhotocurrentPsd:
    """Raw and symmetric PSD of the homodyne photocurrent.

    The raw PSD carries the X/input cross-correlation, which is odd in omega
    and so drops out of the symmetric form. Squeezing attenuates the shot
    noise, the back-action and that cross term alike.
    """
    p = cfg.params
    attenuation = math.exp(-2 * input.r)
    raw_budget = noise_budget(omega, cfg, co, omega_rot_sq, input, symmetrized=False)
    n_x_raw = raw_budget.n_zpf + attenuation * raw_budget.n_ba + raw_budget.n_ang

    def chi(delta: Real):
        return response.chi_x(delta, omega_rot_sq, p.gamma_x, p.gamma_y)

    cross = (
        chi(omega - p.omega_b)
        - chi(omega + p.omega_b)
        + chi(-omega + p.omega_b)
        - chi(-omega - p.omega_b)
    )
    gain = 4 * p.gamma_x * co
    raw = attenuation + gain * n_x_raw + attenuation * (gain / 2) * cross
    symmetric = attenuation + gain * quadrature_psd(omega, cfg, co, omega_rot_sq, input)
    return PhotocurrentPsd(raw=raw, symmetric=symmetric)


def resonance_budget(
    cfg: ValidatedConfig,
    co: float,
    omega_rot_sq: float,
    input: InputField,
    *,
    limits: Limits | None = None,
) -> NoiseBudget:
    """Closed-form symmetric budget at omega_b for a low-damped oscillator."""
    p = cfg.params
    _warn_outside_resonance_regime(cfg, limits or Limits())
    detuned = p.gamma_x * p.gamma_y / 4 + omega_rot_sq
    lorentzian = (p.gamma_y**2 / 4) / detuned**2

    zpf = p.gamma_x / 2 * lorentzian
    ba = p.gamma_x * co * lorentzian
    ang = 2 * omega_rot_sq / p.gamma_y * lorentzian
    n_im = imprecision(p.gamma_x, co)
    n_add = math.exp(-2 * input.r) * ba + n_im
    return NoiseBudget(
        n_zpf=zpf,
        n_ba=ba,
        n_ang=ang,
        n_im=n_im,
        n_add=n_add,
        n_x_total=zpf + n_add + ang,
        symmetrized=True,
    )


def sql_report(
    cfg: ValidatedConfig, omega_rot_sq: float, input: InputField
) -> SqlReport:
    """Distance from the standard quantum limit at the best cooperativity.

    Vacuum is the r = 0 case of the same expressions.
    """
    p = cfg.params
    product = p.gamma_x * p.gamma_y
    detuned = product / 4 + omega_rot_sq
    rotation = 4 * omega_rot_sq / product
    gap = (p.gamma_y / 2) / detuned * (math.exp(-input.r) - 1 / (1 + rotation))
    logger.debug(f"SQL gap {gap:.6g} for {input} at omega_rot_sq={omega_rot_sq:.6g}")
    return SqlReport(
        co_star=math.exp(input.r) * detuned / product,
        gap=gap,
        reaches_sql=gap <= 0,
        crossing_r=math.log1p(rotation),
        sql_condition_r=math.log(2),
    )


def _raw_terms(
    omega: Real, cfg: ValidatedConfig, co: float, omega_rot_sq: float
) -> tuple[Real, Real, Real]:
    p = cfg.params
    below = response.chi_x(omega - p.omega_b, omega_rot_sq, p.gamma_x, p.gamma_y)
    above = response.chi_x(omega + p.omega_b, omega_rot_sq, p.gamma_x, p.gamma_y)
    y_mode = response.chi_y(omega - p.omega_b, p.gamma_y)

    zpf = p.gamma_x * np.abs(below) ** 2
    ba = p.gamma_x * co * np.abs(below - above) ** 2
    ang = omega_rot_sq * p.gamma_y * np.abs(below) ** 2 * np.abs(y_mode) ** 2
    return zpf, ba, ang


def _require_ground_state(cfg: ValidatedConfig) -> None:
    if cfg.params.n_th != 0:
        raise ThermalOccupancyUnsupported(cfg.params.n_th)


def _warn_outside_resonance_regime(cfg: ValidatedConfig, limits: Limits) -> None:
    p = cfg.params
    ratio = max(p.gamma_x, p.gamma_y) / p.omega_b
    if ratio > limits.resonance_warn_ratio:
        logger.warning(
            f"gamma/omega_b = {ratio:.3g} is above {limits.resonance_warn_ratio:.3g}; "
            f"resonance approximations are loose"
        )
