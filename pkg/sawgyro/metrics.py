"""Signal, SNR, readable range and sensitivity of the gyroscope.

All functions take the optomechanical cooperativity directly. Range bounds
are returned in units of gamma_x * gamma_y so that figures do not depend on
absolute rates.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from typing import Literal
import numpy as np
from scipy.optimize import minimize_scalar
from sawgyro import response, spectra
from sawgyro.exceptions import (
    EmptyRange,
    NonPositiveRate,
    SignalOutOfRange,
    ZeroDerivative,
)
from sawgyro.params import InputField, SqueezedVacuum, ValidatedConfig, Vacuum
from sawgyro.types import (
    Complex,
    DesignBounds,
    MetricsReport,
    OptimalRatio,
    Real,
    SensitivityLimit,
    SensitivityRatio,
)

logger = logging.getLogger(__name__)

type DerivativeMethod = Literal["analytic", "finite_difference"]
type Response = Callable[..., Complex]

FINITE_DIFFERENCE_STEP = 1e-6


def signal_amplitude(
    omega: Real, cfg: ValidatedConfig, co: float, omega_rot_sq: float
) -> Complex:
    """Mean photocurrent amplitude carrying the rotation, drive phase pi/2."""
    p = cfg.params
    return _amplitude_prefactor(cfg, co) * _folded(
        response.chi_x, omega, p.omega_b, omega_rot_sq, p.gamma_x, p.gamma_y
    )


def signal_amplitude_derivative(
    omega: Real,
    cfg: ValidatedConfig,
    co: float,
    omega_rot_sq: float,
    *,
    method: DerivativeMethod = "analytic",
) -> Complex:
    p = cfg.params
    if method == "analytic":
        derivative = _folded(
            response.dchi_x_domega2,
            omega,
            p.omega_b,
            omega_rot_sq,
            p.gamma_x,
            p.gamma_y,
        )
        return _amplitude_prefactor(cfg, co) * derivative

    step = FINITE_DIFFERENCE_STEP * max(omega_rot_sq, p.gamma_x * p.gamma_y)
    if omega_rot_sq >= step:
        above = signal_amplitude(omega, cfg, co, omega_rot_sq + step)
        below = signal_amplitude(omega, cfg, co, omega_rot_sq - step)
        return (above - below) / (2 * step)
    # one-sided near zero rotation, second order
    f0 = signal_amplitude(omega, cfg, co, omega_rot_sq)
    f1 = signal_amplitude(omega, cfg, co, omega_rot_sq + step)
    f2 = signal_amplitude(omega, cfg, co, omega_rot_sq + 2 * step)
    return (-3 * f0 + 4 * f1 - f2) / (2 * step)


def signal_psd(
    omega: Real, cfg: ValidatedConfig, co: float, omega_rot_sq: float
) -> Real:
    return np.abs(signal_amplitude(omega, cfg, co, omega_rot_sq)) ** 2


def signal_resonance(cfg: ValidatedConfig, co: float, omega_rot_sq: float) -> float:
    p = cfg.params
    product = p.gamma_x * p.gamma_y
    detuned = product / 4 + omega_rot_sq
    return 16 * p.n_in * co**2 * product**2 / detuned**2


def solve_omega_sq_from_signal(cfg: ValidatedConfig, co: float, signal: float) -> float:
    """Invert the resonance signal for the squared angular velocity."""
    if not signal > 0:
        raise NonPositiveRate(name="signal", value=signal)
    p = cfg.params
    product = p.gamma_x * p.gamma_y
    omega_rot_sq = 4 * co * product * math.sqrt(p.n_in / signal) - product / 4
    if omega_rot_sq < 0:
        raise SignalOutOfRange(signal=signal, omega_rot_sq=omega_rot_sq)
    return omega_rot_sq


def snr_per_photon(
    omega: Real,
    cfg: ValidatedConfig,
    co: float,
    omega_rot_sq: float,
    input: InputField,
) -> Real:
    noise = spectra.photocurrent_psd(omega, cfg, co, omega_rot_sq, input).symmetric
    return signal_psd(omega, cfg, co, omega_rot_sq) / (cfg.params.n_in * noise)


def snr_per_photon_resonance(
    cfg: ValidatedConfig, co: float, omega_rot_sq: float, input: InputField
) -> float:
    """Closed-form SNR per photon at omega_b.

    The squeezed denominator scales the whole detuning term by e^{2r}, which
    is what the squeezed photocurrent PSD gives and what makes the SNR equal
    one on the squeezed range bound.
    """
    u = _detuning_ratio(cfg, omega_rot_sq)
    k = 1 / u**2
    gain = math.exp(2 * input.r)
    return 16 * gain * co**2 * k / (1 + co * k * (co + 2 * gain * u))


def omega_range(co: float, input: InputField) -> float:
    """Largest readable squared angular velocity, in units of gamma_x * gamma_y."""
    floor = co_min(input)
    if co < floor:
        raise EmptyRange(co=co, co_min=floor)
    return max(co * _range_slope(input.r) - 1 / 4, 0.0)


def co_min(input: InputField) -> float:
    match input:
        case Vacuum():
            return 1 / 12
        case SqueezedVacuum(r=r):
            return 1 / (4 * _range_slope(r))


def design_bounds(co: float, input: InputField) -> DesignBounds:
    return DesignBounds(omega_sq_ub=omega_range(co, input), co_min=co_min(input))


def range_enhancement(co: float, r: float) -> float:
    """Squeezed over vacuum range at the same cooperativity."""
    vacuum = omega_range(co, Vacuum())
    if vacuum == 0:
        return math.inf
    return omega_range(co, SqueezedVacuum(r=r)) / vacuum


def sensitivity(
    omega: Real,
    cfg: ValidatedConfig,
    co: float,
    omega_rot_sq: float,
    input: InputField,
    *,
    method: DerivativeMethod = "analytic",
    strict: bool = False,
) -> Real:
    """Smallest detectable change of the squared angular velocity.

    Where the signal does not depend on the rotation the result is infinite;
    with `strict` that raises `ZeroDerivative` instead.
    """
    noise = spectra.photocurrent_psd(omega, cfg, co, omega_rot_sq, input).symmetric
    slope = np.abs(
        signal_amplitude_derivative(omega, cfg, co, omega_rot_sq, method=method)
    )
    if np.any(slope == 0):
        at = float(np.atleast_1d(omega)[np.argmin(np.atleast_1d(slope))])
        if strict:
            raise ZeroDerivative(omega=at)
        logger.warning(
            f"Signal derivative vanishes at omega={at:.6g}; sensitivity is infinite"
        )
    with np.errstate(divide="ignore"):
        return np.sqrt(noise) / slope


def sensitivity_resonance(
    cfg: ValidatedConfig, co: float, omega_rot_sq: float, input: InputField
) -> float:
    p = cfg.params
    product = p.gamma_x * p.gamma_y
    detuned = product / 4 + omega_rot_sq
    coupled = co * product
    gain = math.exp(2 * input.r)
    spread = math.sqrt(detuned**2 + 2 * gain * detuned * coupled + coupled**2)
    return math.exp(-input.r) * detuned * spread / (4 * math.sqrt(p.n_in) * coupled)


def sensitivity_limit(
    cfg: ValidatedConfig, omega_rot_sq: float, input: InputField
) -> SensitivityLimit:
    """Lower bound of the resonance sensitivity and the cooperativity attaining it.

    The bound only holds for cooperativities up to `co_at_equality`; the
    resonance sensitivity keeps decreasing beyond it.
    """
    p = cfg.params
    product = p.gamma_x * p.gamma_y
    detuned = product / 4 + omega_rot_sq
    co_at_equality = detuned / product
    match input:
        case Vacuum():
            limit = detuned / (2 * math.sqrt(p.n_in))
        case SqueezedVacuum(r=r):
            limit = (
                math.sqrt(2 * (1 + math.exp(-2 * r)))
                * detuned**1.5
                / (4 * math.sqrt(p.n_in * co_at_equality * product))
            )
    return SensitivityLimit(limit=limit, co_at_equality=co_at_equality)


def sensitivity_ratio(
    co: float, omega_rot_sq: float, cfg: ValidatedConfig, r: float
) -> SensitivityRatio:
    """Squeezed over vacuum resonance sensitivity, with its upper bound."""
    u = _detuning_ratio(cfg, omega_rot_sq)
    attenuation = math.exp(-2 * r)
    ratio = math.sqrt(attenuation + 2 * (1 - attenuation) * co * u / (u + co) ** 2)
    bound = math.sqrt(2) / 2 * math.sqrt(1 + attenuation)
    assert ratio <= bound * (1 + 1e-12), f"ratio {ratio} above its bound {bound}"
    return SensitivityRatio(ratio=ratio, bound=bound)


def optimal_ratio(
    r: float, cfg: ValidatedConfig, omega_rot_sq: float = 0.0
) -> OptimalRatio:
    """Maximize the sensitivity ratio over cooperativity by golden-section search."""
    u = _detuning_ratio(cfg, omega_rot_sq)
    bound = sensitivity_ratio(u, omega_rot_sq, cfg, r).bound
    if r == 0:
        return OptimalRatio(co=u, ratio=1.0, bound=bound)

    result = minimize_scalar(
        lambda log_co: -sensitivity_ratio(math.exp(log_co), omega_rot_sq, cfg, r).ratio,
        bracket=(-20.0, 0.0, 20.0),
        method="golden",
    )
    logger.debug(f"Golden search for r={r:.6g} took {result.nfev} evaluations")
    return OptimalRatio(co=math.exp(result.x), ratio=-float(result.fun), bound=bound)


def metrics_report(
    omega: float,
    cfg: ValidatedConfig,
    co: float,
    omega_rot_sq: float,
    input: InputField,
) -> MetricsReport:
    value = float(sensitivity(omega, cfg, co, omega_rot_sq, input))
    psd = spectra.photocurrent_psd(omega, cfg, co, omega_rot_sq, input).symmetric
    vacuum = float(sensitivity(omega, cfg, co, omega_rot_sq, Vacuum()))
    return MetricsReport(
        signal=float(signal_psd(omega, cfg, co, omega_rot_sq)),
        psd=float(psd),
        snr_per_photon=float(snr_per_photon(omega, cfg, co, omega_rot_sq, input)),
        sensitivity=value,
        limit=sensitivity_limit(cfg, omega_rot_sq, input).limit,
        ratio_to_vacuum=value / vacuum,
    )


def _range_slope(r: float) -> float:
    # sqrt(e^{4r} + 16 e^{2r} - 1) - e^{2r}, rearranged to avoid cancellation
    e = math.exp(2 * r)
    return (16 * e - 1) / (math.sqrt(e**2 + 16 * e - 1) + e)


def _detuning_ratio(cfg: ValidatedConfig, omega_rot_sq: float) -> float:
    p = cfg.params
    product = p.gamma_x * p.gamma_y
    return (product / 4 + omega_rot_sq) / product


def _amplitude_prefactor(cfg: ValidatedConfig, co: float) -> complex:
    p = cfg.params
    return 4j * math.sqrt(p.n_in) * p.gamma_x * co


def _folded(chi: Response, omega: Real, omega_b: float, *args: float) -> Complex:
    below = chi(omega - omega_b, *args)
    above = chi(omega + omega_b, *args)
    return below + np.conj(below) - above - np.conj(above)
