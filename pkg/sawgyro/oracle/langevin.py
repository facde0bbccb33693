"""Exact frequency-domain solution of the three-mode Langevin equations.

Nothing here eliminates the readout cavity. Modes are ordered
(a, a+, b_x, b_x+, b_y, b_y+) and the inputs (a_in, a_in+, f_x, f_x+, f_y,
f_y+); the drift is written for a resonant drive with phase pi/2, so the
coupling into the mechanics is g (a - a+) and out of it g (b_x + b_x+).
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum
from typing import Self
import numpy as np
import numpy.typing as npt
from sawgyro import spectra
from sawgyro.config import Limits
from sawgyro.exceptions import SingularSystem
from sawgyro.params import (
    GyroParams,
    InputField,
    ValidatedConfig,
    g_from_cooperativity,
    validate,
)
from sawgyro.types import Real

logger = logging.getLogger(__name__)

type ComplexArray = npt.NDArray[np.complex128]

MODES = ("a", "a_dag", "b_x", "b_x_dag", "b_y", "b_y_dag")
INPUTS = ("a_in", "a_in_dag", "f_x", "f_x_dag", "f_y", "f_y_dag")
SINGULAR_CONDITION = 1e14

# rows of the transfer matrix that add up to the output field quadrature
_READOUT = (0, 1)


class SqueezeModel(StrEnum):
    """How a squeezed input is represented in the input correlation matrix.

    GAUSSIAN is a pure squeezed vacuum with the anomalous pairing chosen so the
    amplitude quadrature is squeezed; it anti-squeezes the back-action drive.
    ATTENUATED scales every vacuum correlation of the readout input by e^{-2r},
    which is what the closed-form squeezed spectra assume.
    """

    GAUSSIAN = "gaussian"
    ATTENUATED = "attenuated"


@dataclass(frozen=True, slots=True)
class ModeVector:
    a: complex
    a_dag: complex
    b_x: complex
    b_x_dag: complex
    b_y: complex
    b_y_dag: complex

    @classmethod
    def from_array(cls, values: Sequence[complex] | ComplexArray) -> Self:
        if len(values) != len(MODES):
            raise ValueError(f"expected {len(MODES)} amplitudes, got {len(values)}")
        return cls(*(complex(v) for v in values))

    def to_array(self) -> ComplexArray:
        return np.array([getattr(self, name) for name in MODES], dtype=np.complex128)

    def pairs_with(self, negative: ModeVector, *, rtol: float = 1e-12) -> bool:
        """Whether `negative`, the solution at -omega, is the conjugate partner."""
        here, there = self.to_array(), negative.to_array()
        swapped = there.reshape(3, 2)[:, ::-1].reshape(6)
        scale = max(float(np.max(np.abs(here))), np.finfo(float).tiny)
        return bool(np.max(np.abs(here - np.conj(swapped))) <= rtol * scale)


def drift_matrix(params: GyroParams, co: float, omega_rot_sq: float) -> ComplexArray:
    g = g_from_cooperativity(co, params.kappa, params.gamma_x)
    omega_rot = math.sqrt(omega_rot_sq)
    wb, kappa = params.omega_b, params.kappa
    gx, gy = params.gamma_x, params.gamma_y
    return np.array(
        [
            [-kappa / 2, 0, -g, -g, 0, 0],
            [0, -kappa / 2, -g, -g, 0, 0],
            [g, -g, -1j * wb - gx / 2, 0, omega_rot, 0],
            [-g, g, 0, 1j * wb - gx / 2, 0, omega_rot],
            [0, 0, -omega_rot, 0, -1j * wb - gy / 2, 0],
            [0, 0, 0, -omega_rot, 0, 1j * wb - gy / 2],
        ],
        dtype=np.complex128,
    )


def noise_matrix(params: GyroParams) -> ComplexArray:
    rates = np.repeat([params.kappa, params.gamma_x, params.gamma_y], 2)
    return np.diag(-np.sqrt(rates)).astype(np.complex128)


def exact_transfer_matrix(
    omega: Real, cfg: ValidatedConfig, co: float, omega_rot_sq: float
) -> ComplexArray:
    """Map inputs to modes at each frequency; shape (6, 6) or (n, 6, 6).

    The cooperativity fixes the coupling g; `cfg.params.g` is not used.
    """
    omegas = np.atleast_1d(np.asarray(omega, dtype=np.float64))
    drift = drift_matrix(cfg.params, co, omega_rot_sq)
    shift = 1j * omegas[:, np.newaxis, np.newaxis] * np.eye(6)
    system = drift[np.newaxis, :, :] + shift

    condition = np.linalg.cond(system)
    if np.any(worst := condition > SINGULAR_CONDITION):
        at = int(np.argmax(condition))
        logger.debug(
            f"{int(np.sum(worst))} singular frequencies, worst at {omegas[at]:.6g}"
        )
        raise SingularSystem(omega=float(omegas[at]), condition=float(condition[at]))

    rhs = np.broadcast_to(-noise_matrix(cfg.params), system.shape)
    transfer = np.linalg.solve(system, rhs)
    return transfer[0] if np.ndim(omega) == 0 else transfer


def mode_response(
    omega: float,
    cfg: ValidatedConfig,
    co: float,
    omega_rot_sq: float,
    inputs: Sequence[complex],
) -> ModeVector:
    transfer = exact_transfer_matrix(omega, cfg, co, omega_rot_sq)
    return ModeVector.from_array(transfer @ np.asarray(inputs, dtype=np.complex128))


def squeezed_input_correlations(r: float, model: SqueezeModel) -> ComplexArray:
    """Correlations <u_j(w) u_k(w')> of the readout input pair.

    Entries are per 2 pi delta(w + w').
    """
    match model:
        case SqueezeModel.GAUSSIAN:
            cosh, sinh = math.cosh(r), math.sinh(r)
            return np.array(
                [[-sinh * cosh, cosh**2], [sinh**2, -sinh * cosh]], dtype=np.complex128
            )
        case SqueezeModel.ATTENUATED:
            return np.array([[0, math.exp(-2 * r)], [0, 0]], dtype=np.complex128)


def input_correlations(
    input: InputField, n_th: float, model: SqueezeModel = SqueezeModel.GAUSSIAN
) -> ComplexArray:
    correlations = np.zeros((6, 6), dtype=np.complex128)
    correlations[0:2, 0:2] = squeezed_input_correlations(input.r, model)
    for bath in (2, 4):
        correlations[bath, bath + 1] = n_th + 1
        correlations[bath + 1, bath] = n_th
    return correlations


def exact_photocurrent_psd(
    omega: Real,
    cfg: ValidatedConfig,
    co: float,
    omega_rot_sq: float,
    input: InputField,
    *,
    model: SqueezeModel = SqueezeModel.GAUSSIAN,
) -> Real:
    """Symmetric PSD of a_out + a_out+ with thermal baths at `cfg.params.n_th`."""
    omegas = np.atleast_1d(np.asarray(omega, dtype=np.float64))
    correlations = input_correlations(input, cfg.params.n_th, model)

    def unsymmetrized(frequencies: npt.NDArray[np.float64]) -> ComplexArray:
        here = _readout_row(frequencies, cfg, co, omega_rot_sq)
        there = _readout_row(-frequencies, cfg, co, omega_rot_sq)
        return np.einsum("nj,jk,nk->n", here, correlations, there)

    psd = (unsymmetrized(omegas) + unsymmetrized(-omegas)) / 2
    symmetric = psd.real
    return float(symmetric[0]) if np.ndim(omega) == 0 else symmetric


def solve_roundoff(params: GyroParams) -> float:
    """Relative round-off of the exact solve, machine epsilon times kappa / gamma."""
    spread = params.kappa / min(params.gamma_x, params.gamma_y)
    return float(np.finfo(np.float64).eps) * spread


def adiabatic_errors(
    cfg: ValidatedConfig,
    co: float,
    ratios: Sequence[float] = (1e-2, 10**-2.5, 1e-3),
    *,
    omega_rot_sq: float = 0.0,
    input: InputField | None = None,
) -> npt.NDArray[np.float64]:
    """Relative exact-vs-adiabatic photocurrent PSD error at omega_b per ratio.

    Each ratio omega_b / kappa is realized by changing kappa only.
    """
    input = input or cfg.input
    errors = []
    for ratio in ratios:
        params = cfg.params.model_copy(update={"kappa": cfg.params.omega_b / ratio})
        limits = Limits(adiabatic_threshold=max(ratio, Limits().adiabatic_threshold))
        scaled = validate(params, input, limits=limits)
        omega = scaled.params.omega_b
        exact = exact_photocurrent_psd(
            omega, scaled, co, omega_rot_sq, input, model=SqueezeModel.ATTENUATED
        )
        adiabatic = spectra.photocurrent_psd(omega, scaled, co, omega_rot_sq, input)
        error = abs(exact - adiabatic.symmetric) / adiabatic.symmetric
        floor = solve_roundoff(params)
        logger.debug(f"omega_b/kappa={ratio:.1e}: relative error {error:.3e}")
        if error < 100 * floor:
            logger.warning(
                f"omega_b/kappa={ratio:.1e}: error {error:.1e} is within 100x "
                f"of the solve round-off {floor:.1e}"
            )
        errors.append(error)
    return np.array(errors)


def adiabatic_error_slope(
    cfg: ValidatedConfig,
    co: float,
    ratios: Sequence[float] = (1e-2, 10**-2.5, 1e-3),
    *,
    omega_rot_sq: float = 0.0,
    input: InputField | None = None,
) -> float:
    """Log-log slope of `adiabatic_errors` against omega_b / kappa."""
    errors = adiabatic_errors(cfg, co, ratios, omega_rot_sq=omega_rot_sq, input=input)
    slope, _ = np.polyfit(np.log(ratios), np.log(errors), 1)
    return float(slope)


def _readout_row(
    omegas: npt.NDArray[np.float64],
    cfg: ValidatedConfig,
    co: float,
    omega_rot_sq: float,
) -> ComplexArray:
    transfer = exact_transfer_matrix(omegas, cfg, co, omega_rot_sq)
    row = math.sqrt(cfg.params.kappa) * transfer[:, _READOUT, :].sum(axis=1)
    row[:, 0] += 1
    row[:, 1] += 1
    return row
