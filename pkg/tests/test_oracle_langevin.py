from __future__ import annotations

import math
import numpy as np
import pytest
from conftest import cfg_t
from sawgyro import response, spectra
from sawgyro.exceptions import SingularSystem
from sawgyro.oracle import langevin
from sawgyro.oracle.langevin import ModeVector, SqueezeModel
from sawgyro.params import SqueezedVacuum, Vacuum


def test_drift_matrix_is_stable(cfg: cfg_t):
    drift = langevin.drift_matrix(cfg().params, 1.0, 0.5)
    assert drift.shape == (6, 6)
    assert np.max(np.linalg.eigvals(drift).real) < 0


def test_drift_matrix_uses_cooperativity(cfg: cfg_t):
    params = cfg().params
    drift = langevin.drift_matrix(params, 4.0, 0.0)
    # C = 4 g^2 / (kappa gamma_x)
    assert abs(drift[0, 2]) == pytest.approx(math.sqrt(4.0 * params.kappa) / 2)


def test_noise_matrix(cfg: cfg_t):
    noise = langevin.noise_matrix(cfg().params)
    np.testing.assert_allclose(np.diag(noise), -np.sqrt([1e6, 1e6, 1, 1, 1, 1]))


def test_transfer_matrix_shapes(cfg: cfg_t):
    assert langevin.exact_transfer_matrix(1e3, cfg(), 1.0, 0.1).shape == (6, 6)
    grid = np.linspace(990, 1010, 7)
    assert langevin.exact_transfer_matrix(grid, cfg(), 1.0, 0.1).shape == (7, 6, 6)


def test_transfer_matrix_conjugate_pairing(cfg: cfg_t):
    inputs = [1.0, 0.5j, 0.2, -0.1j, 0.3, 0.0]
    here = langevin.mode_response(1e3 + 0.4, cfg(), 0.8, 0.3, inputs)
    paired = np.conj(np.asarray(inputs).reshape(3, 2)[:, ::-1].reshape(6))
    there = langevin.mode_response(-1e3 - 0.4, cfg(), 0.8, 0.3, paired)
    assert here.pairs_with(there, rtol=1e-9)


def test_uncoupled_mechanics_follow_chi_x(cfg: cfg_t):
    transfer = langevin.exact_transfer_matrix(1e3 + 0.3, cfg(), 1e-24, 0.5)
    expected = response.chi_x(0.3, 0.5, 1.0, 1.0)
    assert transfer[2, 2] == pytest.approx(expected, rel=1e-9)


def test_singular_system_raises(cfg: cfg_t):
    # undamped modes make the drift singular on resonance
    with pytest.raises(SingularSystem):
        langevin.exact_transfer_matrix(
            1e3, cfg(gamma_x=1e-20, gamma_y=1e-20), 1e-30, 0.0
        )


def test_mode_vector_round_trip():
    values = np.arange(6) + 1j
    vector = ModeVector.from_array(values)
    assert vector.b_x == 2 + 1j
    np.testing.assert_array_equal(vector.to_array(), values)
    with pytest.raises(ValueError, match="expected 6"):
        ModeVector.from_array([1.0, 2.0])


@pytest.mark.parametrize("model", list(SqueezeModel))
def test_squeeze_models_reduce_to_vacuum(model: SqueezeModel):
    np.testing.assert_array_equal(
        langevin.squeezed_input_correlations(0.0, model), [[0, 1], [0, 0]]
    )


def test_input_correlations_thermal_baths():
    correlations = langevin.input_correlations(Vacuum(), 0.5)
    assert correlations[2, 3] == 1.5
    assert correlations[3, 2] == 0.5
    assert correlations[5, 4] == 0.5
    assert correlations[0, 1] == 1.0


@pytest.mark.parametrize("input", [Vacuum(), SqueezedVacuum(r=1.0)])
def test_exact_psd_matches_adiabatic(cfg: cfg_t, input: Vacuum | SqueezedVacuum):
    omega = 1e3 + np.linspace(-5, 5, 21)
    exact = langevin.exact_photocurrent_psd(
        omega, cfg(), 1.0, 0.5, input, model=SqueezeModel.ATTENUATED
    )
    adiabatic = spectra.photocurrent_psd(omega, cfg(), 1.0, 0.5, input).symmetric
    np.testing.assert_allclose(exact, adiabatic, rtol=1e-2)


def test_exact_psd_shot_floor(cfg: cfg_t):
    assert langevin.exact_photocurrent_psd(
        500.0, cfg(), 1.0, 0.0, Vacuum()
    ) == pytest.approx(1.0, rel=1e-2)


def test_exact_psd_accepts_thermal_baths(cfg: cfg_t):
    cold = langevin.exact_photocurrent_psd(1e3, cfg(), 1.0, 0.0, Vacuum())
    warm = langevin.exact_photocurrent_psd(1e3, cfg(n_th=2.0), 1.0, 0.0, Vacuum())
    assert warm > cold


def test_adiabatic_error_slope(cfg: cfg_t):
    slope = langevin.adiabatic_error_slope(cfg(omega_b=10.0, kappa=1e3), 1.0)
    assert 1.8 <= slope <= 2.2


def test_adiabatic_errors_clear_roundoff_at_default_rates(cfg: cfg_t):
    default = cfg()
    ratios = (1e-2, 10**-2.5, 1e-3)
    errors = langevin.adiabatic_errors(default, default.params.cooperativity, ratios)
    for ratio, error in zip(ratios, errors, strict=True):
        params = default.params.model_copy(
            update={"kappa": default.params.omega_b / ratio}
        )
        assert error > 100 * langevin.solve_roundoff(params)
    slope = langevin.adiabatic_error_slope(default, default.params.cooperativity)
    assert 1.8 <= slope <= 2.2
