from __future__ import annotations

import logging
import math
from pathlib import Path
import pytest
from pydantic import ValidationError
from conftest import cfg_t, params_file_t
from sawgyro.config import Limits
from sawgyro.exceptions import (
    NegativeOccupancy,
    NegativeRotation,
    NegativeSqueeze,
    NonPositiveRate,
    ParameterErrors,
    SqueezeOutOfRange,
)
from sawgyro.params import (
    AngularVelocity,
    GyroParams,
    SqueezedVacuum,
    Vacuum,
    cooperativity,
    g_from_cooperativity,
    load_params,
    parse_input_field,
    squeeze_db,
    squeeze_r,
    thermal_occupancy,
    validate,
)


def test_cooperativity_round_trip():
    co = cooperativity(g=250.0, kappa=1e6, gamma_x=1.0)
    assert co == pytest.approx(0.25)
    assert g_from_cooperativity(co, kappa=1e6, gamma_x=1.0) == pytest.approx(250.0)


@pytest.mark.parametrize("g, kappa, gamma_x", [(0.0, 1.0, 1.0), (1.0, -1.0, 1.0)])
def test_cooperativity_rejects_non_positive(g: float, kappa: float, gamma_x: float):
    with pytest.raises(NonPositiveRate):
        cooperativity(g=g, kappa=kappa, gamma_x=gamma_x)


def test_validate_collects_every_violation():
    params = GyroParams(
        omega_b=-1.0, kappa=0.0, gamma_x=1.0, gamma_y=1.0, g=1.0, n_th=-1
    )
    with pytest.raises(ParameterErrors) as excinfo:
        validate(params, SqueezedVacuum(r=-0.5))

    kinds = [type(error) for error in excinfo.value.errors]
    assert kinds.count(NonPositiveRate) == 2
    assert NegativeOccupancy in kinds
    assert NegativeSqueeze in kinds
    assert "'omega_b' must be strictly positive" in str(excinfo.value)


def test_validate_rejects_squeeze_above_limit():
    with pytest.raises(ParameterErrors) as excinfo:
        validate(GyroParams.default(), SqueezedVacuum(r=3.0), limits=Limits(r_max=2.0))
    assert isinstance(excinfo.value.errors[0], SqueezeOutOfRange)


def test_validate_accepts_unsqueezed_squeezed_input():
    cfg = validate(GyroParams.default(), SqueezedVacuum(r=0.0))
    assert cfg.input == SqueezedVacuum(r=0.0)
    assert cfg.adiabatic_ok


def test_validate_flags_non_adiabatic(cfg: cfg_t, caplog: pytest.LogCaptureFixture):
    with caplog.at_level(logging.WARNING):
        slow = cfg(omega_b=1e3, kappa=1e4)
    assert not slow.adiabatic_ok
    assert slow.adiabatic_threshold == Limits().adiabatic_threshold
    assert "closed-form spectra are not trusted" in caplog.text


def test_validate_keeps_input_of_validated_config(cfg: cfg_t):
    squeezed = cfg(SqueezedVacuum(r=1.0))
    assert validate(squeezed).input == SqueezedVacuum(r=1.0)


def test_validate_is_idempotent():
    params = GyroParams.default().model_copy(update={"omega_b": 1e8, "kappa": 1e9})
    limits = Limits(adiabatic_threshold=0.5)
    first = validate(params, SqueezedVacuum(r=0.4), limits=limits)
    assert first.adiabatic_ok
    assert validate(first) == first
    assert validate(validate(first)) == first


def test_params_reject_unknown_keys():
    with pytest.raises(ValidationError):
        GyroParams.model_validate({**GyroParams.default().model_dump(), "delta": 1.0})


def test_load_params(params_file: params_file_t):
    path = params_file(gamma_x=2.0)
    params = load_params(path)
    assert params.gamma_x == 2.0
    assert params.kappa == 1e6


def test_load_params_missing_key(tmp_path: Path):
    path = tmp_path / "params.json"
    path.write_text('{"omega_b": 1000.0}')
    with pytest.raises(ValidationError):
        load_params(path)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("vacuum", Vacuum()),
        ("Vacuum ", Vacuum()),
        ("squeezed:r=1.73", SqueezedVacuum(r=1.73)),
        ("squeezed:r=0", SqueezedVacuum(r=0.0)),
    ],
)
def test_parse_input_field(text: str, expected: Vacuum | SqueezedVacuum):
    assert parse_input_field(text) == expected


@pytest.mark.parametrize(
    "text", ["squeezed", "squeezed:r=", "squeezed:r=abc", "coherent"]
)
def test_parse_input_field_rejects(text: str):
    with pytest.raises(ValueError, match="expected 'vacuum'"):
        parse_input_field(text)


def test_input_field_str_round_trips():
    for field in (Vacuum(), SqueezedVacuum(r=0.5)):
        assert parse_input_field(str(field)) == field


def test_angular_velocity():
    assert AngularVelocity.from_rate(-3.0).omega_rot_sq == 9.0
    with pytest.raises(NegativeRotation):
        AngularVelocity(omega_rot_sq=-1.0)


def test_squeeze_decibels():
    assert squeeze_db(1.7269) == pytest.approx(15.0, abs=0.01)
    assert squeeze_r(15.0) == pytest.approx(1.7269, abs=1e-4)
    assert squeeze_db(0.0) == 0.0


def test_thermal_occupancy():
    assert thermal_occupancy(1e9, 0.0) == 0.0
    # hbar omega << k T gives kT / (hbar omega)
    classical = 1.380649e-23 / 1.054571817e-31
    assert thermal_occupancy(1e3, 1.0) == pytest.approx(classical, rel=1e-3)
    assert math.isclose(thermal_occupancy(1e13, 1.0), 0.0, abs_tol=1e-30)
