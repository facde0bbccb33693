from __future__ import annotations

import os
from pathlib import Path
from typing import Callable
import pytest
from pytest_mock import MockerFixture
from sawgyro.config import ENV_CONFIG_PATH, Config
from sawgyro.params import GyroParams, InputField, ValidatedConfig, validate
from sawgyro.runtime import Runtime

type env_t = Callable[..., None]
type file_config_t = Callable[[str], Path]
type cfg_t = Callable[..., ValidatedConfig]
type params_file_t = Callable[..., Path]


@pytest.fixture
def env(mocker: MockerFixture) -> env_t:
    def inner(**kwargs: str):
        mocker.patch.dict(os.environ, kwargs)

    return inner


@pytest.fixture(autouse=True)
def home(tmp_path: Path, env: env_t) -> Path:
    """Keep the user's own config file out of every test."""
    home = tmp_path / "home"
    home.mkdir()
    env(HOME=str(home))
    os.environ.pop(ENV_CONFIG_PATH, None)
    return home


@pytest.fixture
def default_config() -> Config:
    return Config.default()


@pytest.fixture
def default_runtime(default_config: Config) -> Runtime:
    return Runtime(config=default_config)


@pytest.fixture
def file_config(tmp_path: Path, env: env_t) -> file_config_t:
    def inner(contents: str) -> Path:
        config_path = tmp_path / "sawgyro.toml"
        env(**{ENV_CONFIG_PATH: str(config_path)})
        with config_path.open("w+") as fp:
            fp.write(contents)
        return config_path

    return inner


@pytest.fixture
def cfg() -> cfg_t:
    """Validated normalized parameters, with any field overridden."""

    def inner(input: InputField | None = None, **overrides: float) -> ValidatedConfig:
        params = GyroParams.default().model_copy(update=overrides)
        return validate(params, input)

    return inner


@pytest.fixture
def params_file(tmp_path: Path) -> params_file_t:
    def inner(**overrides: float) -> Path:
        params = GyroParams.default().model_copy(update=overrides)
        path = tmp_path / "params.json"
        path.write_text(params.model_dump_json())
        return path

    return inner
