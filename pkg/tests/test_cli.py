from __future__ import annotations

import json
import math
from pathlib import Path
import pytest
from click.testing import CliRunner
from pytest_mock import MockerFixture
from conftest import params_file_t
from sawgyro.check import Level
from sawgyro.cli import cli
from sawgyro.runtime import CheckResult, Runtime, VerifyReport

SPECTRUM_COLUMNS = (
    "omega,n_zpf,n_ba,n_ang,n_im,n_add,n_x_total,n_i_raw,n_i_sym,signal"
)


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def test_version(runner: CliRunner):
    result = runner.invoke(cli, ["version"])
    assert result.exit_code == 0
    assert result.stdout.strip() == "0.1.0"


def test_checks_are_listed(runner: CliRunner):
    result = runner.invoke(cli, ["checks"])
    assert result.exit_code == 0
    assert "reality_pairing" in result.stdout
    assert "wiener_khinchin" in result.stdout


def test_config(runner: CliRunner):
    result = runner.invoke(cli, ["config"])
    assert result.exit_code == 0
    assert "squeeze_r" in result.stdout


def test_spectrum_to_stdout(runner: CliRunner):
    result = runner.invoke(
        cli, ["spectrum", "--sweep", "omega:990:1010:5", "--input", "squeezed:r=1"]
    )
    assert result.exit_code == 0, result.stderr
    lines = result.stdout.splitlines()
    metadata = [line for line in lines if line.startswith("#")]
    assert "# input: squeezed:r=1.0" in metadata
    assert "# co: 0.25" in metadata
    header = lines[len(metadata)]
    assert header == SPECTRUM_COLUMNS
    assert len(lines) == len(metadata) + 1 + 5


def test_spectrum_to_file(runner: CliRunner, tmp_path: Path):
    out = tmp_path / "spectrum.csv"
    result = runner.invoke(
        cli, ["spectrum", "--sweep", "omega:1:1e4:7:log", "--out", str(out)]
    )
    assert result.exit_code == 0, result.stderr
    assert result.stdout == ""
    assert SPECTRUM_COLUMNS in out.read_text().splitlines()


def test_spectrum_sweeps_omega_only(runner: CliRunner):
    result = runner.invoke(cli, ["spectrum", "--sweep", "r:0:1:5"])
    assert result.exit_code == 2


@pytest.mark.parametrize(
    "args",
    [
        ["--sweep", "omega:1:2"],
        ["--sweep", "omega:1:2:3", "--input", "coherent"],
        ["--sweep", "omega:1:2:3", "--co", "0"],
        ["--sweep", "omega:1:2:3", "--input", "squeezed:r=-1"],
    ],
)
def test_spectrum_rejects_bad_arguments(runner: CliRunner, args: list[str]):
    result = runner.invoke(cli, ["spectrum", *args])
    assert result.exit_code == 2


def test_invalid_parameter_files(
    runner: CliRunner, params_file: params_file_t, tmp_path: Path
):
    negative = params_file(kappa=-1.0)
    result = runner.invoke(cli, ["metrics", "--params", str(negative)])
    assert result.exit_code == 2
    assert "kappa" in result.stderr

    unknown = tmp_path / "unknown.json"
    unknown.write_text('{"gamma": 1.0}')
    result = runner.invoke(cli, ["metrics", "--params", str(unknown)])
    assert result.exit_code == 2


def test_figure(runner: CliRunner, tmp_path: Path):
    result = runner.invoke(
        cli, ["figure", "range-vs-squeezing", "--out", str(tmp_path)]
    )
    assert result.exit_code == 0, result.stderr
    names = sorted(path.name for path in tmp_path.iterdir())
    assert "range-vs-squeezing__vacuum_co=1.csv" in names
    assert len(names) == 6


def test_figure_by_short_id(runner: CliRunner, tmp_path: Path):
    result = runner.invoke(cli, ["figure", "fig2", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.stderr
    vacuum = tmp_path / "fig2__vacuum_co=1.csv"
    rows = [line for line in vacuum.read_text().splitlines() if line[0] != "#"]
    assert rows[0] == "r,omega_sq_ub"
    assert {float(row.split(",")[1]) for row in rows[1:]} == {2.75}


def test_ratio_figure_has_bound_curve(runner: CliRunner, tmp_path: Path):
    result = runner.invoke(cli, ["figure", "fig4c", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.stderr
    lines = (tmp_path / "fig4c__co=1.csv").read_text().splitlines()
    rows = [line.split(",") for line in lines if line[0] != "#"]
    assert rows[0] == ["r", "ratio", "bound"]
    assert float(rows[1][2]) == pytest.approx(1.0)
    assert float(rows[-1][2]) == pytest.approx(math.sqrt(2) / 2, abs=1e-5)


def test_bounds(runner: CliRunner):
    result = runner.invoke(cli, ["bounds", "--co", "1", "--r", "1.73"])
    assert result.exit_code == 0, result.stderr
    report = json.loads(result.stdout)
    assert list(report) == [
        "omega_sq_ub_vacuum",
        "omega_sq_ub_squeezed",
        "co_min_vacuum",
        "co_min_squeezed",
        "co_star",
        "sensitivity_limits",
    ]
    assert report["omega_sq_ub_vacuum"] == pytest.approx(2.75)
    assert report["omega_sq_ub_squeezed"] == pytest.approx(6.93, abs=0.01)
    assert report["co_min_vacuum"] == pytest.approx(1 / 12)
    assert set(report["sensitivity_limits"]) == {"vacuum", "squeezed", "co_at_equality"}


def test_bounds_below_cooperativity_floor(runner: CliRunner):
    result = runner.invoke(cli, ["bounds", "--co", "0.05", "--r", "1.73"])
    assert result.exit_code == 0, result.stderr
    report = json.loads(result.stdout)
    assert report["omega_sq_ub_vacuum"] is None
    assert report["omega_sq_ub_squeezed"] > 0


def test_metrics(runner: CliRunner):
    result = runner.invoke(
        cli, ["metrics", "--input", f"squeezed:r={math.log(2)}", "--co", "0.25"]
    )
    assert result.exit_code == 0, result.stderr
    report = json.loads(result.stdout)
    assert report["sensitivity"] == pytest.approx(0.0988, abs=1e-4)
    assert report["ratio_to_vacuum"] == pytest.approx(math.sqrt(0.625), rel=1e-4)


def verify_report(*passed: bool) -> VerifyReport:
    return VerifyReport(
        level=Level.QUICK,
        results=[
            CheckResult(
                name=f"check_{i}",
                description="demo",
                anchor="metrics.co_min",
                passed=ok,
                detail="worst 0",
                seconds=0.01,
            )
            for i, ok in enumerate(passed)
        ],
    )


@pytest.mark.parametrize("passed, exit_code", [((True, True), 0), ((True, False), 1)])
def test_verify(
    runner: CliRunner,
    mocker: MockerFixture,
    passed: tuple[bool, ...],
    exit_code: int,
):
    run = mocker.patch.object(
        Runtime, "run", new=mocker.AsyncMock(return_value=verify_report(*passed))
    )
    result = runner.invoke(cli, ["verify", "--level", "full"])
    assert result.exit_code == exit_code
    assert "check_1" in result.stdout
    assert "metrics.co_min" in result.stdout
    run.assert_awaited_once_with(level=Level.FULL)
