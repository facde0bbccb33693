from __future__ import annotations

import asyncio
import logging
import sys
from collections.abc import Callable, Generator
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, TextIO
import click
import numpy as np
import pandas as pd
import rich.console
import rich.table
from pydantic import TypeAdapter, ValidationError
from rich.logging import RichHandler
from rich.pretty import pprint
import sawgyro
from sawgyro import figures, metrics, spectra
from sawgyro.check import CHECKS, Level
from sawgyro.config import Config
from sawgyro.exceptions import EmptyRange, GyroError
from sawgyro.params import (
    GyroParams,
    InputField,
    SqueezedVacuum,
    ValidatedConfig,
    Vacuum,
    load_params,
    parse_input_field,
    validate,
)
from sawgyro.runtime import Runtime, VerifyReport
from sawgyro.types import (
    BoundsReport,
    LimitSummary,
    MetricsReport,
    SweepSpec,
    SweepVariable,
)

logger = logging.getLogger(__name__)


class InvalidInput(click.ClickException):
    """Parameter or validation failure, reported with exit code 2."""

    exit_code = 2


def main() -> None:
    try:
        cli()
    except Exception:
        logger.exception("Fatal error")
        sys.exit(1)


def config_logging(*, verbose: bool, quiet: bool) -> None:
    class SawgyroDebugOnlyFilter(logging.Filter):
        def filter(self, record: logging.LogRecord) -> bool:
            if record.levelno < logging.INFO:
                return record.name.startswith("sawgyro.")
            return True

    match (verbose, quiet):
        case (True, True):
            raise ValueError("both verbose and quiet output requested")
        case (True, False):
            level = logging.DEBUG
        case (False, True):
            level = logging.WARNING
        case (False, False):
            level = logging.INFO
        case _:
            raise AssertionError("pyright doesn't know this can't happen")

    # stdout carries CSV and JSON
    handler = RichHandler(console=rich.console.Console(stderr=True))
    handler.addFilter(SawgyroDebugOnlyFilter())
    logging.basicConfig(
        format="%(message)s",
        level=level,
        datefmt="[%X]",
        handlers=[handler],
        force=True,
    )


class InputFieldType(click.ParamType):
    name = "input"

    def convert(
        self, value: Any, param: click.Parameter | None, ctx: click.Context | None
    ) -> InputField:
        if isinstance(value, Vacuum | SqueezedVacuum):
            return value
        try:
            return parse_input_field(str(value))
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


class SweepType(click.ParamType):
    name = "sweep"

    def convert(
        self, value: Any, param: click.Parameter | None, ctx: click.Context | None
    ) -> SweepSpec:
        if isinstance(value, SweepSpec):
            return value
        try:
            return SweepSpec.parse(str(value))
        except GyroError as exc:
            self.fail(str(exc), param, ctx)


@dataclass
class ContextObj:
    config: Config
    runtime: Runtime


@click.group()
@click.option("--verbose", "-v", is_flag=True, default=False, help="Verbose output.")
@click.option("--quiet", "-q", is_flag=True, default=False, help="Avoid output.")
@click.pass_context
def cli(ctx: click.Context, *, verbose: bool, quiet: bool) -> None:
    """Noise, SNR and sensitivity calculator for SAW-cavity gyroscopes."""
    config_logging(verbose=verbose, quiet=quiet)

    config = Config.find_or_default()
    ctx.obj = ContextObj(config=config, runtime=Runtime(config=config))


@cli.command
@click.pass_context
def config(ctx: click.Context):
    config: Config = ctx.obj.config
    pprint(config.__dict__)


@cli.command(name="version")
def version_():
    sys.stdout.write(f"{sawgyro.__version__}\n")


@cli.command
def checks():
    """List the registered verification checks."""
    _output_two_col_table(
        items=((name, check_type.description) for name, check_type in CHECKS.items())
    )


params_option = click.option(
    "--params",
    "params_file",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="JSON parameter file; normalized defaults when omitted.",
)
input_option = click.option(
    "--input",
    "input_field",
    type=InputFieldType(),
    default="vacuum",
    show_default=True,
    help="vacuum or squeezed:r=<float>.",
)
co_option = click.option(
    "--co", type=float, help="Cooperativity; derived from g when omitted."
)
rotation_option = click.option(
    "--omega-rot-sq", type=float, default=0.0, show_default=True
)


@cli.command
@params_option
@input_option
@click.option(
    "--sweep",
    type=SweepType(),
    required=True,
    help="omega:<start>:<stop>:<points>[:log]",
)
@co_option
@rotation_option
@click.option(
    "--out",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Output file; stdout when omitted.",
)
@click.pass_context
def spectrum(
    ctx: click.Context,
    params_file: Path | None,
    input_field: InputField,
    sweep: SweepSpec,
    co: float | None,
    omega_rot_sq: float,
    out: Path | None,
):
    """Noise budget, photocurrent PSD and signal over a frequency sweep."""
    if sweep.variable != SweepVariable.OMEGA:
        raise click.BadParameter("spectrum sweeps omega only", param_hint="--sweep")
    cfg = _load(ctx, params_file, input_field)
    co = _cooperativity(cfg, co)

    omega = sweep.grid()
    with _invalid_input():
        budget = spectra.noise_budget(omega, cfg, co, omega_rot_sq, cfg.input)
        psd = spectra.photocurrent_psd(omega, cfg, co, omega_rot_sq, cfg.input)
        signal = metrics.signal_psd(omega, cfg, co, omega_rot_sq)
    frame = pd.DataFrame(
        {
            "omega": omega,
            "n_zpf": budget.n_zpf,
            "n_ba": budget.n_ba,
            "n_ang": budget.n_ang,
            "n_im": np.full_like(omega, budget.n_im),
            "n_add": budget.n_add,
            "n_x_total": budget.n_x_total,
            "n_i_raw": np.real(psd.raw),
            "n_i_sym": psd.symmetric,
            "signal": signal,
        }
    )
    metadata = _metadata(cfg) | {"co": co, "omega_rot_sq": omega_rot_sq}
    _emit(out, lambda fp: figures.write_csv(frame, fp, metadata))


@cli.command
@click.argument("which", type=click.Choice([*figures.ALIASES, *figures.FIGURES]))
@click.option(
    "--out",
    "out_dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=Path("figures"),
    show_default=True,
)
@click.pass_context
def figure(ctx: click.Context, which: str, out_dir: Path):
    """Write one CSV per curve of a figure."""
    config: Config = ctx.obj.config
    curves = figures.build(which, config.options.figures)
    metadata = {"version": sawgyro.__version__}
    paths = figures.write_figure(which, curves, out_dir, metadata)
    logger.info(f"Wrote {len(paths)} curves of '{which}' to {out_dir}")


@cli.command
@params_option
@click.option("--co", type=float, required=True)
@click.option("--r", "r", type=float, default=0.0, show_default=True)
@rotation_option
@click.pass_context
def bounds(
    ctx: click.Context,
    params_file: Path | None,
    co: float,
    r: float,
    omega_rot_sq: float,
):
    """Range bounds, cooperativity floors and sensitivity limits as JSON."""
    squeezed = SqueezedVacuum(r=r)
    cfg = _load(ctx, params_file, squeezed)
    co = _cooperativity(cfg, co)

    with _invalid_input():
        vacuum_limit = metrics.sensitivity_limit(cfg, omega_rot_sq, Vacuum())
        squeezed_limit = metrics.sensitivity_limit(cfg, omega_rot_sq, squeezed)
        report = BoundsReport(
            omega_sq_ub_vacuum=_range_or_none(co, Vacuum()),
            omega_sq_ub_squeezed=_range_or_none(co, squeezed),
            co_min_vacuum=metrics.co_min(Vacuum()),
            co_min_squeezed=metrics.co_min(squeezed),
            co_star=spectra.sql_report(cfg, omega_rot_sq, squeezed).co_star,
            sensitivity_limits=LimitSummary(
                vacuum=vacuum_limit.limit,
                squeezed=squeezed_limit.limit,
                co_at_equality=squeezed_limit.co_at_equality,
            ),
        )
    _output_json(BoundsReport, report)


@cli.command(name="metrics")
@params_option
@input_option
@co_option
@rotation_option
@click.option("--omega", type=float, help="Analysis frequency; omega_b when omitted.")
@click.pass_context
def metrics_(
    ctx: click.Context,
    params_file: Path | None,
    input_field: InputField,
    co: float | None,
    omega_rot_sq: float,
    omega: float | None,
):
    """Signal, PSD, SNR and sensitivity at one frequency as JSON."""
    cfg = _load(ctx, params_file, input_field)
    with _invalid_input():
        report = metrics.metrics_report(
            cfg.params.omega_b if omega is None else omega,
            cfg,
            _cooperativity(cfg, co),
            omega_rot_sq,
            cfg.input,
        )
    _output_json(MetricsReport, report)


@cli.command
@click.option(
    "--level",
    type=click.Choice([level.value for level in Level]),
    default=Level.QUICK.value,
    show_default=True,
)
@click.pass_context
def verify(ctx: click.Context, level: str):
    """Run the numerical verification suite; exit 1 on any failure."""
    context: ContextObj = ctx.obj
    report = asyncio.run(context.runtime.run(level=Level(level)))
    _output_report(report)
    if not report.passed:
        failed, total = len(report.failures), len(report.results)
        logger.error(f"{failed} of {total} checks failed")
        sys.exit(1)


def _load(
    ctx: click.Context, params_file: Path | None, input: InputField
) -> ValidatedConfig:
    config: Config = ctx.obj.config
    try:
        params = load_params(params_file) if params_file else GyroParams.default()
        return validate(params, input, limits=config.options.limits)
    except ValidationError as exc:
        raise InvalidInput(f"invalid parameter file {params_file}:\n{exc}") from exc
    except GyroError as exc:
        raise InvalidInput(str(exc)) from exc


def _cooperativity(cfg: ValidatedConfig, co: float | None) -> float:
    if co is None:
        return cfg.params.cooperativity
    if not co > 0:
        raise InvalidInput(f"cooperativity must be strictly positive, got {co}")
    return co


@contextmanager
def _invalid_input() -> Generator[None, None, None]:
    try:
        yield
    except GyroError as exc:
        raise InvalidInput(str(exc)) from exc


def _range_or_none(co: float, input: InputField) -> float | None:
    try:
        return metrics.omega_range(co, input)
    except EmptyRange as exc:
        logger.warning(str(exc))
        return None


def _metadata(cfg: ValidatedConfig) -> dict[str, object]:
    return {
        "version": sawgyro.__version__,
        "params": cfg.params.model_dump_json(),
        "input": str(cfg.input),
    }


def _emit(out: Path | None, write: Callable[[TextIO], None]) -> None:
    if out is None:
        write(sys.stdout)
        return
    with out.open("w", newline="") as fp:
        write(fp)
    logger.info(f"Wrote {out}")


def _output_json[T](model: type[T], report: T) -> None:
    encoded = TypeAdapter(model).dump_json(report, indent=2)
    sys.stdout.write(encoded.decode() + "\n")


def _output_report(report: VerifyReport) -> None:
    table = rich.table.Table(box=None, pad_edge=False, highlight=True)
    table.add_column("check", style="bold")
    table.add_column("anchor")
    table.add_column("status")
    table.add_column("seconds", justify="right")
    table.add_column("detail", style="bold magenta")
    for result in report.results:
        status = "[green]pass[/]" if result.passed else "[red]FAIL[/]"
        table.add_row(
            result.name, result.anchor, status, f"{result.seconds:.2f}", result.detail
        )

    console = rich.console.Console()
    console.print(table)
    if report.interrupted:
        console.print("[yellow]interrupted before all checks completed[/]")


def _output_two_col_table(
    *,
    items: Iterable[tuple[str, str]],
    styles: tuple[str, str] = ("bold", "bold magenta"),
):
    table = rich.table.Table(
        box=None,
        show_header=False,
        show_footer=False,
        pad_edge=False,
        highlight=True,
    )
    table.add_column(style=styles[0])
    table.add_column(style=styles[1])
    for a, b in items:
        table.add_row(a, b)

    rich.console.Console().print(table)
