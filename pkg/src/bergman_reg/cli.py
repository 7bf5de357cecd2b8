"""Command-line interface for weighted Bergman computations."""

import logging
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any, TypeVar

import click
from pydantic import ValidationError

from bergman_reg import __version__
from bergman_reg.config import load_settings
from bergman_reg.core import ArtifactWriter, RunResult, execute
from bergman_reg.models.run import Command, RunConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2

F = TypeVar("F", bound=Callable[..., Any])


def setup_logging(verbose: bool = False) -> None:
    """Configure logging for the CLI.

    Logs go to stderr; stdout carries artifacts only.

    Args:
        verbose: Enable verbose (DEBUG) logging
    """
    if verbose:
        log_level = logging.DEBUG
    else:
        log_level = logging.getLevelName(load_settings().log_level.upper())
        if not isinstance(log_level, int):
            log_level = logging.INFO
    log_format = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    logging.basicConfig(level=log_level, format=log_format, stream=sys.stderr)


def _validation_message(e: ValidationError) -> str:
    err = e.errors()[0]
    loc = ".".join(str(p) for p in err["loc"])
    return f"{loc}: {err['msg']}" if loc else str(err["msg"])


class BergmanGroup(click.Group):
    """Click group that maps failures to exit statuses 1 (validation) and 2 (numerical)."""

    def main(  # type: ignore[override]
        self,
        args: Any = None,
        prog_name: str | None = None,
        complete_var: str | None = None,
        standalone_mode: bool = True,
        **extra: Any,
    ) -> Any:
        try:
            return super().main(
                args=args,
                prog_name=prog_name,
                complete_var=complete_var,
                standalone_mode=False,
                **extra,
            )
        except click.exceptions.Abort:
            click.echo("Error: Aborted", err=True)
            sys.exit(EXIT_VALIDATION)
        except click.ClickException as e:
            e.show()
            sys.exit(EXIT_VALIDATION)
        except ValidationError as e:
            message = _validation_message(e)
            logger.error(f"Validation error: {message}")
            click.echo(f"Error: {message}", err=True)
            sys.exit(EXIT_VALIDATION)
        except ValueError as e:
            logger.error(f"Validation error: {e}")
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_VALIDATION)
        except ArithmeticError as e:
            logger.error(f"Numerical failure: {e}")
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_NUMERICAL)
        except Exception as e:
            logger.exception("Unexpected error")
            click.echo(f"Error: An unexpected error occurred: {e}", err=True)
            sys.exit(EXIT_NUMERICAL)


def _float_list(
    ctx: click.Context, param: click.Parameter, value: str | None
) -> tuple[float, ...] | None:
    if value is None:
        return None
    try:
        return tuple(float(item) for item in value.split(","))
    except ValueError as e:
        raise click.BadParameter(f"expected comma-separated numbers, got {value!r}") from e


def _int_list(
    ctx: click.Context, param: click.Parameter, value: str | None
) -> tuple[int, ...] | None:
    if value is None:
        return None
    try:
        return tuple(int(item) for item in value.split(","))
    except ValueError as e:
        raise click.BadParameter(f"expected comma-separated integers, got {value!r}") from e


def weight_option(f: F) -> F:
    return click.option(
        "--weight",
        "weight_spec",
        required=True,
        help="Weight spec, e.g. power:t=0 or cutoff:t=0.1;base=power:t=0",
    )(f)


def numeric_options(f: F) -> F:
    f = click.option(
        "--n-max",
        "n_max",
        type=int,
        default=None,
        help="Moment table size (default: as needed, 1024 for constants)",
    )(f)
    f = click.option(
        "--tol", type=float, default=None, help="Quadrature relative tolerance (default: 1e-12)"
    )(f)
    return f


def output_option(f: F) -> F:
    return click.option(
        "--out",
        "output_path",
        type=click.Path(dir_okay=False, path_type=Path),
        default=None,
        help="Write the artifact here instead of stdout",
    )(f)


def input_option(f: F) -> F:
    return click.option(
        "--in",
        "input_path",
        type=click.Path(exists=True, dir_okay=False, path_type=Path),
        default=None,
        help="Series JSON input (default: stdin)",
    )(f)


def sampling_options(f: F) -> F:
    f = click.option("--seed", type=int, default=None, help="Random seed (default: 42)")(f)
    f = click.option("--samples", type=int, default=None, help="Number of random samples")(f)
    return f


def _emit(result: RunResult, output_path: Path | None) -> None:
    text = result.text if result.text.endswith("\n") else result.text + "\n"
    if output_path is None:
        click.echo(text, nl=False)
        if result.summary is not None:
            click.echo(result.summary)
        return

    writer = ArtifactWriter()
    writer.write(output_path, text)
    if result.summary is not None:
        summary_path = output_path.with_suffix(".json")
        if summary_path == output_path:
            summary_path = output_path.with_name(f"{output_path.stem}.summary.json")
        writer.write(summary_path, result.summary + "\n")


def _run(command: Command, params: dict[str, Any]) -> None:
    settings = load_settings()
    given = {key: value for key, value in params.items() if value is not None}
    given.setdefault("seed", settings.seed)
    given.setdefault("tol", settings.quadrature.rel_tol)
    if command is Command.CONSTANTS:
        given.setdefault("n_max", settings.n_max)

    input_path: Path | None = given.get("input_path")
    config = RunConfig(command=command, **given)
    logger.debug(f"Run configuration: {config!r}")

    input_text: str | None = None
    if input_path is not None:
        logger.info(f"Reading series from file: {input_path}")
        input_text = input_path.read_text(encoding="utf-8")
    elif command in (Command.PROJECT, Command.SOBOLEV_NORM):
        logger.info("Reading series from stdin")
        input_text = click.get_text_stream("stdin").read()

    result = execute(config, input_text)
    _emit(result, config.output_path)


@click.group(cls=BergmanGroup)
@click.version_option(__version__, prog_name="bergman-reg")
@click.option("--verbose", "-v", is_flag=True, help="Enable verbose logging")
def cli(verbose: bool) -> None:
    """Weighted Bergman projections, kernels and regularity constants on the disc.

    Examples:

        bergman-reg moments --weight power:t=0 --N 10

        bergman-reg project --weight power:t=0 --in zzbar.json

        bergman-reg constants --weight power:t=0 --j 1 --N 1

    Exit status: 0 on success, 1 for invalid input, 2 for numerical failure.
    """
    setup_logging(verbose)


@cli.command("moments")
@weight_option
@click.option("--N", "N", type=int, required=True, help="Last moment index")
@numeric_options
@output_option
def moments_cmd(**params: Any) -> None:
    """CSV of n, log mu_(2n+1), log alpha_n for n = 0..N."""
    _run(Command.MOMENTS, params)


@cli.command("kernel")
@weight_option
@click.option("--z", required=True, help="First point, e.g. 0.3+0.4j")
@click.option("--w", required=True, help="Second point")
@click.option("--N", "N", type=int, required=True, help="Truncation order")
@numeric_options
@output_option
def kernel_cmd(**params: Any) -> None:
    """Truncated Bergman kernel B(z, w) with a tail bound."""
    _run(Command.KERNEL, params)


@cli.command("project")
@weight_option
@input_option
@numeric_options
@output_option
def project_cmd(**params: Any) -> None:
    """Weighted Bergman projection of a series."""
    _run(Command.PROJECT, params)


@cli.command("sobolev-norm")
@weight_option
@input_option
@click.option("--k", type=int, required=True, help="Sobolev order (at most 6)")
@numeric_options
@output_option
def sobolev_cmd(**params: Any) -> None:
    """Weighted Sobolev norm with per-multi-index terms."""
    _run(Command.SOBOLEV_NORM, params)


@cli.command("constants")
@weight_option
@click.option("--j", type=int, default=None, help="Derivative order (default: 1)")
@click.option("--N", "N", type=int, required=True, help="Truncation degree")
@numeric_options
@output_option
def constants_cmd(**params: Any) -> None:
    """Bracket sequence n = 1..N (CSV) and its supremum (JSON summary line)."""
    _run(Command.CONSTANTS, params)


@cli.command("verify")
@weight_option
@click.option("--j", type=int, default=None, help="Derivative order (default: 1)")
@click.option("--k", type=int, default=None, help="Sobolev order of the sweep (default: 1)")
@click.option("--N", "N", type=int, required=True, help="Degree cap of the test functions")
@sampling_options
@click.option("--decay", type=float, default=None, help="Coefficient damping per degree")
@numeric_options
@output_option
def verify_cmd(**params: Any) -> None:
    """Regularity report: constants, D_j estimate and the theorem sweep."""
    _run(Command.VERIFY, params)


@cli.command("cutoff-convergence")
@weight_option
@click.option("--N", "N", type=int, default=None, help="Use n = 0..N")
@click.option("--n-list", "n_list", callback=_int_list, default=None, help="Comma-separated n")
@click.option(
    "--t-list",
    "t_list",
    callback=_float_list,
    default=None,
    help="Strictly decreasing cutoff widths (default: 0.5,0.2,0.1,0.05,0.01)",
)
@numeric_options
@output_option
def cutoff_cmd(**params: Any) -> None:
    """Relative gaps between cutoff and base Bergman coefficients."""
    _run(Command.CUTOFF_CONVERGENCE, params)


@cli.command("check-identity")
@weight_option
@click.option("--l", "l", type=int, default=None, help="Derivative order, 1 or 2")
@click.option("--points", type=int, default=None, help="Number of random points")
@click.option("--seed", type=int, default=None, help="Random seed (default: 42)")
@output_option
def identity_cmd(**params: Any) -> None:
    """Residuals of the radial Wirtinger identity at random points."""
    _run(Command.CHECK_IDENTITY, params)


def main() -> None:
    """Console entry point."""
    cli()


if __name__ == "__main__":
    main()
