"""Shared command execution for the CLI."""

import logging
import time
from dataclasses import dataclass, field

from bergman_reg.config import QuadratureConfig, load_settings
from bergman_reg.core.formatter import ReportFormatter
from bergman_reg.core.moments import MomentTable, compute_moments
from bergman_reg.core.projection import kernel_eval, project
from bergman_reg.core.regularity import (
    DJ_DEGREE,
    bracket_sequence,
    c_constant,
    cutoff_convergence,
    regularity_report,
)
from bergman_reg.core.sobolev import sobolev_norm
from bergman_reg.core.weights import identity_sweep
from bergman_reg.models.run import MAX_N_MAX, Command, RunConfig
from bergman_reg.models.series import MonomialSeries
from bergman_reg.models.weight import RadialWeight
from bergman_reg.parsers import format_weight_spec, parse_series_json, parse_weight_spec

logger = logging.getLogger(__name__)


@dataclass
class RunResult:
    """Artifacts of one run: the main text and an optional JSON summary."""

    command: Command
    text: str
    summary: str | None = None
    timing: dict[str, float] = field(default_factory=dict)


def _table(w: RadialWeight, n_max: int, cfg: QuadratureConfig) -> MomentTable:
    return compute_moments(w, n_max, cfg)


def _input_series(input_text: str | None, command: Command) -> MonomialSeries:
    if input_text is None or not input_text.strip():
        raise ValueError(f"{command.value} needs a series JSON input")
    f = parse_series_json(input_text)
    if f.degree > MAX_N_MAX:
        raise ValueError(f"Series degree {f.degree} exceeds the table limit {MAX_N_MAX}")
    return f


def execute(config: RunConfig, input_text: str | None = None) -> RunResult:
    """Run one command and render its artifacts.

    Args:
        config: Validated run configuration
        input_text: Series JSON for ``project`` and ``sobolev-norm``

    Returns:
        RunResult with the rendered artifacts and timing

    Raises:
        ValueError: If the weight spec or the input series is invalid
        ArithmeticError: If a numerical step fails
    """
    start_time = time.time()
    formatter = ReportFormatter()
    weight = parse_weight_spec(config.weight_spec)
    cmd = config.command
    cfg = load_settings().quadrature.model_copy(update={"rel_tol": config.tol})
    logger.info(f"Running {cmd.value} for {format_weight_spec(weight)}")

    summary: str | None = None
    if cmd is Command.MOMENTS:
        assert config.N is not None
        table = _table(weight, max(config.N, config.n_max or 0), cfg)
        text = formatter.moments_csv(table, config.N)

    elif cmd is Command.KERNEL:
        assert config.N is not None
        table = _table(weight, max(config.N, config.n_max or 0), cfg)
        text = formatter.json(kernel_eval(table, config.z, config.w, config.N))

    elif cmd is Command.PROJECT:
        f = _input_series(input_text, cmd)
        table = _table(weight, max(f.degree, 0), cfg)
        text = formatter.series_json(project(f, table))

    elif cmd is Command.SOBOLEV_NORM:
        f = _input_series(input_text, cmd)
        table = _table(weight, max(f.degree, 0), cfg)
        text = formatter.json(sobolev_norm(f, config.k, table))

    elif cmd is Command.CONSTANTS:
        assert config.N is not None
        table = _table(weight, max(config.N + 2 * config.j, config.n_max or 0), cfg)
        constant = c_constant(config.j, config.N, table)
        text = formatter.brackets_csv(bracket_sequence(config.j, config.N, table))
        summary = formatter.json(
            {
                "j": config.j,
                "N": config.N,
                "bracket_sup": constant.bracket_sup,
                "argmax": constant.argmax,
                "opnorm_bound": constant.opnorm_bound,
            }
        )

    elif cmd is Command.VERIFY:
        assert config.N is not None
        n_max = max(config.N + 2 * max(config.j, config.k), DJ_DEGREE, config.n_max or 0)
        table = _table(weight, n_max, cfg)
        report = regularity_report(
            table,
            config.j,
            config.N,
            k=config.k,
            samples=config.samples,
            seed=config.seed,
            decay=config.decay,
        )
        text = formatter.json(report)

    elif cmd is Command.CUTOFF_CONVERGENCE:
        report_c = cutoff_convergence(weight, config.n_values, config.t_list, cfg)
        text = formatter.convergence_csv(report_c)
        summary = formatter.json(
            {
                "base": format_weight_spec(weight),
                "t_list": list(config.t_list),
                "non_monotone": report_c.non_monotone,
            }
        )

    elif cmd is Command.CHECK_IDENTITY:
        text = formatter.json(identity_sweep(weight, config.l, config.points, config.seed))

    else:  # pragma: no cover
        raise ValueError(f"Unknown command: {cmd}")

    total_time = time.time() - start_time
    logger.info(f"{cmd.value} finished in {total_time:.2f}s")
    return RunResult(command=cmd, text=text, summary=summary, timing={"total_time": total_time})
