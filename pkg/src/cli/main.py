#!/usr/bin/env python3
"""
exact-bounds command line

Commands delegate to ``src.cli.commands``; every toolkit error is mapped to
its exit code here, with diagnostics on standard error.
"""

from pathlib import Path

import click
import structlog

from src import __version__
from src.cli.ui.tables import err_console, print_diagnostics
from src.config.settings import settings
from src.errors import ExactBoundsError, InputError, ModelError
from src.telemetry.logging import configure_logging

logger = structlog.get_logger(__name__)

file_path = click.Path(exists=False, dir_okay=False, path_type=Path)
directory = click.Path(file_okay=False, path_type=Path)


class ExitCodeGroup(click.Group):
    """Turns toolkit errors into exit codes instead of tracebacks"""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except ExactBoundsError as e:
            logger.error("stage_failed", error=e.message, kind=type(e).__name__, context=e.context)
            err_console.print(f"[red]error[/red]: {e.message}")
            if isinstance(e, InputError):
                print_diagnostics(e.diagnostics)
            if isinstance(e, ModelError) and e.trace:
                err_console.print("trace:\n  " + "\n  ".join(e.trace))
            ctx.exit(e.exit_code)


@click.group(cls=ExitCodeGroup)
@click.version_option(version=__version__, prog_name="exact-bounds")
@click.option("--log-level", default=None, help="Log level (default from EXACT_BOUNDS_LOG_LEVEL)")
@click.option("--log-json/--no-log-json", default=None, help="Render log lines as JSON")
@click.option("--state-budget", type=click.IntRange(min=1), default=None, help="Maximal number of stored states")
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="Cores explored concurrently")
def app(log_level, log_json, state_budget, jobs):
    """Exact inter-core timing bounds for multi-core real-time systems

    Per-core timed-automata networks are explored once, their event
    production instants abstracted into small automata, and end-to-end
    latency bounds computed over the abstractions.
    """
    if state_budget is not None:
        settings.state_budget = state_budget
    if jobs is not None:
        settings.jobs = jobs
    configure_logging(level=log_level, json_output=log_json)


@app.command()
@click.argument("rts", type=file_path)
@click.argument("events", type=file_path, required=False)
@click.argument("requirement", type=file_path, required=False)
@click.option("--force", is_flag=True, help="Accept jobs that produce no event")
def validate(rts, events, requirement, force):
    """Check input files against their schemas and each other"""
    from src.cli.commands.inputs import validate_inputs

    validate_inputs(rts, events, requirement, force)


@app.command()
@click.argument("rts", type=file_path)
@click.option("--output", "-o", type=directory, required=True, help="Directory for N_<core>.ta.json files")
def generate(rts, output):
    """Write the timed-automata network of every core"""
    from src.cli.commands.inputs import generate_networks

    generate_networks(rts, output)


@app.command()
@click.option("--output", "-o", type=file_path, default=None, help="Schema file (default standard output)")
def schema(output):
    """Print the JSON schema of network files"""
    from src.cli.commands.inputs import write_schema

    write_schema(output)


@app.command()
@click.argument("rts", type=file_path)
@click.option("--core", default=None, help="Only this core")
def schedulability(rts, core):
    """Worst-case response times of every task"""
    from src.cli.commands.analysis import run_schedulability

    run_schedulability(rts, core)


@app.command()
@click.argument("rts", type=file_path)
@click.argument("events", type=file_path)
@click.option("--output", "-o", type=file_path, default=Path("intervals.json"), show_default=True)
@click.option("--xta", type=directory, default=None, help="Read N_<core>.ta.json from this directory")
@click.option("--verbose", is_flag=True, help="Show the hyperperiod ranges and debug logs")
def intervals(rts, events, output, xta, verbose):
    """Exact production intervals of the first event of every producing segment"""
    from src.cli.commands.analysis import run_intervals

    if verbose:
        configure_logging(level="DEBUG")
    run_intervals(rts, events, output, xta, verbose)


@app.command()
@click.argument("rts", type=file_path)
@click.argument("events", type=file_path)
@click.option("--output", "-o", type=directory, required=True, help="Directory for abstractions and manifest")
@click.option("--xta", type=directory, default=None, help="Read N_<core>.ta.json from this directory")
@click.option("--coarse", is_flag=True, help="Use one hull interval per period")
@click.option("--force", is_flag=True, help="Accept jobs that produce no event")
def abstract(rts, events, output, xta, coarse, force):
    """Generate the abstraction automaton of every producing core"""
    from src.cli.commands.analysis import run_abstract

    run_abstract(rts, events, output, xta, coarse, force)


@app.command()
@click.argument("rts", type=file_path)
@click.argument("events", type=file_path)
@click.argument("requirement", type=file_path)
@click.option("--coarse", is_flag=True, help="Bound over the coarse abstractions")
@click.option("--xta", type=directory, default=None, help="Read N_<core>.ta.json from this directory")
@click.option("--manifest", "manifest_path", type=file_path, default=None, help="Write a run manifest")
@click.option("--force", is_flag=True, help="Accept jobs that produce no event")
def bound(rts, events, requirement, coarse, xta, manifest_path, force):
    """Latency bound of a requirement, printed as one JSON record"""
    from src.cli.commands.bounds import run_bound

    run_bound(rts, events, requirement, coarse, xta, manifest_path, force)


@app.command()
@click.argument("rts", type=file_path)
@click.argument("events", type=file_path)
@click.argument("requirement", type=file_path, required=False)
@click.option("--horizon", type=click.IntRange(min=1), default=None, help="Time horizon (default 2 x lcm of hyperperiods)")
@click.option("--xta", type=directory, default=None, help="Read N_<core>.ta.json from this directory")
@click.option("--timeline", type=file_path, default=None, help="Write emissions as CSV")
@click.option("--force", is_flag=True, help="Accept jobs that produce no event")
def oracle(rts, events, requirement, horizon, xta, timeline, force):
    """Integer-time ground truth of the intervals and of the bound"""
    from src.cli.commands.bounds import run_oracle

    run_oracle(rts, events, requirement, horizon, xta, timeline, force)


if __name__ == "__main__":
    app()
