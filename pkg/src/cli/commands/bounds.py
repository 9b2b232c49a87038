"""Bound computation and the digitized cross-check"""

import json
from pathlib import Path

import click
import structlog

from src.bounds.compute import compute_bound
from src.cli.commands.analysis import build_abstractions, producing_cores
from src.cli.commands.inputs import core_networks
from src.cli.models.inputs import parse_inputs
from src.cli.models.manifest import RunManifest
from src.cli.ui.tables import print_diagnostics
from src.config.settings import settings
from src.oracle.queries import default_horizon, dump_timeline_csv, oracle_bound, oracle_emissions, oracle_intervals

logger = structlog.get_logger(__name__)


def run_bound(
    rts: Path,
    events: Path,
    requirement: Path,
    coarse: bool,
    xta: Path | None,
    manifest_path: Path | None,
    force: bool,
) -> None:
    parsed = parse_inputs(rts, events, requirement, force=force)
    print_diagnostics(parsed.warnings, title="Warnings")
    manifest = RunManifest(command="bound")
    for path in (rts, events, requirement):
        manifest.add_input(path)
    built = build_abstractions(parsed, xta, coarse, manifest)
    assert parsed.requirement is not None
    with manifest.stage("bound") as stage:
        result = compute_bound(built.network, parsed.requirement)
        stage.states = result.states_explored
    click.echo(result.record())
    if manifest_path is not None:
        manifest.save(manifest_path)


def run_oracle(
    rts: Path,
    events: Path,
    requirement: Path | None,
    horizon: int | None,
    xta: Path | None,
    timeline: Path | None,
    force: bool,
) -> None:
    """Per-core production instants and, with a requirement, the chain bound by integer-time search"""
    parsed = parse_inputs(rts, events, requirement, force=force)
    print_diagnostics(parsed.warnings, title="Warnings")
    cores = producing_cores(parsed)
    horizon = horizon or settings.oracle_horizon or default_horizon(parsed.rts, cores)
    networks = core_networks(parsed, cores, xta)
    for core in cores:
        table = oracle_intervals(networks[core], parsed.rts, parsed.events, core)
        record = {
            "core": core,
            "intervals": [
                {"segment": e.segment, "event": e.event, "period": e.period, "intervals": e.intervals}
                for e in table.entries
            ],
            "states": table.states,
        }
        click.echo(json.dumps(record))

    if requirement is None and timeline is None:
        return
    built = build_abstractions(parsed, xta, coarse=False, manifest=RunManifest(command="oracle"))
    if parsed.requirement is not None:
        found = oracle_bound(built.network, parsed.requirement, horizon)
        record = {"requirement": str(parsed.requirement), "status": found.status.value, "horizon": horizon}
        if found.ok:
            record["bound"] = found.value
        click.echo(json.dumps(record))
    if timeline is not None:
        dump_timeline_csv(oracle_emissions(built.network, horizon), timeline)
        logger.info("timeline_written", path=str(timeline), horizon=horizon)
