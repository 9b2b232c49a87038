"""Schedulability, interval extraction and abstraction generation"""

from dataclasses import dataclass
from pathlib import Path

import click
import structlog

from src.abstraction.events import FORCED_DISCLAIMER, validate_event_spec
from src.abstraction.generator import abstraction_id, compose_abstract_network, event_channels, generate_abstraction
from src.abstraction.intervals import IvTable, compute_all_intervals, producing_task, tables_to_json
from src.automata.model import Network, TimedAutomaton
from src.automata.network import dump_network
from src.cli.commands.inputs import core_networks
from src.cli.models.inputs import ParsedInputs, parse_inputs
from src.cli.models.manifest import RunManifest
from src.cli.ui.tables import console, print_diagnostics, print_intervals, print_schedulability
from src.config.settings import settings
from src.errors import UsageError, errors_only
from src.rts.schedulability import check_schedulability

logger = structlog.get_logger(__name__)


@dataclass
class Abstractions:
    tables: dict[str, IvTable]
    automata: dict[str, TimedAutomaton]
    network: Network


def producing_cores(parsed: ParsedInputs) -> list[str]:
    assert parsed.events is not None
    cores = {parsed.rts.task(name).affinity for name in parsed.events.producing_tasks()}
    return [c for c in parsed.rts.cores if c in cores]


def forced(parsed: ParsedInputs) -> bool:
    """True when only force mode let the event specification through"""
    assert parsed.events is not None
    return bool(errors_only(validate_event_spec(parsed.rts, parsed.events, force=False)))


def build_abstractions(
    parsed: ParsedInputs, xta: Path | None, coarse: bool, manifest: RunManifest
) -> Abstractions:
    """Core networks, exact interval tables and one abstraction per producing core"""
    e = parsed.events
    assert e is not None
    cores = producing_cores(parsed)
    with manifest.stage("networks"):
        networks = core_networks(parsed, cores, xta)
    with manifest.stage("intervals") as stage:
        tables = compute_all_intervals(parsed.rts, e, networks, jobs=settings.jobs)
        stage.states = sum(t.states for t in tables.values())
    with manifest.stage("abstraction"):
        automata = {
            core: generate_abstraction(producing_task(parsed.rts, e, core), tables[core], e, coarse=coarse)
            for core in cores
        }
        network = compose_abstract_network(list(automata.values()), e)
    manifest.warnings.extend(str(w) for w in parsed.warnings)
    if forced(parsed):
        manifest.disclaimer = FORCED_DISCLAIMER
        logger.warning("forced_mode", disclaimer=FORCED_DISCLAIMER)
    return Abstractions(tables=tables, automata=automata, network=network)


def run_schedulability(rts: Path, core: str | None) -> None:
    parsed = parse_inputs(rts)
    hyperperiods = parsed.rts.hyperperiods
    if core is not None and core not in hyperperiods:
        raise UsageError(f"core {core} hosts no task", core=core)
    cores = [core] if core else list(hyperperiods)
    all_schedulable = True
    for c in cores:
        network = core_networks(parsed, [c], None)[c]
        report = check_schedulability(network, parsed.rts, c)
        print_schedulability(report, parsed.rts.time_unit)
        all_schedulable = all_schedulable and report.schedulable
    if not all_schedulable:
        console.print("[red]deadline miss detected[/red]")
        raise click.exceptions.Exit(1)


def run_intervals(rts: Path, events: Path, output: Path, xta: Path | None, verbose: bool) -> None:
    parsed = parse_inputs(rts, events)
    print_diagnostics(parsed.warnings, title="Warnings")
    cores = producing_cores(parsed)
    tables = compute_all_intervals(
        parsed.rts, parsed.events, core_networks(parsed, cores, xta), jobs=settings.jobs
    )
    for table in tables.values():
        print_intervals(table, verbose=verbose)
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(tables_to_json(tables), encoding="utf-8")
    console.print(f"wrote {output}")


def run_abstract(rts: Path, events: Path, output: Path, xta: Path | None, coarse: bool, force: bool) -> None:
    parsed = parse_inputs(rts, events, force=force)
    print_diagnostics(parsed.warnings, title="Warnings")
    manifest = RunManifest(command="abstract")
    for path in (rts, events):
        manifest.add_input(path)
    built = build_abstractions(parsed, xta, coarse, manifest)
    assert parsed.events is not None
    for core, automaton in built.automata.items():
        target = output / f"{abstraction_id(core)}.ta.json"
        dump_network(Network(automata=[automaton], channels=event_channels(parsed.events)), target)
        console.print(f"wrote {target}")
    (output / "intervals.json").write_text(tables_to_json(built.tables), encoding="utf-8")
    manifest.save(output / "manifest.json")
    logger.info("abstractions_written", directory=str(output), cores=list(built.automata), coarse=coarse)
