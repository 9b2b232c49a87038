"""Input validation, network generation and schema export"""

import json
from pathlib import Path

import structlog

from src.automata.model import Network
from src.automata.network import dump_network, network_json_schema
from src.cli.models.inputs import ParsedInputs, parse_file, parse_inputs
from src.cli.ui.tables import console, print_diagnostics
from src.rts.generator import build_core_network

logger = structlog.get_logger(__name__)


def network_file(core: str) -> str:
    return f"N_{core}.ta.json"


def validate_inputs(rts: Path, events: Path | None, requirement: Path | None, force: bool) -> None:
    parsed = parse_inputs(rts, events, requirement, force=force)
    print_diagnostics(parsed.warnings, title="Warnings")
    checked = [p.name for p in (rts, events, requirement) if p is not None]
    console.print(f"[green]valid[/green]: {', '.join(checked)}")


def generate_networks(rts: Path, output: Path) -> None:
    parsed = parse_inputs(rts)
    for core in parsed.rts.hyperperiods:
        target = output / network_file(core)
        dump_network(build_core_network(parsed.rts, core), target)
        logger.info("network_written", core=core, path=str(target))
        console.print(f"wrote {target}")


def core_networks(parsed: ParsedInputs, cores: list[str], xta: Path | None) -> dict[str, Network]:
    """Core networks of ``cores``, read from ``xta`` when given, generated otherwise"""
    if xta is None:
        return {core: build_core_network(parsed.rts, core) for core in cores}
    networks = {}
    for core in cores:
        networks[core] = parse_file(Network, xta / network_file(core))
    logger.info("networks_loaded", directory=str(xta), cores=cores)
    return networks


def write_schema(output: Path | None) -> None:
    text = json.dumps(network_json_schema(), indent=2) + "\n"
    if output is None:
        console.print_json(text)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(text, encoding="utf-8")
    console.print(f"wrote {output}")
