"""Rich renderings of analysis results"""

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from src.abstraction.intervals import IvTable
from src.errors import Diagnostic
from src.rts.schedulability import SchedulabilityReport

console = Console()
err_console = Console(stderr=True)


def print_diagnostics(diagnostics: list[Diagnostic], title: str = "Diagnostics") -> None:
    if not diagnostics:
        return
    table = Table(title=title)
    table.add_column("Severity", style="bold")
    table.add_column("Path", style="cyan")
    table.add_column("Message")
    for d in diagnostics:
        table.add_row(d.severity.value, d.path or "/", d.message, style="red" if d.is_error else "yellow")
    err_console.print(table)


def print_schedulability(report: SchedulabilityReport, unit: str) -> None:
    table = Table(title=f"Core {report.core} (hyperperiod {report.hyperperiod} {unit})")
    table.add_column("Task", style="bold cyan")
    table.add_column("Period", justify="right")
    table.add_column("WCRT", justify="right", style="green")
    table.add_column("Schedulable")
    for t in report.tasks:
        wcrt = "-" if t.wcrt is None else str(t.wcrt)
        table.add_row(t.task, str(t.period), wcrt, "yes" if t.schedulable else "[red]no[/red]")
    console.print(table)


def print_intervals(table: IvTable, verbose: bool = False) -> None:
    """One row per period; verbose adds the hyperperiod-wide ranges the periods were grouped from"""
    out = Table(title=f"Production intervals on {table.core}")
    out.add_column("Segment", style="bold cyan")
    out.add_column("Event")
    out.add_column("Period", justify="right")
    out.add_column("Intervals", style="green")
    for entry in table.entries:
        out.add_row(entry.segment, entry.event, str(entry.period), str(entry.interval_set))
    console.print(out)
    if verbose:
        for item in table.ranges:
            spans = ", ".join(f"[{a},{b}]" for a, b in item.intervals)
            console.print(
                Panel(spans or "none", title=f"{item.segment} / {item.event} over the hyperperiod", expand=False)
            )
        console.print(f"[dim]{table.states} symbolic states, {table.seconds:.3f}s[/dim]")
