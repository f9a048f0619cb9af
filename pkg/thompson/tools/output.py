from __future__ import annotations

import json

import click
from rich.console import Console
from rich.table import Table

from thompson.classes.result import CommandResult
from thompson.classes.settings import OutputFormat

console = Console()


def _table(res: CommandResult) -> Table:
    table = Table(title=f"{res.status}: {res.message or ''}", show_header=True, header_style="bold cyan")
    table.add_column("key")
    table.add_column("value")
    for key, value in (res.result or {}).items():
        table.add_row(str(key), value if isinstance(value, str) else json.dumps(value, ensure_ascii=False))
    return table


def emit(res: CommandResult, output_format: OutputFormat = OutputFormat.JSON) -> None:
    """Печатает конверт в stdout: JSON или таблицу rich."""
    if output_format is OutputFormat.JSON:
        click.echo(json.dumps(res(), ensure_ascii=False, indent=2))
    else:
        console.print(_table(res))
