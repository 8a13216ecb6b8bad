"""
Tables on stdout, status lines on stderr.

Machine-readable results go to stdout as CSV (header row, LF newlines) or as
an aligned text table. Human status lines are colored with colorama and go
to stderr, so piping stdout stays clean.
"""

import csv
import io
from typing import Iterable, List, Sequence

import click
from colorama import Fore, Style


class Table:
    def __init__(self, headers: Sequence[str]):
        self.headers = list(headers)
        self.rows: List[List[str]] = []

    def add(self, *values) -> None:
        if len(values) != len(self.headers):
            raise ValueError(f"row has {len(values)} values, table has {len(self.headers)} columns")
        self.rows.append([_cell(v) for v in values])

    def extend(self, rows: Iterable[Sequence]) -> None:
        for row in rows:
            self.add(*row)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.headers)
        writer.writerows(self.rows)
        return buffer.getvalue()

    def to_text(self) -> str:
        widths = [len(h) for h in self.headers]
        for row in self.rows:
            widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
        lines = [
            "  ".join(h.ljust(w) for h, w in zip(self.headers, widths)).rstrip(),
            "  ".join("-" * w for w in widths),
        ]
        for row in self.rows:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        return "\n".join(lines) + "\n"

    def render(self, output_format: str) -> str:
        return self.to_csv() if output_format == "csv" else self.to_text()


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return " ".join(_cell(v) for v in value)
    return "" if value is None else str(value)


def emit(table: Table, output_format: str) -> None:
    click.echo(table.render(output_format), nl=False)


def info(message: str) -> None:
    click.echo(f"{Fore.BLUE}{message}{Style.RESET_ALL}", err=True)


def success(message: str) -> None:
    click.echo(f"{Fore.GREEN}✅ {message}{Style.RESET_ALL}", err=True)


def warning(message: str) -> None:
    click.echo(f"{Fore.YELLOW}⚠️  {message}{Style.RESET_ALL}", err=True)


def failure(message: str) -> None:
    click.echo(f"{Fore.RED}❌ {message}{Style.RESET_ALL}", err=True)
