"""CSV result-table reader.

Tables are plain RFC-4180 CSVs preceded by ``# key=value`` metadata comment
lines, as written by the ``inac`` experiment harness.  Only aggregated
columns are consumed; raw per-trial files (``*.raw.csv``) are ignored by
the renderers.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field


class PlotError(Exception):
    """Unreadable input, missing columns, or an empty table."""


@dataclass
class Table:
    path: str
    columns: list[str]
    rows: list[list[str]]
    metadata: dict = field(default_factory=dict)

    @property
    def kind(self) -> str | None:
        return self.metadata.get("kind")

    def missing_columns(self, required) -> list[str]:
        have = set(self.columns)
        return [c for c in required if c not in have]

    def column(self, name: str) -> list[str]:
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]

    def floats(self, name: str) -> list[float]:
        return [float(v) for v in self.column(name)]


def read_table(path: str) -> Table:
    if not os.path.isfile(path):
        raise PlotError(f"{path}: no such file")
    try:
        with open(path, encoding="utf-8", newline="") as handle:
            text = handle.read()
    except OSError as exc:
        raise PlotError(f"{path}: {exc}") from exc

    metadata: dict = {}
    data_lines: list[str] = []
    for line in text.splitlines():
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if "=" in body:
                key, _, value = body.partition("=")
                metadata[key.strip()] = value.strip()
        elif line.strip():
            data_lines.append(line)

    if not data_lines:
        raise PlotError(f"{path}: empty table (no header row)")
    reader = csv.reader(io.StringIO("\n".join(data_lines)))
    parsed = list(reader)
    columns = parsed[0]
    rows = [row for row in parsed[1:] if row]
    for row in rows:
        if len(row) != len(columns):
            raise PlotError(
                f"{path}: row has {len(row)} fields, header has {len(columns)}"
            )
    return Table(path=path, columns=columns, rows=rows, metadata=metadata)
