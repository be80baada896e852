"""Per-tick trace records, their CSV form, and trace comparison.

The CSV layout is fixed: one row per tick, floats printed with up to 9
significant digits, booleans as true/false. Writing is byte-deterministic
so identical runs yield identical files.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, fields
from pathlib import Path

TRACE_COLUMNS = (
    "tick",
    "distance",
    "pleasure",
    "arousal",
    "dominance",
    "sd_target",
    "c_sd",
    "torso_pitch_command",
    "deviation",
    "lean",
    "forward_velocity",
    "blocked",
    "phase",
)

FLOAT_COLUMNS = frozenset(
    {
        "distance",
        "pleasure",
        "arousal",
        "dominance",
        "sd_target",
        "c_sd",
        "torso_pitch_command",
        "deviation",
        "lean",
        "forward_velocity",
    }
)


@dataclass(frozen=True)
class TraceRow:
    tick: int
    distance: float
    pleasure: float
    arousal: float
    dominance: float
    sd_target: float
    c_sd: float
    torso_pitch_command: float
    deviation: float
    lean: float
    forward_velocity: float
    blocked: bool
    phase: str


assert tuple(f.name for f in fields(TraceRow)) == TRACE_COLUMNS

Trace = list[TraceRow]


def format_float(value: float) -> str:
    # +0.0 folds negative zero so "0" never prints as "-0"
    return f"{value + 0.0:.9g}"


def _format_cell(column: str, value) -> str:
    if column == "tick":
        return str(value)
    if column == "blocked":
        return "true" if value else "false"
    if column == "phase":
        return value
    return format_float(value)


def trace_to_csv(rows: Trace) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(TRACE_COLUMNS)
    for row in rows:
        writer.writerow(
            [_format_cell(col, getattr(row, col)) for col in TRACE_COLUMNS]
        )
    return out.getvalue()


def write_trace_csv(rows: Trace, path: str | Path) -> None:
    Path(path).write_text(trace_to_csv(rows), encoding="utf-8")


def read_trace_csv(path: str | Path) -> tuple[list[str], list[list[str]]]:
    """Read a trace CSV as raw cells: (header, rows)."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        table = list(reader)
    if not table:
        raise ValueError(f"{path}: empty trace file")
    return table[0], table[1:]


@dataclass(frozen=True)
class CellMismatch:
    row: int  # 0-based data row index
    column: str
    got: str
    want: str


class ColumnMismatch(Exception):
    """The two traces do not share the same column set."""


def compare_traces(
    got: tuple[list[str], list[list[str]]],
    want: tuple[list[str], list[list[str]]],
    tol: float,
) -> list[CellMismatch]:
    """Compare two raw traces cell by cell.

    Numeric columns (floats and the tick index) match within `tol`;
    booleans and identifiers must match exactly. Raises ColumnMismatch if
    the headers differ; extra or missing rows are reported as mismatches
    against an empty expectation.
    """
    got_header, got_rows = got
    want_header, want_rows = want
    if got_header != want_header:
        raise ColumnMismatch(
            f"column sets differ: got {got_header}, want {want_header}"
        )
    numeric = FLOAT_COLUMNS | {"tick"}
    mismatches: list[CellMismatch] = []
    for i in range(max(len(got_rows), len(want_rows))):
        if i >= len(got_rows):
            mismatches.append(CellMismatch(i, "<row>", "<missing>", ",".join(want_rows[i])))
            continue
        if i >= len(want_rows):
            mismatches.append(CellMismatch(i, "<row>", ",".join(got_rows[i]), "<missing>"))
            continue
        for col, g, w in zip(got_header, got_rows[i], want_rows[i]):
            if col in numeric:
                try:
                    ok = abs(float(g) - float(w)) <= tol
                except ValueError:
                    ok = False
            else:
                ok = g == w
            if not ok:
                mismatches.append(CellMismatch(i, col, g, w))
    return mismatches
