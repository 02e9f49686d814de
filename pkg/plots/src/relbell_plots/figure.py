"""Render CHSH sweep CSV files into figures.

This package is a pure view layer: it reads the CSV produced by the
sweep tool and draws it. It never recomputes any physics, so a figure
is only as good as the file it was given.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

from matplotlib.figure import Figure

# Column order the sweep tool writes. The header must match exactly;
# anything else means the file is not ours to interpret.
COLUMNS = ("phi", "f", "alpha", "k", "w", "v")

GROUP_COLUMNS = ("alpha", "w")

# Image formats we commit to. Extension picks the backend.
FORMATS = (".svg", ".png")

BOUND_LABEL = "F = 2"


class SchemaMismatchError(ValueError):
    """CSV header does not match the sweep schema."""

    def __init__(self, found: tuple[str, ...]):
        self.expected = COLUMNS
        self.found = found
        super().__init__(
            f"schema mismatch: expected columns {','.join(COLUMNS)}, "
            f"found {','.join(found) if found else '(no header)'}"
        )


class EmptyDataError(ValueError):
    """CSV has a valid header but no data rows."""

    def __init__(self, path: Path):
        super().__init__(f"no data rows in {path}")


@dataclass(frozen=True)
class FigureSpec:
    """What to draw and where to put it.

    group_by selects which column splits the rows into curves:
    "alpha" for fixed-width rapidity sweeps, "w" for ultrarelativistic
    width sweeps. bound_line toggles the horizontal classical-limit
    marker at F = 2.
    """

    input: Path
    output: Path
    group_by: str
    title: str | None = None
    bound_line: bool = True

    def __post_init__(self):
        if self.group_by not in GROUP_COLUMNS:
            raise ValueError(f"group_by must be one of {GROUP_COLUMNS}, got {self.group_by!r}")
        suffix = Path(self.output).suffix.lower()
        if suffix not in FORMATS:
            raise ValueError(f"output extension must be one of {FORMATS}, got {suffix!r}")


def group_label(column: str, value: float) -> str:
    """Legend text for one curve."""
    if column == "alpha":
        if math.isinf(value):
            return "α → ∞"
        return f"α = {value:g}"
    return f"w = {value:g}"


def read_rows(path: Path) -> list[dict[str, float]]:
    """Load and float-parse a sweep CSV, enforcing the schema."""
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = tuple(next(reader))
        except StopIteration:
            raise SchemaMismatchError(())
        if header != COLUMNS:
            raise SchemaMismatchError(header)
        rows = []
        for line in reader:
            if len(line) != len(COLUMNS):
                raise SchemaMismatchError(tuple(line))
            rows.append({name: float(text) for name, text in zip(COLUMNS, line)})
    if not rows:
        raise EmptyDataError(path)
    return rows


def make_figure(spec: FigureSpec) -> Figure:
    """Build the figure without touching the filesystem.

    One curve per distinct value of the group column, drawn in
    ascending group order (infinity sorts last), each labeled with its
    group value. Rows within a curve are sorted by phi.
    """
    rows = read_rows(spec.input)
    values = sorted({row[spec.group_by] for row in rows})

    fig = Figure(figsize=(6.0, 4.0))
    ax = fig.add_subplot()

    for value in values:
        curve = sorted(
            (row for row in rows if row[spec.group_by] == value),
            key=lambda row: row["phi"],
        )
        ax.plot(
            [row["phi"] for row in curve],
            [row["f"] for row in curve],
            label=group_label(spec.group_by, value),
        )

    if spec.bound_line:
        ax.axhline(2.0, linestyle="--", color="0.4", linewidth=1.0, label=BOUND_LABEL)

    ax.set_xlabel("φ")
    ax.set_ylabel("F(φ)")
    if spec.title:
        ax.set_title(spec.title)
    ax.legend()
    return fig


def render(spec: FigureSpec) -> Path:
    """Draw the figure and write it to spec.output.

    Returns the output path. SVG output suppresses the creation date
    and keeps text as text, so identical inputs produce identical
    bytes and legend labels stay grep-able.
    """
    fig = make_figure(spec)
    out = Path(spec.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    if out.suffix.lower() == ".svg":
        with matplotlib.rc_context({"svg.fonttype": "none", "svg.hashsalt": "relbell"}):
            fig.savefig(out, metadata={"Date": None})
    else:
        fig.savefig(out, dpi=150)
    return out
