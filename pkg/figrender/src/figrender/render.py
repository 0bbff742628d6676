"""CSV loading, schema validation, and matplotlib rendering."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

#: Expected header row per figure id, matching what the guesswork CLI writes.
FIGURE_SCHEMAS = {
    "fig1": ("p", "det_rate", "bern_rate"),
    "fig2": ("p", "bern_minus_det"),
    "fig3": ("q", "det14", "bern10", "diff"),
}

_TITLES = {
    "fig1": "Average guesswork growth: deterministic vs Bernoulli erasure",
    "fig2": "Jensen gap between Bernoulli and deterministic erasure",
    "fig3": "Deterministic 14% minus Bernoulli 10% across source bias",
}

_Y_LABEL = "growth rate (nats/character)"


class SchemaError(ValueError):
    """The CSV header does not match the figure's schema."""


@dataclass(frozen=True)
class RenderJob:
    figure: str
    input_csv: Path
    output_image: Path

    def __post_init__(self) -> None:
        if self.figure not in FIGURE_SCHEMAS:
            raise ValueError(f"unknown figure id {self.figure!r}")
        object.__setattr__(self, "input_csv", Path(self.input_csv))
        object.__setattr__(self, "output_image", Path(self.output_image))


def load_dataset(path: Path, figure: str) -> tuple[tuple[str, ...], list[list[float]]]:
    """Parse a figure CSV, skipping '#' comment rows, and check its header."""
    expected = FIGURE_SCHEMAS[figure]
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh) if row and not row[0].lstrip().startswith("#")]
    if not rows:
        raise SchemaError(f"{path} is empty; expected header {','.join(expected)}")
    header = tuple(name.strip() for name in rows[0])
    missing = [name for name in expected if name not in header]
    if missing:
        raise SchemaError(
            f"{path} is missing required column '{missing[0]}' for {figure} "
            f"(expected header {','.join(expected)}, found {','.join(header)})"
        )
    try:
        data = [[float(tok) for tok in row] for row in rows[1:]]
    except ValueError as exc:
        raise SchemaError(f"{path} has a non-numeric data row: {exc}") from None
    if not data:
        raise SchemaError(f"{path} has a header but no data rows")
    width = len(header)
    if any(len(row) != width for row in data):
        raise SchemaError(f"{path} has rows of inconsistent width")
    return header, data


def render(job: RenderJob) -> Path:
    """Render one dataset to a raster image; returns the output path."""
    header, data = load_dataset(job.input_csv, job.figure)
    columns = list(zip(*data))
    by_name = dict(zip(header, columns))
    schema = FIGURE_SCHEMAS[job.figure]
    xs = by_name[schema[0]]

    fig, ax = plt.subplots(figsize=(6.4, 4.0), dpi=150)
    for name in schema[1:]:
        ax.plot(xs, by_name[name], label=name)
    ax.set_xlabel(schema[0])
    ax.set_ylabel(_Y_LABEL)
    ax.set_title(_TITLES[job.figure])
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(job.output_image)
    plt.close(fig)
    return job.output_image
