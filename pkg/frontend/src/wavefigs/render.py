"""Render fredscat CSV datasets into figure images.

Accepts exactly the CSV contract of the fredscat CLI: one header line,
comma-separated scientific-notation numbers, LF endings.  The renderer does
no numeric work beyond plotting transforms; parsed values go straight to
matplotlib, and the raw cell strings are kept so callers can verify the
round trip byte for byte.

Three figure kinds:

* ``line``     one curve, ``x`` against the selected column;
* ``overlay``  every column group sharing the selected base name, one curve
  per group, legend derived from the column suffixes;
* ``surface``  long-format ``x, a, <column>`` data reshaped to the full grid.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)
import numpy as np  # noqa: E402

KINDS = ("line", "overlay", "surface")
COLUMN_SELECTORS = ("re_psi", "im_psi", "abs_psi")
DEFAULT_COLUMNS = {"line": "re_psi", "overlay": "re_psi", "surface": "abs_psi"}


class ParseError(ValueError):
    """The input file does not satisfy the CSV contract."""


@dataclass(frozen=True)
class PlotJob:
    input_path: Path
    figure_kind: str
    column_selector: str
    output_image_path: Path

    def __post_init__(self) -> None:
        if self.figure_kind not in KINDS:
            raise ParseError(f"figure kind must be one of {KINDS}, got {self.figure_kind!r}")
        if self.column_selector not in COLUMN_SELECTORS:
            raise ParseError(
                f"column must be one of {COLUMN_SELECTORS}, got {self.column_selector!r}"
            )


@dataclass
class CsvTable:
    names: list[str]
    raw_rows: list[list[str]]
    columns: dict[str, np.ndarray]


@dataclass
class RenderInfo:
    """What was drawn: consumed by tests, not part of the image."""

    output_path: Path
    labels: list[str]
    x_span: tuple[float, float]
    a_span: tuple[float, float] | None = None
    extra: dict = field(default_factory=dict)


def parse_table(path: Path) -> CsvTable:
    """Strict parse of a contract CSV; raises ParseError on any deviation."""
    try:
        text = path.read_bytes().decode("ascii")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    except UnicodeDecodeError:
        raise ParseError(f"{path} is not ASCII") from None
    if "\r" in text:
        raise ParseError(f"{path} must use LF line endings")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines = lines[:-1]
    if len(lines) < 2:
        raise ParseError(f"{path} needs a header and at least one data row")
    names = lines[0].split(",")
    if len(set(names)) != len(names):
        raise ParseError(f"{path} has duplicate column names")
    raw_rows = []
    values = [[] for _ in names]
    for lineno, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != len(names):
            raise ParseError(f"{path}:{lineno} has {len(cells)} fields, expected {len(names)}")
        for i, cell in enumerate(cells):
            try:
                values[i].append(float(cell))
            except ValueError:
                raise ParseError(f"{path}:{lineno} field {names[i]!r} is not a number: {cell!r}") from None
        raw_rows.append(cells)
    columns = {name: np.asarray(series) for name, series in zip(names, values)}
    return CsvTable(names=names, raw_rows=raw_rows, columns=columns)


def curve_labels(names: list[str], base: str) -> list[tuple[str, str]]:
    """(column, legend label) pairs for every group matching the base name."""
    pairs = []
    for name in names:
        if name == base:
            pairs.append((name, base))
        elif name.startswith(base + "_"):
            suffix = name[len(base) + 1 :]
            if suffix.startswith("a") and suffix[1:].replace(".", "", 1).replace("-", "", 1).isdigit():
                pairs.append((name, f"a={suffix[1:]}"))
            else:
                pairs.append((name, suffix.capitalize()))
    return pairs


def _reshape_surface(table: CsvTable, column: str):
    """Long-format (x, a, value) rows back to the full rectangular grid."""
    for required in ("x", "a", column):
        if required not in table.columns:
            raise ParseError(f"surface data needs an {required!r} column")
    xs = table.columns["x"]
    screenings = table.columns["a"]
    unique_x = np.unique(xs)
    unique_a = np.unique(screenings)
    if unique_x.size * unique_a.size != xs.size:
        raise ParseError("surface data is not a complete x-a grid")
    order = np.lexsort((xs, screenings))
    grid_values = table.columns[column][order].reshape(unique_a.size, unique_x.size)
    return unique_x, unique_a, grid_values


def render(job: PlotJob) -> RenderInfo:
    """Draw the job and write the image; returns what was drawn."""
    table = parse_table(job.input_path)
    if "x" not in table.columns:
        raise ParseError(f"{job.input_path} has no 'x' column")
    column = job.column_selector

    if job.figure_kind == "surface":
        unique_x, unique_a, grid_values = _reshape_surface(table, column)
        fig = plt.figure(figsize=(8, 6))
        ax = fig.add_subplot(projection="3d")
        mesh_a, mesh_x = np.meshgrid(unique_a, unique_x, indexing="ij")
        surf = ax.plot_surface(mesh_x, mesh_a, grid_values, cmap="viridis", linewidth=0)
        ax.set_xlabel("x")
        ax.set_ylabel("a")
        ax.set_zlabel(column)
        ax.set_xlim(float(unique_x.min()), float(unique_x.max()))
        ax.set_ylim(float(unique_a.min()), float(unique_a.max()))
        fig.colorbar(surf, shrink=0.6, label=column)
        info = RenderInfo(
            output_path=job.output_image_path,
            labels=[column],
            x_span=(float(unique_x.min()), float(unique_x.max())),
            a_span=(float(unique_a.min()), float(unique_a.max())),
        )
    else:
        pairs = curve_labels(table.names, column)
        if not pairs:
            raise ParseError(f"{job.input_path} has no column group named {column!r}")
        if job.figure_kind == "line":
            pairs = pairs[:1]
        xs = table.columns["x"]
        fig, ax = plt.subplots(figsize=(8, 5))
        for name, label in pairs:
            ax.plot(xs, table.columns[name], label=label, linewidth=1.0)
        ax.set_xlabel("x")
        ax.set_ylabel(column)
        ax.legend()
        info = RenderInfo(
            output_path=job.output_image_path,
            labels=[label for _, label in pairs],
            x_span=(float(xs.min()), float(xs.max())),
        )

    fig.tight_layout()
    fig.savefig(job.output_image_path)
    plt.close(fig)
    return info


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render", description="Render a fredscat CSV dataset to an image."
    )
    parser.add_argument("--in", dest="input_path", required=True, metavar="FILE")
    parser.add_argument("--kind", choices=KINDS, required=True)
    parser.add_argument("--column", choices=COLUMN_SELECTORS, default=None,
                        help="defaults to re_psi for line/overlay, abs_psi for surface")
    parser.add_argument("--out", dest="output_path", required=True, metavar="IMAGE")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    column = args.column or DEFAULT_COLUMNS[args.kind]
    try:
        job = PlotJob(
            input_path=Path(args.input_path),
            figure_kind=args.kind,
            column_selector=column,
            output_image_path=Path(args.output_path),
        )
        info = render(job)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return 3
    print(f"wrote {info.output_path} ({', '.join(info.labels)})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
