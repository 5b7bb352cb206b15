"""Static figure renderer for fredscat CSV datasets."""

from .render import CsvTable, ParseError, PlotJob, RenderInfo, curve_labels, parse_table, render

__all__ = [
    "CsvTable",
    "ParseError",
    "PlotJob",
    "RenderInfo",
    "curve_labels",
    "parse_table",
    "render",
]
