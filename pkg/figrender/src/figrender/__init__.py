"""Presentation layer for the guesswork figure datasets.

Reads the CSV files the guesswork CLI emits and renders them to raster
images: one curve per data column, legend from the headers.  Asserts
nothing about the math; the CSV schema is the only contract.
"""

__version__ = "0.1.0"

from .render import FIGURE_SCHEMAS, RenderJob, SchemaError, load_dataset, render

__all__ = ["FIGURE_SCHEMAS", "RenderJob", "SchemaError", "load_dataset", "render"]
