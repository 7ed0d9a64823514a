"""Figure rendering for gossip averaging experiment CSVs."""

from .plotting import KINDS, SCHEMA, PlotJob, SchemaError, build_figure, render

__version__ = "0.1.0"

__all__ = [
    "KINDS",
    "PlotJob",
    "SCHEMA",
    "SchemaError",
    "build_figure",
    "render",
]
