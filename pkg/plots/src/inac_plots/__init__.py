"""Figure rendering for inac-sim experiment CSV tables."""

__version__ = "0.1.0"

from .tables import PlotError, Table, read_table
from .recipes import FIGURE_KINDS, FigureRecipe, recipe_for
from .render import render, render_all

__all__ = [
    "FIGURE_KINDS",
    "FigureRecipe",
    "PlotError",
    "Table",
    "read_table",
    "recipe_for",
    "render",
    "render_all",
    "__version__",
]
